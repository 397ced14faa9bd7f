#include "wuq/norms.hpp"

#include <map>
#include <optional>

#include <algorithm>
#include <numeric>
#include <optional>

#include "wuq/error.hpp"
#include "wuq/lp.hpp"
#include "wuq/quotient.hpp"

namespace wuq {

NormSpec NormSpec::schreier(unsigned level) {
  if (level == 0) throw Error(ErrorCode::InvalidArgument, "Schreier level must be >= 1");
  return NormSpec(Kind::Schreier, level);
}

NormSpec NormSpec::quotient(std::shared_ptr<const QuotientModel> model) {
  NormSpec n(Kind::Quotient, 0);
  n.model_ = std::move(model);
  return n;
}

NormSpec NormSpec::parse(const std::string& tag) {
  if (tag == "sup") return sup();
  if (tag == "sum") return sum();
  if (tag == "schreier") return schreier(1);
  if (tag.rfind("schreier:", 0) == 0) {
    const std::string level = tag.substr(9);
    if (level.empty() || level.size() > 3 || !std::all_of(level.begin(), level.end(), ::isdigit) ||
        std::stoul(level) == 0)
      throw Error(ErrorCode::ParseError, "bad Schreier level in '" + tag + "'");
    return schreier(static_cast<unsigned>(std::stoul(level)));
  }
  if (tag == "quotient") return quotient(nullptr);
  throw Error(ErrorCode::ParseError, "unknown norm tag '" + tag + "'");
}

std::string NormSpec::tag() const {
  switch (kind_) {
    case Kind::Sup: return "sup";
    case Kind::Sum: return "sum";
    case Kind::Schreier: return "schreier:" + std::to_string(level_);
    case Kind::Quotient: return "quotient";
  }
  return "?";
}

IndexSet AdmissibleTree::leaf_set() const {
  if (children.empty()) return leaves;
  std::vector<Index> all(leaves.items());
  for (const auto& c : children) {
    const auto sub = c.leaf_set();
    all.insert(all.end(), sub.begin(), sub.end());
  }
  return IndexSet(std::move(all));
}

bool AdmissibleTree::admissible() const {
  if (level == 0) return false;
  if (level == 1) return children.empty() && (leaves.empty() || leaves.size() <= leaves.min());
  if (!leaves.empty()) return false;
  Index previous_max = 0;
  for (std::size_t k = 0; k < children.size(); ++k) {
    const auto& c = children[k];
    if (c.level + 1 != level || !c.admissible()) return false;
    const auto set = c.leaf_set();
    if (set.empty()) return false;
    if (k == 0 && children.size() > set.min()) return false;
    if (set.min() <= previous_max) return false;
    previous_max = set.max();
  }
  return true;
}

namespace {

struct Support {
  std::vector<Index> idx;
  std::vector<Scalar> mag;
};

Support support_of(const FinVec& x) {
  Support s;
  for (const auto& [i, v] : x.entries()) {
    s.idx.push_back(i);
    s.mag.push_back(abs(v));
  }
  return s;
}

void attach_signs(const FinVec& x, NormCertificate& cert) {
  cert.signs.clear();
  for (Index i : cert.witness.leaf_set()) cert.signs.push_back(sign(x.get(i)));
}

/// Interval dynamic program for Schreier norms of every level. Positions are
/// 0-based into the sorted support; table entries cover a <= b.
class SchreierDP {
 public:
  explicit SchreierDP(Support s) : s_(std::move(s)), n_(s_.idx.size()) {}

  NormCertificate evaluate(unsigned level) {
    NormCertificate cert;
    cert.witness.level = level;
    if (n_ == 0) return cert;
    if (level == 1) {
      std::size_t best_c = 0;
      Scalar best = -1;
      for (std::size_t c = 0; c < n_; ++c) {
        Scalar v = top_sum(c, n_ - 1);
        if (v > best) {
          best = v;
          best_c = c;
        }
      }
      cert.value = best;
      cert.witness = level1_witness(best_c, n_ - 1);
      return cert;
    }
    tables_.clear();
    tables_.push_back(level1_table());
    for (unsigned k = 2; k < level; ++k) tables_.push_back(upper_table(tables_.back()));
    const Partition part = partition(tables_.back(), n_ - 1);
    std::size_t best_c = 0;
    Scalar best = -1;
    for (std::size_t c = 0; c < n_; ++c) {
      const Scalar& v = part.value(c, pieces(c, n_ - 1));
      if (v > best) {
        best = v;
        best_c = c;
      }
    }
    cert.value = best;
    cert.witness = upper_witness(level, best_c, n_ - 1, part);
    return cert;
  }

 private:
  struct Table {
    std::vector<Scalar> value;      // (a, b) -> norm of positions a..b
    std::vector<std::size_t> start;  // (a, b) -> first position of the best family
  };

  struct Partition {
    std::size_t n = 0, b = 0;
    std::vector<Scalar> best;       // (c, q) -> best sum of <= q consecutive pieces covering from c
    std::vector<std::size_t> cut;   // (c, q) -> end of the first piece, n when empty
    const Scalar& value(std::size_t c, std::size_t q) const { return best[c * (n + 2) + q]; }
    std::size_t end(std::size_t c, std::size_t q) const { return cut[c * (n + 2) + q]; }
  };

  std::size_t at(std::size_t a, std::size_t b) const { return a * n_ + b; }

  std::size_t pieces(std::size_t c, std::size_t b) const {
    return std::min<std::size_t>(s_.idx[c], b - c + 1);
  }

  /// Sum of the min(idx[c], b-c+1) largest magnitudes among positions c..b.
  Scalar top_sum(std::size_t c, std::size_t b) const {
    std::vector<Scalar> vals(s_.mag.begin() + c, s_.mag.begin() + b + 1);
    const std::size_t k = pieces(c, b);
    std::partial_sort(vals.begin(), vals.begin() + k, vals.end(), std::greater<>());
    return std::accumulate(vals.begin(), vals.begin() + k, Scalar(0));
  }

  Table level1_table() const {
    Table t{std::vector<Scalar>(n_ * n_), std::vector<std::size_t>(n_ * n_)};
    for (std::size_t b = 0; b < n_; ++b) {
      std::vector<Scalar> sorted;  // magnitudes of positions c..b, descending
      std::vector<Scalar> g(b + 1);
      for (std::size_t c = b + 1; c-- > 0;) {
        auto pos = std::upper_bound(sorted.begin(), sorted.end(), s_.mag[c], std::greater<>());
        sorted.insert(pos, s_.mag[c]);
        const std::size_t k = pieces(c, b);
        Scalar sum = 0;
        for (std::size_t i = 0; i < k; ++i) sum += sorted[i];
        g[c] = sum;
      }
      Scalar best = -1;
      std::size_t best_c = b;
      for (std::size_t a = b + 1; a-- > 0;) {
        if (g[a] >= best) {
          best = g[a];
          best_c = a;
        }
        t.value[at(a, b)] = best;
        t.start[at(a, b)] = best_c;
      }
    }
    return t;
  }

  Partition partition(const Table& below, std::size_t b) const {
    Partition p;
    p.n = n_;
    p.b = b;
    const std::size_t width = n_ + 2;
    p.best.assign((n_ + 1) * width, Scalar(0));
    p.cut.assign((n_ + 1) * width, n_);
    for (std::size_t c = b + 1; c-- > 0;) {
      const std::size_t len = b - c + 1;
      for (std::size_t q = 1; q <= n_ + 1; ++q) {
        if (q > len) {
          p.best[c * width + q] = p.best[c * width + len];
          p.cut[c * width + q] = p.cut[c * width + len];
          continue;
        }
        Scalar best = -1;
        std::size_t best_d = c;
        for (std::size_t d = c; d <= b; ++d) {
          Scalar v = below.value[at(c, d)] + p.best[(d + 1) * width + q - 1];
          if (v > best) {
            best = v;
            best_d = d;
          }
        }
        p.best[c * width + q] = best;
        p.cut[c * width + q] = best_d;
      }
    }
    return p;
  }

  Table upper_table(const Table& below) const {
    Table t{std::vector<Scalar>(n_ * n_), std::vector<std::size_t>(n_ * n_)};
    for (std::size_t b = 0; b < n_; ++b) {
      const Partition part = partition(below, b);
      Scalar best = -1;
      std::size_t best_c = b;
      for (std::size_t a = b + 1; a-- > 0;) {
        const Scalar& v = part.value(a, pieces(a, b));
        if (v >= best) {
          best = v;
          best_c = a;
        }
        t.value[at(a, b)] = best;
        t.start[at(a, b)] = best_c;
      }
    }
    return t;
  }

  AdmissibleTree level1_witness(std::size_t c, std::size_t b) const {
    std::vector<std::size_t> pos(b - c + 1);
    std::iota(pos.begin(), pos.end(), c);
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t l, std::size_t r) { return s_.mag[l] > s_.mag[r]; });
    pos.resize(pieces(c, b));
    std::vector<Index> leaves;
    for (auto p : pos) leaves.push_back(s_.idx[p]);
    return AdmissibleTree{1, IndexSet(std::move(leaves)), {}};
  }

  /// Witness for the level-`level` norm of positions c..b where the family
  /// starts exactly at c.
  AdmissibleTree upper_witness(unsigned level, std::size_t c, std::size_t b, const Partition& part) const {
    AdmissibleTree tree{level, {}, {}};
    std::size_t q = pieces(c, b);
    const Table& below = tables_[level - 2];
    while (q > 0 && c <= b) {
      const std::size_t d = part.end(c, q);
      if (d >= n_) break;
      tree.children.push_back(interval_witness(level - 1, c, d, below));
      c = d + 1;
      --q;
    }
    return tree;
  }

  AdmissibleTree interval_witness(unsigned level, std::size_t a, std::size_t b, const Table& table) const {
    const std::size_t c = table.start[at(a, b)];
    if (level == 1) return level1_witness(c, b);
    return upper_witness(level, c, b, partition(tables_[level - 2], b));
  }

  Support s_;
  std::size_t n_;
  std::vector<Table> tables_;
};

/// Exhaustive oracle over arbitrary subsets of the support, memoized by
/// bitmask. Independent of the interval reduction used by SchreierDP.
class BruteSchreier {
 public:
  explicit BruteSchreier(Support s) : s_(std::move(s)), n_(s_.idx.size()) {}

  Scalar norm(unsigned level) { return eval(level, (1u << n_) - 1); }

 private:
  Scalar eval(unsigned level, unsigned mask) {
    auto key = std::make_pair(level, mask);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Scalar best = 0;
    if (mask != 0) {
      if (level == 1) {
        for (unsigned sub = mask; sub; sub = (sub - 1) & mask) {
          const unsigned count = static_cast<unsigned>(__builtin_popcount(sub));
          if (count > s_.idx[static_cast<std::size_t>(__builtin_ctz(sub))]) continue;
          Scalar sum = 0;
          for (std::size_t i = 0; i < n_; ++i)
            if (sub >> i & 1u) sum += s_.mag[i];
          best = std::max(best, sum);
        }
      } else {
        for (unsigned first = mask; first; first = (first - 1) & mask) {
          const std::size_t min_pos = static_cast<std::size_t>(__builtin_ctz(first));
          const std::size_t max_pos = 31 - static_cast<std::size_t>(__builtin_clz(first));
          const unsigned rest = mask & ~((2u << max_pos) - 1);
          Scalar v = eval(level - 1, first) + families(level - 1, rest, s_.idx[min_pos] - 1);
          best = std::max(best, v);
        }
      }
    }
    memo_.emplace(key, best);
    return best;
  }

  /// Best sum over at most `count` successive nonempty subsets of `mask`.
  Scalar families(unsigned child_level, unsigned mask, std::size_t count) {
    if (count == 0 || mask == 0) return 0;
    auto key = std::make_tuple(child_level, mask, count);
    if (auto it = family_memo_.find(key); it != family_memo_.end()) return it->second;
    Scalar best = 0;
    for (unsigned first = mask; first; first = (first - 1) & mask) {
      const std::size_t max_pos = 31 - static_cast<std::size_t>(__builtin_clz(first));
      const unsigned rest = mask & ~((2u << max_pos) - 1);
      Scalar v = eval(child_level, first) + families(child_level, rest, count - 1);
      best = std::max(best, v);
    }
    family_memo_.emplace(key, best);
    return best;
  }

  Support s_;
  std::size_t n_;
  std::map<std::pair<unsigned, unsigned>, Scalar> memo_;
  std::map<std::tuple<unsigned, unsigned, std::size_t>, Scalar> family_memo_;
};

const Scalar& max_of(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

}  // namespace

NormCertificate norm_eval(const FinVec& x, const NormSpec& n) {
  NormCertificate cert;
  switch (n.kind()) {
    case NormSpec::Kind::Sup: {
      Index best_i = 0;
      for (const auto& [i, v] : x.entries())
        if (best_i == 0 || abs(v) > cert.value) {
          cert.value = abs(v);
          best_i = i;
        }
      if (best_i) cert.witness.leaves = IndexSet{best_i};
      break;
    }
    case NormSpec::Kind::Sum: {
      for (const auto& [i, v] : x.entries()) cert.value += abs(v);
      cert.witness.leaves = IndexSet(x.support());
      break;
    }
    case NormSpec::Kind::Schreier: {
      cert = SchreierDP(support_of(x)).evaluate(n.level());
      break;
    }
    case NormSpec::Kind::Quotient: {
      if (!n.model()) throw Error(ErrorCode::QuotientUnavailable, "quotient norm has no attached model");
      const FinVec pre = min_norm_preimage(*n.model(), x, 1);
      auto inner = std::make_shared<NormCertificate>(norm_eval(pre, n.model()->dom_norm()));
      cert.value = inner->value;
      cert.preimage = pre;
      cert.preimage_certificate = std::move(inner);
      return cert;
    }
  }
  attach_signs(x, cert);
  return cert;
}

Scalar norm(const FinVec& x, const NormSpec& n) {
  if (n.kind() == NormSpec::Kind::Quotient) return norm_eval(x, n).value;
  if (n.kind() == NormSpec::Kind::Sup) {
    Scalar m = 0;
    for (const auto& kv : x.entries()) m = max_of(m, abs(kv.second));
    return m;
  }
  if (n.kind() == NormSpec::Kind::Sum) {
    Scalar s = 0;
    for (const auto& kv : x.entries()) s += abs(kv.second);
    return s;
  }
  return norm_eval(x, n).value;
}

bool replay_certificate(const FinVec& x, const NormSpec& n, const NormCertificate& cert) {
  if (n.kind() == NormSpec::Kind::Quotient) {
    if (!n.model() || !cert.preimage_certificate) return false;
    const auto& m = *n.model();
    if (m.matrix().apply(cert.preimage) != x) return false;
    return cert.preimage_certificate->value == cert.value &&
           replay_certificate(cert.preimage, m.dom_norm(), *cert.preimage_certificate);
  }
  const AdmissibleTree& w = cert.witness;
  switch (n.kind()) {
    case NormSpec::Kind::Sup:
      if (w.level != 1 || !w.children.empty() || w.leaves.size() > 1) return false;
      break;
    case NormSpec::Kind::Sum:
      if (w.level != 1 || !w.children.empty()) return false;
      break;
    case NormSpec::Kind::Schreier:
      if (w.level != n.level() || !w.admissible()) return false;
      break;
    default: return false;
  }
  const IndexSet leaves = w.leaf_set();
  if (cert.signs.size() != leaves.size()) return false;
  Scalar total = 0;
  std::size_t k = 0;
  for (Index i : leaves) {
    const Scalar v = x.get(i);
    const int s = cert.signs[k++];
    if ((s != 1 && s != -1) || v == 0 || sign(v) != s) return false;
    total += s * v;
  }
  if (total != cert.value) return false;
  if (n.kind() == NormSpec::Kind::Sup) return x.is_zero() ? total == 0 : norm(x, n) == total;
  return true;
}

Scalar norm_brute_oracle(const FinVec& x, const NormSpec& n, const NormConfig& config) {
  if (x.support_size() > config.oracle_support_cap || x.support_size() > 30)
    throw Error(ErrorCode::CapExceeded, "support of size " + std::to_string(x.support_size()) +
                                            " exceeds the oracle cap " +
                                            std::to_string(config.oracle_support_cap));
  switch (n.kind()) {
    case NormSpec::Kind::Sup: {
      Scalar m = 0;
      for (const auto& kv : x.entries()) m = max_of(m, abs(kv.second));
      return m;
    }
    case NormSpec::Kind::Sum: {
      Scalar s = 0;
      for (const auto& kv : x.entries()) s += abs(kv.second);
      return s;
    }
    case NormSpec::Kind::Schreier: return BruteSchreier(support_of(x)).norm(n.level());
    case NormSpec::Kind::Quotient: break;
  }
  throw Error(ErrorCode::NonPolyhedral, "the brute oracle covers polyhedral norms only");
}

DualResult dual_norm(const FinVec& f, const NormSpec& n) {
  if (!n.polyhedral()) throw Error(ErrorCode::NonPolyhedral, "dual norm of a quotient norm");
  DualResult result;
  if (f.is_zero()) return result;
  const Support s = support_of(f);
  const std::size_t d = s.idx.size();
  std::map<Index, std::size_t> position;
  for (std::size_t k = 0; k < d; ++k) position[s.idx[k]] = k;

  // Over the nonnegative orthant the unit ball of a 1-unconditional norm is
  // { y >= 0 : sum_{k in L} y_k <= 1 for each admissible leaf set L }.
  lp::Program program;
  program.num_vars = d;
  program.objective = s.mag;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Scalar> row(d);
    row[k] = 1;
    program.add(std::move(row), lp::Relation::LessEq, 1);
  }
  for (;;) {
    const lp::Result r = lp::solve(program);
    if (r.status != lp::Status::Optimal) throw Error(ErrorCode::InvalidArgument, "dual norm program not optimal");
    FinVec x;
    for (std::size_t k = 0; k < d; ++k) x.set(s.idx[k], sign(f.get(s.idx[k])) * r.x[k]);
    const NormCertificate cert = norm_eval(x, n);
    if (cert.value <= 1) {
      result.value = r.value;
      result.maximizer = std::move(x);
      return result;
    }
    std::vector<Scalar> row(d);
    for (Index i : cert.witness.leaf_set()) row[position.at(i)] = 1;
    program.add(std::move(row), lp::Relation::LessEq, 1);
    ++result.cuts;
  }
}

std::vector<IndexSet> facet_supports(const IndexSet& rows, const NormSpec& cod) {
  std::vector<IndexSet> out;
  if (rows.empty()) return out;
  switch (cod.kind()) {
    case NormSpec::Kind::Sup:
      for (Index r : rows) out.push_back(IndexSet{r});
      return out;
    case NormSpec::Kind::Sum: out.push_back(rows); return out;
    case NormSpec::Kind::Schreier: break;
    case NormSpec::Kind::Quotient: throw Error(ErrorCode::NonPolyhedral, "facets of a quotient norm");
  }
  const std::size_t k = rows.size();
  if (k > 30) throw Error(ErrorCode::CapExceeded, "too many rows for facet enumeration");
  const auto& items = rows.items();
  std::vector<unsigned> admissible;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    FinVec indicator;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) indicator.set(items[i], 1);
    if (norm(indicator, cod) == static_cast<long>(__builtin_popcount(mask))) admissible.push_back(mask);
  }
  std::stable_sort(admissible.begin(), admissible.end(),
                   [](unsigned a, unsigned b) { return __builtin_popcount(a) > __builtin_popcount(b); });
  std::vector<unsigned> maximal;
  for (unsigned m : admissible) {
    bool covered = false;
    for (unsigned big : maximal)
      if ((m & big) == m) covered = true;
    if (!covered) maximal.push_back(m);
  }
  std::sort(maximal.begin(), maximal.end());
  for (unsigned m : maximal) {
    std::vector<Index> set;
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1u) set.push_back(items[i]);
    out.emplace_back(std::move(set));
  }
  return out;
}

namespace {

IndexSet nonzero_rows(const Matrix& a) {
  std::vector<Index> rows;
  for (std::size_t r = 1; r <= a.rows(); ++r)
    for (std::size_t c = 1; c <= a.cols(); ++c)
      if (a.at(r, c) != 0) {
        rows.push_back(r);
        break;
      }
  return IndexSet(std::move(rows));
}

Scalar sup_codomain_norm(const Matrix& a, const NormSpec& dom, const IndexSet& rows) {
  Scalar best = 0;
  for (Index r : rows) best = max_of(best, dual_norm(a.row(r), dom).value);
  return best;
}

/// Upper bound by splitting A into diagonals d = col - row. Each diagonal
/// is a weighted shift, and the norms here are lattice norms. Shifting
/// toward larger indices keeps admissible families admissible, so d >= 0
/// costs max |a|. For the Schreier space a shift by -d turns an admissible
/// set into an admissible one plus at most d singletons, so it costs
/// (1 + d) max |a|. Higher Schreier levels get no bound below the diagonal.
std::optional<Scalar> diagonal_bound(const Matrix& a, const NormSpec& dom, const NormSpec& cod) {
  if (!(dom == cod)) return std::nullopt;
  const bool sum_like = dom.kind() == NormSpec::Kind::Sum || dom.kind() == NormSpec::Kind::Sup;
  std::map<long, Scalar> band;
  for (std::size_t r = 1; r <= a.rows(); ++r)
    for (std::size_t c = 1; c <= a.cols(); ++c)
      if (a.at(r, c) != 0) {
        Scalar& m = band[long(c) - long(r)];
        m = max_of(m, abs(a.at(r, c)));
      }
  Scalar total = 0;
  for (const auto& [d, m] : band) {
    if (d >= 0 || sum_like)
      total += m;
    else if (dom.level() == 1)
      total += Scalar(1 - d) * m;
    else
      return std::nullopt;
  }
  return total;
}

}  // namespace

Scalar operator_norm(const Matrix& a, const NormSpec& dom, const NormSpec& cod, const NormConfig& config) {
  if (!dom.polyhedral() || !cod.polyhedral()) throw Error(ErrorCode::NonPolyhedral, "operator norm needs polyhedral norms");
  const IndexSet rows = nonzero_rows(a);
  if (rows.empty()) return 0;
  if (cod.kind() == NormSpec::Kind::Sup) return sup_codomain_norm(a, dom, rows);
  if (rows.size() > config.operator_rows_cap)
    throw Error(ErrorCode::CapExceeded, std::to_string(rows.size()) + " nonzero rows exceed the operator cap " +
                                            std::to_string(config.operator_rows_cap));
  Scalar best = 0;
  for (const IndexSet& facet : facet_supports(rows, cod)) {
    const auto& items = facet.items();
    const std::size_t k = items.size();
    // psi and -psi give the same dual value; fix the first sign.
    for (unsigned signs = 0; signs < (1u << (k - 1)); ++signs) {
      FinVec psi;
      psi.set(items[0], 1);
      for (std::size_t i = 1; i < k; ++i) psi.set(items[i], (signs >> (i - 1) & 1u) ? -1 : 1);
      best = max_of(best, dual_norm(a.apply_transpose(psi), dom).value);
    }
  }
  return best;
}

OperatorNormBounds operator_norm_bounds(const Matrix& a, const NormSpec& dom, const NormSpec& cod,
                                        const NormConfig& config) {
  if (!dom.polyhedral() || !cod.polyhedral()) throw Error(ErrorCode::NonPolyhedral, "operator norm needs polyhedral norms");
  const IndexSet rows = nonzero_rows(a);
  if (cod.kind() == NormSpec::Kind::Sup || rows.size() <= config.operator_rows_cap) {
    Scalar v = operator_norm(a, dom, cod, config);
    return {v, v, true};
  }
  OperatorNormBounds b;
  for (std::size_t c = 1; c <= a.cols(); ++c) {
    const FinVec col = a.column(c);
    if (!col.is_zero()) b.lower = max_of(b.lower, norm(col, cod) / norm(FinVec::unit(c), dom));
  }
  for (Index r : rows) b.upper += dual_norm(a.row(r), dom).value;
  if (const auto d = diagonal_bound(a, dom, cod); d && *d < b.upper) b.upper = *d;
  b.exact = b.lower == b.upper;
  return b;
}

UncondResult uncond_constant(const std::vector<FinVec>& xs, const std::vector<Scalar>& coefficients,
                             const NormSpec& n, UncondMode mode, const std::vector<Scalar>& grid,
                             const NormConfig& config) {
  const std::size_t len = xs.size();
  if (len > config.sign_cap || len > 30)
    throw Error(ErrorCode::SignCapExceeded, std::to_string(len) + " vectors exceed the sign cap");
  auto fixed = [&](const std::vector<Scalar>& a) -> UncondResult {
    FinVec base;
    for (std::size_t i = 0; i < len; ++i) base += a[i] * xs[i];
    const Scalar denom = norm(base, n);
    if (denom == 0) throw Error(ErrorCode::ZeroDenominator, "||sum a_i x_i|| = 0");
    UncondResult r{Scalar(1), false, std::vector<int>(len, 1), a};
    if (len == 0) return r;
    for (unsigned s = 0; s < (1u << (len - 1)); ++s) {
      FinVec v = xs[0];
      v *= a[0];
      std::vector<int> signs(len, 1);
      for (std::size_t i = 1; i < len; ++i) {
        signs[i] = (s >> (i - 1) & 1u) ? -1 : 1;
        v += Scalar(signs[i] * a[i]) * xs[i];
      }
      const Scalar ratio = norm(v, n) / denom;
      if (ratio > r.value) {
        r.value = ratio;
        r.best_signs = signs;
      }
    }
    return r;
  };
  if (coefficients.size() != len && mode == UncondMode::Fixed)
    throw Error(ErrorCode::LengthMismatch, "one coefficient per vector");
  if (mode == UncondMode::Fixed) return fixed(coefficients);

  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "searched mode needs a coefficient grid");
  UncondResult best{Scalar(0), true, {}, {}};
  std::vector<std::size_t> digit(len, 0);
  for (;;) {
    std::vector<Scalar> a(len);
    for (std::size_t i = 0; i < len; ++i) a[i] = grid[digit[i]];
    FinVec base;
    for (std::size_t i = 0; i < len; ++i) base += a[i] * xs[i];
    if (!base.is_zero() && norm(base, n) != 0) {
      UncondResult r = fixed(a);
      if (r.value > best.value) best = std::move(r);
    }
    std::size_t i = 0;
    while (i < len && ++digit[i] == grid.size()) digit[i++] = 0;
    if (i == len) break;
  }
  if (best.value == 0) throw Error(ErrorCode::ZeroDenominator, "every grid combination vanishes");
  best.lower_bound = true;
  return best;
}

}  // namespace wuq
