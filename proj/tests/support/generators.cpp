#include "generators.hpp"

#include <random>

namespace wuq::testing {

const char* family_name(Family f) {
  switch (f) {
    case Family::BlockDiagonal: return "block-diagonal";
    case Family::Banded: return "banded";
    case Family::Perturbed: return "perturbed";
    case Family::Quotient: return "quotient";
  }
  return "?";
}

namespace {

struct Shape {
  std::size_t dom = 1;
  std::size_t cod = 1;
};

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[rng() % items.size()];
}

}  // namespace

Instance make_instance(Family family, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.family = family;
  inst.seed = seed;
  const std::size_t n = 16 + rng() % 9;

  std::vector<Shape> shapes;
  std::size_t cols = 0;
  while (cols < n) {
    Shape s;
    const auto roll = rng() % 8;
    if (roll == 0 && cols + 2 <= n) s = {2, 2};
    if (roll == 1 && family == Family::Quotient && cols + 2 <= n) s = {2, 1};
    shapes.push_back(s);
    cols += s.dom;
  }
  std::vector<Index> dom_sizes, cod_sizes;
  for (const auto& s : shapes) {
    dom_sizes.push_back(s.dom);
    cod_sizes.push_back(s.cod);
  }
  inst.dom_tilde = Blocking::from_sizes(dom_sizes);
  inst.cod_tilde = Blocking::from_sizes(cod_sizes);
  const std::size_t blocks = shapes.size();
  Matrix t(inst.cod_tilde.last_index(), inst.dom_tilde.last_index());

  const std::vector<Scalar> diag{1, ratio(4, 5), ratio(5, 4)};
  const std::vector<Scalar> offd{ratio(1, 8), ratio(-1, 8), ratio(1, 4)};
  const std::vector<Scalar> band{ratio(1, 8), ratio(-1, 8), ratio(1, 16)};
  for (std::size_t b = 1; b <= blocks; ++b) {
    const Index r0 = inst.cod_tilde.first_of(b), c0 = inst.dom_tilde.first_of(b);
    const Shape& s = shapes[b - 1];
    if (s.dom == 1) {
      t.at(r0, c0) = pick(rng, diag);
    } else if (s.cod == 1) {
      t.at(r0, c0) = 1;
      t.at(r0, c0 + 1) = pick(rng, offd) * 2;
    } else {
      t.at(r0, c0) = 1;
      t.at(r0 + 1, c0 + 1) = 1;
      if (rng() % 2)
        t.at(r0, c0 + 1) = pick(rng, offd);
      else
        t.at(r0 + 1, c0) = pick(rng, offd);
    }
  }

  inst.schedule = build_schedule(n);
  if (family != Family::BlockDiagonal)
    for (std::size_t b = 2; b <= blocks; ++b)
      if (rng() % 2) t.at(inst.cod_tilde.last_of(b - 1), inst.dom_tilde.first_of(b)) = pick(rng, band);
  if (family == Family::Perturbed) {
    // One entry per chosen (row block, column block) pair, a quarter of the
    // threshold after scaling by C = 2.
    for (int k = 0; k < 4; ++k) {
      const std::size_t i = 1 + rng() % std::min<std::size_t>(blocks, 8);
      const std::size_t j = 1 + rng() % std::min<std::size_t>(blocks, 8);
      if (j == i || j + 1 == i) continue;
      Scalar& e = t.at(inst.cod_tilde.first_of(j), inst.dom_tilde.last_of(i));
      if (e != 0) continue;
      e = inst.schedule.eps_tilde(std::max(i, j)) / 8;
      if (rng() % 2) e = -e;
    }
  }

  inst.record.matrix = t;
  inst.record.domain = NormSpec::schreier(1);
  inst.record.codomain = NormSpec::schreier(1);
  inst.record.y_norm = NormSpec::schreier(1);
  // C = 2 when the certified covering bound allows it, otherwise the next
  // integer above the bound.
  inst.record.covering = 1000;
  const Scalar bound = covering_upper_bound(*inst.record.build());
  inst.record.covering = bound <= 2 ? Scalar(2) : Scalar(mpz_class(bound.get_num() / bound.get_den()) + 1);
  inst.model = inst.record.build();
  for (std::size_t b = 1; b <= blocks; ++b) inst.candidates.push_back(FinVec::unit(inst.cod_tilde.first_of(b)));
  return inst;
}

namespace {

std::optional<std::pair<SceneRecord, SelectResult>> selected(const Instance& inst, std::size_t max_blocks) {
  SelectResult sel = select_subsequence(*inst.model, inst.schedule, inst.dom_tilde, inst.cod_tilde, inst.candidates,
                                        max_blocks);
  if (!sel.found) return std::nullopt;
  SceneRecord r;
  r.model = inst.record;
  Scene& s = r.scene;
  s.model = inst.model;
  s.schedule = inst.schedule;
  s.dom_tilde = inst.dom_tilde;
  s.cod_tilde = inst.cod_tilde;
  s.dom = sel.dom;
  s.cod = sel.cod;
  s.ys = sel.ys;
  return std::make_pair(std::move(r), std::move(sel));
}

}  // namespace

std::optional<SceneRecord> extraction_scene(const Instance& inst, std::size_t max_blocks) {
  auto s = selected(inst, max_blocks);
  if (!s) return std::nullopt;
  return std::move(s->first);
}

std::optional<LemmaScene> lemma_scene(const Instance& inst, std::size_t max_blocks) {
  auto sel = selected(inst, max_blocks);
  if (!sel) return std::nullopt;
  LemmaScene out{std::move(sel->first), std::move(sel->second), {}};
  Scene& s = out.record.scene;
  const std::size_t blocks = s.cod.block_count();
  const auto p = plan_indices(s.schedule, blocks, 12);
  if (p.size() < 2) return std::nullopt;

  std::mt19937_64 rng(inst.seed ^ 0x5a5a5a5aULL);
  const std::vector<Scalar> values{1, -1, ratio(1, 2), ratio(-3, 2)};
  std::vector<Scalar> a(s.ys.size());
  for (auto pi : p) a[pi - 1] = pick(rng, values);
  s.coefficients = {a};
  s.p = p;
  for (std::size_t i = 0; i < p.size(); ++i) s.r.push_back(i + 1 < p.size() ? (p[i] + p[i + 1]) / 2 : blocks);

  FinVec y;
  for (std::size_t i = 0; i < a.size(); ++i) y += a[i] * s.ys[i];
  y *= Scalar(1) / norm(y, *s.model->y_norm());
  s.x = min_norm_preimage(*s.model, y, 1);
  s.window = std::make_pair(p[0], p[1]);
  out.flat = flatten(*s.x, *s.model, s.schedule, s.dom, s.cod, p[0], p[1], s.schedule.eps(long(p[0])));
  if (!out.flat.found) return std::nullopt;
  return out;
}

std::vector<TraceMutation> trace_mutations(std::size_t m) {
  const ContradictionTrace base = synthetic_trace(m);
  std::vector<TraceMutation> out;
  auto structural = [&](const std::string& target, auto change) {
    ContradictionTrace t = base;
    change(t);
    t.recorded = compute_recorded(t);
    out.push_back({target, std::move(t)});
  };
  structural("(2.1)", [](ContradictionTrace& t) { t.eps[0] = 1; });
  structural("(2.2)", [&](ContradictionTrace& t) { t.delta = ratio(1, 2 * long(m)); });
  structural("(2.3) upper", [](ContradictionTrace& t) { t.lambda *= 4; });
  structural("(2.3) lower", [&](ContradictionTrace& t) {
    t.lambda /= 2;
    std::vector<Index> first(m);
    for (std::size_t i = 0; i < m; ++i) first[i] = Index(i + 1);
    t.families.emplace_back(std::move(first));
  });
  structural("T x_i close to lambda z_i", [](ContradictionTrace& t) { t.xs[0] *= 2; });
  structural("T omega_i", [](ContradictionTrace& t) { t.omegas[0] = FinVec::unit(1); });
  structural("block basis", [](ContradictionTrace& t) { std::swap(t.zs[0], t.zs[1]); std::swap(t.xs[0], t.xs[1]); });
  structural("||x|| <= 2C", [](ContradictionTrace& t) {
    for (auto& x : t.xs) x *= 64;
  });
  structural("distinct picks", [](ContradictionTrace& t) { t.picks[1] = t.picks[0]; });
  for (std::size_t k = 0; k < base.recorded.size(); ++k) {
    ContradictionTrace t = base;
    t.recorded[k].second += ratio(1, 7);
    out.push_back({"recorded " + t.recorded[k].first, std::move(t)});
  }
  return out;
}

}  // namespace wuq::testing
