#include "oracles.hpp"

#include <algorithm>

namespace wuq::oracle {

bool admissible(const std::vector<Index>& f, unsigned level) {
  if (f.empty()) return true;
  if (level == 1) return f.size() <= f.front();
  // Greedy: each piece takes as many elements as its minimum allows, which
  // gives the fewest pieces.
  std::size_t pieces = 0, pos = 0;
  while (pos < f.size()) {
    pos += std::min<std::size_t>(f[pos], f.size() - pos);
    ++pieces;
  }
  return pieces <= f.front();
}

Scalar schreier1_sorted(const FinVec& x) {
  std::vector<std::pair<Index, Scalar>> e;
  for (const auto& [i, v] : x.entries()) e.emplace_back(i, v < 0 ? Scalar(-v) : v);
  Scalar best = 0;
  for (std::size_t a = 0; a < e.size(); ++a) {
    std::vector<Scalar> rest;
    for (std::size_t b = a + 1; b < e.size(); ++b) rest.push_back(e[b].second);
    std::sort(rest.begin(), rest.end(), std::greater<>());
    Scalar s = e[a].second;
    for (std::size_t b = 0; b + 1 < std::size_t(e[a].first) && b < rest.size(); ++b) s += rest[b];
    best = std::max(best, s);
  }
  return best;
}

Scalar schreier(const FinVec& x, unsigned level) {
  std::vector<Index> idx;
  std::vector<Scalar> val;
  for (const auto& [i, v] : x.entries()) {
    idx.push_back(i);
    val.push_back(v < 0 ? Scalar(-v) : v);
  }
  Scalar best = 0;
  const std::size_t n = idx.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<Index> f;
    Scalar s = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) {
        f.push_back(idx[k]);
        s += val[k];
      }
    if (s > best && admissible(f, level)) best = s;
  }
  return best;
}

namespace {

/// Solves the square system m z = rhs; nullopt when singular.
std::optional<std::vector<Scalar>> solve_square(std::vector<std::vector<Scalar>> m, std::vector<Scalar> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Scalar f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) rhs[r] /= m[r][r];
  return rhs;
}

}  // namespace

std::optional<Scalar> lp_max(const std::vector<Scalar>& c, const std::vector<std::vector<Scalar>>& a,
                             const std::vector<Scalar>& b) {
  const std::size_t n = c.size();
  // All constraints as rows g.x <= h, including -x_k <= 0.
  std::vector<std::vector<Scalar>> g = a;
  std::vector<Scalar> h = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Scalar> row(n, Scalar(0));
    row[k] = -1;
    g.push_back(row);
    h.push_back(0);
  }
  const std::size_t m = g.size();
  std::optional<Scalar> best;
  std::vector<std::size_t> pick(n);
  for (std::size_t k = 0; k < n; ++k) pick[k] = k;
  while (true) {
    std::vector<std::vector<Scalar>> sys;
    std::vector<Scalar> rhs;
    for (auto k : pick) {
      sys.push_back(g[k]);
      rhs.push_back(h[k]);
    }
    if (const auto z = solve_square(sys, rhs)) {
      bool feasible = true;
      for (std::size_t r = 0; r < m && feasible; ++r) {
        Scalar lhs = 0;
        for (std::size_t k = 0; k < n; ++k) lhs += g[r][k] * (*z)[k];
        feasible = lhs <= h[r];
      }
      if (feasible) {
        Scalar v = 0;
        for (std::size_t k = 0; k < n; ++k) v += c[k] * (*z)[k];
        if (!best || v > *best) best = v;
      }
    }
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

Scalar eps_factorial(const Scalar& c, const Scalar& r, long i) {
  Scalar v = c;
  if (i >= 0)
    for (long k = 0; k < i; ++k) v *= r;
  else
    v /= r;
  for (long k = 2; k <= i + 3; ++k) v /= k;
  return v;
}

FinVec random_vector(std::mt19937_64& rng, Index max_index, const std::vector<Scalar>& grid) {
  FinVec x;
  for (Index i = 1; i <= max_index; ++i)
    if (rng() % 2) x.set(i, grid[rng() % grid.size()]);
  return x;
}

}  // namespace wuq::oracle
