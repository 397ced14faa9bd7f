#pragma once

// Reference computations written independently of the library, used to
// derive expected values.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wuq/lp.hpp"
#include "wuq/seqvec.hpp"

namespace wuq::oracle {

/// Schreier norm of level 1 or 2 by enumerating subsets of the support.
Scalar schreier(const FinVec& x, unsigned level);

/// Level-1 Schreier norm: for each candidate minimum k, |x_k| plus the
/// k - 1 largest entries beyond k. Quadratic, for long supports.
Scalar schreier1_sorted(const FinVec& x);

/// Whether a sorted set is a union of p successive sets E_1 < ... < E_p,
/// each with |E| <= min E, and p <= min E_1 (level 2); |F| <= min F for
/// level 1.
bool admissible(const std::vector<Index>& f, unsigned level);

/// max c.x over {A x <= b, x >= 0} by enumerating vertices. Box-bounded
/// programs only; nullopt when infeasible.
std::optional<Scalar> lp_max(const std::vector<Scalar>& c, const std::vector<std::vector<Scalar>>& a,
                             const std::vector<Scalar>& b);

/// eps_i = c r^i / (i+3)! and the tilde recursion, straight from the
/// definitions.
Scalar eps_factorial(const Scalar& c, const Scalar& r, long i);

/// Random vector on [1, max_index] with entries drawn from `grid`.
FinVec random_vector(std::mt19937_64& rng, Index max_index, const std::vector<Scalar>& grid);

}  // namespace wuq::oracle
