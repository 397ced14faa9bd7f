#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wuq/blocking.hpp"
#include "wuq/codec.hpp"
#include "wuq/flatten.hpp"
#include "wuq/pipeline.hpp"
#include "wuq/saturation.hpp"

namespace wuq::testing {

enum class Family { BlockDiagonal, Banded, Perturbed, Quotient };

const char* family_name(Family f);

/// A generated quotient model with tilde blockings and candidate vectors.
struct Instance {
  Family family = Family::BlockDiagonal;
  std::uint64_t seed = 0;
  ModelRecord record;
  std::shared_ptr<const QuotientModel> model;
  EpsilonSchedule schedule;
  Blocking dom_tilde;
  Blocking cod_tilde;
  /// One unit vector per codomain tilde block.
  std::vector<FinVec> candidates;
};

/// Dimensions between 16 and 24, Schreier norms on both sides, covering
/// constant 2 unless the certified bound needs more. Small blocks along the diagonal; Banded adds entries
/// Q_{b-1} T P_b, Perturbed adds entries below the block decay thresholds far
/// from the diagonal, Quotient maps some two-column blocks onto one row.
Instance make_instance(Family family, std::uint64_t seed);

/// Scene after selection, with the data for checks "1.2" .. "1.6b": the
/// coefficient vector, p and r, x a minimal preimage of the normalized
/// combination, and the window (p_1, p_2).
struct LemmaScene {
  SceneRecord record;
  SelectResult selection;
  FlattenResult flat;
};

std::optional<LemmaScene> lemma_scene(const Instance& inst, std::size_t max_blocks = 24);

/// Scene after selection with the selected ys, ready for extraction.
std::optional<SceneRecord> extraction_scene(const Instance& inst, std::size_t max_blocks = 24);

struct TraceMutation {
  std::string target;
  ContradictionTrace trace;
};

/// Single changes to the synthetic trace of size m, one per checked clause
/// of the counting argument and one per recorded value. Structural changes
/// recompute the recorded values so only the targeted step is wrong.
std::vector<TraceMutation> trace_mutations(std::size_t m);

}  // namespace wuq::testing
