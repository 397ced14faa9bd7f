#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "wuq/scalar.hpp"

namespace wuq {

/// 1-based coordinate index.
using Index = std::size_t;

/// Finitely supported exact-rational sequence. Zero entries are never
/// stored, so the zero vector is the empty map.
class FinVec {
 public:
  using Entries = std::map<Index, Scalar>;

  FinVec() = default;
  FinVec(std::initializer_list<std::pair<Index, Scalar>> entries);

  static FinVec unit(Index i);

  /// Sets coordinate i (>= 1); assigning zero erases it.
  void set(Index i, const Scalar& value);
  Scalar get(Index i) const;
  void add(Index i, const Scalar& value);

  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  std::vector<Index> support() const;
  /// Largest supported index, 0 for the zero vector.
  Index max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
  Index min_index() const { return entries_.empty() ? 0 : entries_.begin()->first; }
  const Entries& entries() const { return entries_; }

  FinVec& operator+=(const FinVec& other);
  FinVec& operator-=(const FinVec& other);
  FinVec& operator*=(const Scalar& factor);

  friend FinVec operator+(FinVec a, const FinVec& b) { return a += b; }
  friend FinVec operator-(FinVec a, const FinVec& b) { return a -= b; }
  friend FinVec operator*(const Scalar& s, FinVec a) { return a *= s; }
  friend FinVec operator-(FinVec a) { return a *= Scalar(-1); }
  friend bool operator==(const FinVec& a, const FinVec& b) { return a.entries_ == b.entries_; }

 private:
  Entries entries_;
};

/// Finite sorted duplicate-free set of positive integers.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<Index> items);
  explicit IndexSet(std::vector<Index> items);

  bool contains(Index i) const;
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  Index min() const { return items_.front(); }
  Index max() const { return items_.back(); }
  const std::vector<Index>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<Index> items_;
};

/// Cut points 0 = q_0 < q_1 < ... < q_L. Block i (1-based) is the
/// coordinate interval (q_{i-1}, q_i].
class Blocking {
 public:
  Blocking() : cuts_{0} {}
  explicit Blocking(std::vector<Index> cuts);

  /// Blocks of the given sizes laid end to end.
  static Blocking from_sizes(std::span<const Index> sizes);
  /// L blocks of one coordinate each.
  static Blocking singletons(std::size_t count);

  std::size_t block_count() const { return cuts_.size() - 1; }
  Index last_index() const { return cuts_.back(); }
  Index first_of(std::size_t block) const;
  Index last_of(std::size_t block) const;
  /// Block containing coordinate i, or 0 when i is beyond q_L.
  std::size_t block_of(Index i) const;
  const std::vector<Index>& cuts() const { return cuts_; }

  /// Coarsening: block i of the result is the union of blocks
  /// (outer_cuts[i-1], outer_cuts[i]] of this blocking.
  Blocking coarsen(std::span<const Index> outer_cuts) const;

  friend bool operator==(const Blocking&, const Blocking&) = default;

 private:
  std::vector<Index> cuts_;
};

/// Per-block decomposition x = sum of parts, part i supported in block i.
struct BlockVector {
  Blocking blocking;
  std::vector<FinVec> parts;

  FinVec sum() const;
  /// Part of block i, 1-based.
  const FinVec& part(std::size_t block) const { return parts.at(block - 1); }
};

/// Per-block coefficients, each in [0, 1].
class CombCoefficients {
 public:
  explicit CombCoefficients(std::vector<Scalar> values);
  const std::vector<Scalar>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<Scalar> values_;
};

FinVec restrict(const FinVec& x, const IndexSet& set);
/// Restriction to the coordinate interval [first, last].
FinVec restrict_range(const FinVec& x, Index first, Index last);

/// Restriction to the union of the listed blocks. Throws IndexOutOfRange for
/// a block index outside 1..L, SupportOverflow when x extends beyond q_L.
FinVec project(const Blocking& b, const std::vector<std::size_t>& blocks, const FinVec& x);
/// Restriction to blocks first..last inclusive; empty when first > last.
/// Block indices beyond L are clipped (the projection of a finite truncation).
FinVec project_blocks(const Blocking& b, std::size_t first, std::size_t last, const FinVec& x);

BlockVector block_decompose(const FinVec& x, const Blocking& b);
FinVec comb_scale(const BlockVector& bv, const CombCoefficients& c);

}  // namespace wuq
