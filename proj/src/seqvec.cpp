#include "wuq/seqvec.hpp"

#include <algorithm>

#include "wuq/error.hpp"

namespace wuq {

FinVec::FinVec(std::initializer_list<std::pair<Index, Scalar>> entries) {
  for (const auto& [i, v] : entries) add(i, v);
}

FinVec FinVec::unit(Index i) {
  FinVec e;
  e.set(i, 1);
  return e;
}

void FinVec::set(Index i, const Scalar& value) {
  if (i == 0) throw Error(ErrorCode::IndexOutOfRange, "coordinate indices are 1-based");
  if (value == 0)
    entries_.erase(i);
  else {
    Scalar& slot = entries_[i];
    slot = value;
    slot.canonicalize();
  }
}

Scalar FinVec::get(Index i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Scalar(0) : it->second;
}

void FinVec::add(Index i, const Scalar& value) {
  if (value == 0) return;
  if (i == 0) throw Error(ErrorCode::IndexOutOfRange, "coordinate indices are 1-based");
  auto [it, inserted] = entries_.try_emplace(i, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

std::vector<Index> FinVec::support() const {
  std::vector<Index> s;
  s.reserve(entries_.size());
  for (const auto& kv : entries_) s.push_back(kv.first);
  return s;
}

FinVec& FinVec::operator+=(const FinVec& other) {
  for (const auto& [i, v] : other.entries_) add(i, v);
  return *this;
}

FinVec& FinVec::operator-=(const FinVec& other) {
  for (const auto& [i, v] : other.entries_) add(i, -v);
  return *this;
}

FinVec& FinVec::operator*=(const Scalar& factor) {
  if (factor == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& kv : entries_) kv.second *= factor;
  return *this;
}

IndexSet::IndexSet(std::initializer_list<Index> items) : IndexSet(std::vector<Index>(items)) {}

IndexSet::IndexSet(std::vector<Index> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  if (!items_.empty() && items_.front() == 0)
    throw Error(ErrorCode::IndexOutOfRange, "index sets hold positive integers");
}

bool IndexSet::contains(Index i) const { return std::binary_search(items_.begin(), items_.end(), i); }

Blocking::Blocking(std::vector<Index> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.empty() || cuts_.front() != 0)
    throw Error(ErrorCode::InvalidArgument, "a blocking starts at cut 0");
  for (std::size_t i = 1; i < cuts_.size(); ++i)
    if (cuts_[i] <= cuts_[i - 1]) throw Error(ErrorCode::InvalidArgument, "blocking cuts must increase strictly");
}

Blocking Blocking::from_sizes(std::span<const Index> sizes) {
  std::vector<Index> cuts{0};
  for (Index s : sizes) cuts.push_back(cuts.back() + s);
  return Blocking(std::move(cuts));
}

Blocking Blocking::singletons(std::size_t count) {
  std::vector<Index> cuts(count + 1);
  for (std::size_t i = 0; i <= count; ++i) cuts[i] = i;
  return Blocking(std::move(cuts));
}

Index Blocking::first_of(std::size_t block) const {
  if (block == 0 || block > block_count()) throw Error(ErrorCode::IndexOutOfRange, "block index out of range");
  return cuts_[block - 1] + 1;
}

Index Blocking::last_of(std::size_t block) const {
  if (block == 0 || block > block_count()) throw Error(ErrorCode::IndexOutOfRange, "block index out of range");
  return cuts_[block];
}

std::size_t Blocking::block_of(Index i) const {
  if (i == 0 || i > cuts_.back()) return 0;
  auto it = std::lower_bound(cuts_.begin(), cuts_.end(), i);
  return static_cast<std::size_t>(it - cuts_.begin());
}

Blocking Blocking::coarsen(std::span<const Index> outer_cuts) const {
  Blocking outer(std::vector<Index>(outer_cuts.begin(), outer_cuts.end()));
  if (outer.last_index() > block_count())
    throw Error(ErrorCode::IndexOutOfRange, "coarsening cuts exceed the block count");
  std::vector<Index> cuts;
  cuts.reserve(outer_cuts.size());
  for (Index q : outer.cuts()) cuts.push_back(cuts_[q]);
  return Blocking(std::move(cuts));
}

FinVec BlockVector::sum() const {
  FinVec s;
  for (const auto& p : parts) s += p;
  return s;
}

CombCoefficients::CombCoefficients(std::vector<Scalar> values) : values_(std::move(values)) {
  for (const auto& v : values_)
    if (v < 0 || v > 1) throw Error(ErrorCode::InvalidArgument, "comb coefficients lie in [0, 1]");
}

FinVec restrict(const FinVec& x, const IndexSet& set) {
  FinVec r;
  for (const auto& [i, v] : x.entries())
    if (set.contains(i)) r.set(i, v);
  return r;
}

FinVec restrict_range(const FinVec& x, Index first, Index last) {
  FinVec r;
  if (first > last) return r;
  for (auto it = x.entries().lower_bound(first); it != x.entries().end() && it->first <= last; ++it)
    r.set(it->first, it->second);
  return r;
}

FinVec project(const Blocking& b, const std::vector<std::size_t>& blocks, const FinVec& x) {
  if (x.max_index() > b.last_index())
    throw Error(ErrorCode::SupportOverflow, "vector support extends beyond the blocking");
  FinVec r;
  for (std::size_t block : blocks) {
    if (block == 0 || block > b.block_count())
      throw Error(ErrorCode::IndexOutOfRange, "block " + std::to_string(block) + " not in 1.." +
                                                  std::to_string(b.block_count()));
    r += restrict_range(x, b.first_of(block), b.last_of(block));
  }
  return r;
}

FinVec project_blocks(const Blocking& b, std::size_t first, std::size_t last, const FinVec& x) {
  if (x.max_index() > b.last_index())
    throw Error(ErrorCode::SupportOverflow, "vector support extends beyond the blocking");
  first = std::max<std::size_t>(first, 1);
  last = std::min(last, b.block_count());
  if (first > last) return {};
  return restrict_range(x, b.first_of(first), b.last_of(last));
}

BlockVector block_decompose(const FinVec& x, const Blocking& b) {
  if (x.max_index() > b.last_index())
    throw Error(ErrorCode::SupportOverflow, "vector support extends beyond the blocking");
  BlockVector bv{b, std::vector<FinVec>(b.block_count())};
  for (const auto& [i, v] : x.entries()) bv.parts[b.block_of(i) - 1].set(i, v);
  return bv;
}

FinVec comb_scale(const BlockVector& bv, const CombCoefficients& c) {
  if (c.size() != bv.parts.size()) throw Error(ErrorCode::LengthMismatch, "one coefficient per block required");
  FinVec r;
  for (std::size_t j = 0; j < c.size(); ++j) r += c.values()[j] * bv.parts[j];
  return r;
}

}  // namespace wuq
