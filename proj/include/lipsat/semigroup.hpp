#pragma once

// Affine semigroups in N^d given by generators, reachability sweeps over
// finite boxes, and the bound box used for generating sets of the saturation.

#include "lipsat/intlin.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lipsat::semigroup {

using intlin::Integer;
using intlin::IntegerVector;

/// {x in N^d : 0 <= x_i < bound_i}, indexed row-major with the last
/// coordinate fastest.
class Box {
public:
  /// Entries of `bound` must be positive and the box must stay enumerable.
  explicit Box(const IntegerVector &bound);

  std::size_t dim() const noexcept { return extent_.size(); }
  std::size_t size() const noexcept { return size_; }
  const IntegerVector &bound() const noexcept { return bound_; }
  const std::vector<long> &extent() const noexcept { return extent_; }

  bool contains(const IntegerVector &x) const;
  bool contains(const std::vector<long> &x) const;
  /// True when `other` lies inside this box.
  bool dominates(const Box &other) const;

  std::size_t index_of(const std::vector<long> &x) const;
  std::size_t index_of(const IntegerVector &x) const;
  std::vector<long> coords(std::size_t index) const;
  IntegerVector point(std::size_t index) const;

  /// Linear offset of a displacement vector inside the box.
  std::size_t offset(const std::vector<long> &delta) const;

  /// Visits every x with lo <= x < hi (clipped to the box) in index order.
  void for_each_in(const std::vector<long> &lo, const std::vector<long> &hi,
                   const std::function<void(std::size_t, const std::vector<long> &)> &fn) const;

  bool operator==(const Box &rhs) const { return bound_ == rhs.bound_; }

private:
  IntegerVector bound_;
  std::vector<long> extent_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
};

/// Finitely generated subsemigroup of N^d. Generators are deduplicated and
/// kept in input order; negative entries and the zero vector are rejected.
class AffineSemigroup {
public:
  AffineSemigroup(std::size_t dim, std::vector<IntegerVector> generators);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<IntegerVector> &generators() const noexcept { return generators_; }
  const IntegerVector &generator(std::size_t i) const { return generators_[i]; }

private:
  std::size_t dim_;
  std::vector<IntegerVector> generators_;
};

struct SmoothDiagnostics {
  bool smooth = false;
  std::vector<std::size_t> empty_axes; ///< 0-based axes without a generator
  Integer group_index = 0;             ///< [Z^d : group], 0 when rank < d
  std::string message;
};

/// Normalization is N^d: every axis carries a generator and the generators
/// span Z^d as a group.
SmoothDiagnostics check_smooth(const AffineSemigroup &s);

/// Throws Error(NotSmooth) with the diagnostics message.
void require_smooth(const AffineSemigroup &s);

/// Flags (indexed like `box`) of the points reachable from 0 by adding
/// generators without leaving the box.
std::vector<char> reachable(const std::vector<IntegerVector> &generators, const Box &box);

bool semigroup_contains(const AffineSemigroup &s, const IntegerVector &q);

struct Bounds {
  IntegerVector b; ///< least axis generator heights
  IntegerVector c; ///< largest generator coordinates
  Box box;         ///< bound b + c
};

Bounds bounds(const AffineSemigroup &s);

/// {g in semigroup : g <= m}, sorted.
std::vector<IntegerVector> below_set(const AffineSemigroup &s, const IntegerVector &m);

/// Semigroup points inside the box, sorted.
std::vector<IntegerVector> enumerate_box_members(const AffineSemigroup &s, const Box &box);

bool leq(const IntegerVector &a, const IntegerVector &b);

} // namespace lipsat::semigroup
