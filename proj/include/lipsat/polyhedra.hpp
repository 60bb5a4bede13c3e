#pragma once

// Newton polyhedra over the nonnegative orthant, decided with an exact
// rational simplex.

#include "lipsat/intlin.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lipsat::polyhedra {

using intlin::Integer;
using intlin::IntegerVector;
using intlin::Rational;
using intlin::RationalVector;

using RationalMatrix = std::vector<RationalVector>;

struct LpResult {
  bool feasible = false;
  /// Feasible: a point x >= 0 satisfying every row.
  /// Infeasible: a Farkas vector y with y^T A <= 0, y_i >= 0 on inequality
  /// rows and y^T b > 0.
  RationalVector certificate;
};

/// Decides whether some x >= 0 satisfies A x >= b row-wise, with the rows
/// listed in `eq_rows` read as equalities. Exact simplex, Bland's rule.
LpResult lp_feasible(const RationalMatrix &a, const RationalVector &b,
                     std::span<const std::size_t> eq_rows);

/// Conv(union of p_i + R^d_{>=0}) for a nonempty set of integer points.
class NewtonPolyhedron {
public:
  /// Duplicate points are merged; an empty point set is rejected.
  NewtonPolyhedron(std::size_t dim, std::vector<IntegerVector> points);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<IntegerVector> &points() const noexcept { return points_; }

  /// Boundary points count as inside.
  bool contains(const IntegerVector &q) const;

  /// v in N^d with <q,v> < min_i <p_i,v>, or nullopt when q is inside.
  std::optional<IntegerVector> support_witness(const IntegerVector &q) const;

  /// Convex weights lambda with q >= sum lambda_i p_i, or nullopt.
  std::optional<RationalVector> convex_weights(const IntegerVector &q) const;

private:
  void check_dim(const IntegerVector &q) const;
  LpResult solve(const IntegerVector &q) const;

  std::size_t dim_;
  std::vector<IntegerVector> points_;
};

inline bool newton_contains(const NewtonPolyhedron &n, const IntegerVector &q) {
  return n.contains(q);
}

inline std::optional<IntegerVector> support_witness(const NewtonPolyhedron &n,
                                                    const IntegerVector &q) {
  return n.support_witness(q);
}

/// min_i <p_i, v> over a nonempty point list.
Integer min_pairing(const std::vector<IntegerVector> &points, const IntegerVector &v);

} // namespace lipsat::polyhedra
