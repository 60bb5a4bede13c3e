#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms, lattices of
// Z^d in canonical form, lattice membership and separating characters.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lipsat::intlin {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

IntegerVector make_vector(std::initializer_list<long> entries);
IntegerVector make_vector(std::span<const std::int64_t> entries);

Integer dot(const IntegerVector &a, const IntegerVector &b);
std::string to_string(const IntegerVector &v);

/// Dense rectangular integer matrix stored by rows.
class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  /// Every row must have length `cols`.
  IntegerMatrix(std::size_t cols, std::vector<IntegerVector> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  Integer &operator()(std::size_t r, std::size_t c) { return data_[r][c]; }
  const Integer &operator()(std::size_t r, std::size_t c) const { return data_[r][c]; }

  const IntegerVector &row(std::size_t r) const { return data_[r]; }
  IntegerVector &row(std::size_t r) { return data_[r]; }
  const std::vector<IntegerVector> &row_list() const noexcept { return data_; }

  IntegerMatrix operator*(const IntegerMatrix &rhs) const;
  bool operator==(const IntegerMatrix &rhs) const = default;

  bool is_zero() const;

private:
  std::size_t cols_ = 0;
  std::vector<IntegerVector> data_;
};

/// Exact determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const IntegerMatrix &m);

struct HermiteResult {
  IntegerMatrix h; ///< canonical row HNF, zero rows trailing
  IntegerMatrix u; ///< unimodular transform with u * m == h
};

/// Row-style Hermite normal form: pivots strictly move right, are positive,
/// and entries above a pivot lie in [0, pivot).
HermiteResult hnf(const IntegerMatrix &m);

struct SmithResult {
  IntegerMatrix u; ///< unimodular, rows x rows
  IntegerMatrix d; ///< diagonal with d_1 | d_2 | ..., nonnegative
  IntegerMatrix v; ///< unimodular, cols x cols
};

/// Smith normal form with d == u * m * v.
SmithResult snf(const IntegerMatrix &m);

/// A rational covector w read modulo Z^d; it defines the character
/// x -> exp(2 pi i <w, x>) of Z^d.
struct Character {
  RationalVector w;
};

std::string to_string(const Character &c);

/// <w, x> reduced into [0, 1).
Rational character_eval(const Character &c, const IntegerVector &x);

/// Subgroup of Z^dim kept as the nonzero rows of its canonical HNF, so two
/// lattices are equal exactly when their bases are equal.
class Lattice {
public:
  /// The zero lattice of Z^dim.
  explicit Lattice(std::size_t dim);

  static Lattice from_generators(std::size_t dim, const std::vector<IntegerVector> &gens);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<IntegerVector> &basis() const noexcept { return basis_; }

  /// Index of the lattice in Z^dim, or 0 when the rank is deficient.
  Integer index() const;

  bool contains(const IntegerVector &q) const;

  /// Coefficients c with sum c_i * basis_i == q, by back-substitution.
  std::optional<IntegerVector> coordinates(const IntegerVector &q) const;

  /// Coefficients over the generators the lattice was built from (empty
  /// optional when q is outside). Only available for from_generators().
  std::optional<IntegerVector> generator_coefficients(const IntegerVector &q) const;

  bool operator==(const Lattice &rhs) const {
    return dim_ == rhs.dim_ && basis_ == rhs.basis_;
  }

private:
  std::size_t dim_;
  std::vector<IntegerVector> basis_;
  std::vector<std::size_t> pivots_;
  // Rows of U for the nonzero HNF rows: basis_i = sum_j transform_[i][j] gen_j.
  std::vector<IntegerVector> transform_;
};

inline Lattice lattice_from_generators(std::size_t dim, const std::vector<IntegerVector> &gens) {
  return Lattice::from_generators(dim, gens);
}

inline bool lattice_contains(const Lattice &l, const IntegerVector &q) { return l.contains(q); }

/// A character trivial on `l` but not on `q`; nullopt iff q lies in l.
std::optional<Character> separating_character(const Lattice &l, const IntegerVector &q);

} // namespace lipsat::intlin
