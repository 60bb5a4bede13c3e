#include "lipsat/intlin.hpp"

#include "lipsat/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace lipsat::intlin {

namespace {

Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rational frac(const Rational &x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(fl);
  r.canonicalize();
  return r;
}

// rows (a, b) <- (s*a + t*b, x*a + y*b)
void combine_rows(IntegerVector &a, IntegerVector &b, const Integer &s, const Integer &t,
                  const Integer &x, const Integer &y) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    Integer na = s * a[k] + t * b[k];
    Integer nb = x * a[k] + y * b[k];
    a[k] = std::move(na);
    b[k] = std::move(nb);
  }
}

void axpy(IntegerVector &dst, const Integer &f, const IntegerVector &src) {
  for (std::size_t k = 0; k < dst.size(); ++k)
    dst[k] -= f * src[k];
}

void negate(IntegerVector &v) {
  for (auto &x : v)
    x = -x;
}

} // namespace

IntegerVector make_vector(std::initializer_list<long> entries) {
  IntegerVector v;
  v.reserve(entries.size());
  for (long e : entries)
    v.emplace_back(e);
  return v;
}

IntegerVector make_vector(std::span<const std::int64_t> entries) {
  IntegerVector v;
  v.reserve(entries.size());
  for (std::int64_t e : entries)
    v.emplace_back(static_cast<long>(e));
  return v;
}

Integer dot(const IntegerVector &a, const IntegerVector &b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

std::string to_string(const IntegerVector &v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), data_(rows, IntegerVector(cols, Integer(0))) {}

IntegerMatrix::IntegerMatrix(std::size_t cols, std::vector<IntegerVector> rows)
    : cols_(cols), data_(std::move(rows)) {
  for (const auto &r : data_)
    if (r.size() != cols_)
      throw Error(ErrorKind::DimensionMismatch, "IntegerMatrix: ragged rows");
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntegerVector> data;
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  for (auto r : rows)
    data.push_back(make_vector(r));
  return IntegerMatrix(cols, std::move(data));
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix &rhs) const {
  if (cols_ != rhs.rows())
    throw Error(ErrorKind::DimensionMismatch, "matrix product: shape mismatch");
  IntegerMatrix out(rows(), rhs.cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (sgn(data_[i][k]) == 0)
        continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j)
        out(i, j) += data_[i][k] * rhs(k, j);
    }
  return out;
}

bool IntegerMatrix::is_zero() const {
  for (const auto &r : data_)
    for (const auto &x : r)
      if (sgn(x) != 0)
        return false;
  return true;
}

Integer determinant(const IntegerMatrix &m) {
  const std::size_t n = m.rows();
  if (m.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "determinant: matrix is not square");
  if (n == 0)
    return 1;
  IntegerMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && sgn(a(swap, k)) == 0)
        ++swap;
      if (swap == n)
        return 0;
      std::swap(a.row(k), a.row(swap));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

HermiteResult hnf(const IntegerMatrix &m) {
  IntegerMatrix h = m;
  IntegerMatrix u = IntegerMatrix::identity(m.rows());
  const std::size_t nrows = h.rows();
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < nrows; ++col) {
    for (std::size_t r = row + 1; r < nrows; ++r) {
      if (sgn(h(r, col)) == 0)
        continue;
      Integer a = h(row, col), b = h(r, col);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer x = -b / g, y = a / g;
      combine_rows(h.row(row), h.row(r), s, t, x, y);
      combine_rows(u.row(row), u.row(r), s, t, x, y);
    }
    if (sgn(h(row, col)) == 0)
      continue;
    if (sgn(h(row, col)) < 0) {
      negate(h.row(row));
      negate(u.row(row));
    }
    for (std::size_t r = 0; r < row; ++r) {
      Integer f = floor_div(h(r, col), h(row, col));
      if (sgn(f) == 0)
        continue;
      axpy(h.row(r), f, h.row(row));
      axpy(u.row(r), f, u.row(row));
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

SmithResult snf(const IntegerMatrix &m) {
  IntegerMatrix d = m;
  const std::size_t nr = d.rows(), nc = d.cols();
  IntegerMatrix u = IntegerMatrix::identity(nr);
  IntegerMatrix v = IntegerMatrix::identity(nc);

  auto swap_cols = [](IntegerMatrix &a, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a.rows(); ++r)
      std::swap(a(r, i), a(r, j));
  };
  auto sub_col = [](IntegerMatrix &a, std::size_t dst, const Integer &f, std::size_t src) {
    for (std::size_t r = 0; r < a.rows(); ++r)
      a(r, dst) -= f * a(r, src);
  };

  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pr = nr, pc = nc;
      for (std::size_t r = t; r < nr; ++r)
        for (std::size_t c = t; c < nc; ++c)
          if (sgn(d(r, c)) != 0 && (pr == nr || abs(d(r, c)) < abs(d(pr, pc)))) {
            pr = r;
            pc = c;
          }
      if (pr == nr)
        return {std::move(u), std::move(d), std::move(v)};
      if (pr != t) {
        std::swap(d.row(pr), d.row(t));
        std::swap(u.row(pr), u.row(t));
      }
      if (pc != t) {
        swap_cols(d, pc, t);
        swap_cols(v, pc, t);
      }

      bool clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (sgn(d(r, t)) == 0)
          continue;
        Integer f = d(r, t) / d(t, t);
        axpy(d.row(r), f, d.row(t));
        axpy(u.row(r), f, u.row(t));
        if (sgn(d(r, t)) != 0)
          clean = false;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (sgn(d(t, c)) == 0)
          continue;
        Integer f = d(t, c) / d(t, t);
        sub_col(d, c, f, t);
        sub_col(v, c, f, t);
        if (sgn(d(t, c)) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // divisibility chain: fold an offending row into the pivot row
      bool divides = true;
      for (std::size_t r = t + 1; r < nr && divides; ++r)
        for (std::size_t c = t + 1; c < nc; ++c)
          if (!mpz_divisible_p(d(r, c).get_mpz_t(), d(t, t).get_mpz_t())) {
            for (std::size_t k = 0; k < nc; ++k)
              d(t, k) += d(r, k);
            for (std::size_t k = 0; k < nr; ++k)
              u(t, k) += u(r, k);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (sgn(d(t, t)) < 0) {
      negate(d.row(t));
      negate(u.row(t));
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

std::string to_string(const Character &c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.w.size(); ++i)
    os << (i ? "," : "") << c.w[i];
  os << ')';
  return os.str();
}

Rational character_eval(const Character &c, const IntegerVector &x) {
  if (c.w.size() != x.size())
    throw Error(ErrorKind::DimensionMismatch, "character_eval: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += c.w[i] * Rational(x[i]);
  return frac(s);
}

Lattice::Lattice(std::size_t dim) : dim_(dim) {}

Lattice Lattice::from_generators(std::size_t dim, const std::vector<IntegerVector> &gens) {
  for (const auto &g : gens)
    if (g.size() != dim)
      throw Error(ErrorKind::DimensionMismatch,
                  "lattice generator " + to_string(g) + " has wrong length");
  Lattice l(dim);
  if (gens.empty())
    return l;
  auto [h, u] = hnf(IntegerMatrix(dim, gens));
  for (std::size_t r = 0; r < h.rows(); ++r) {
    auto it = std::find_if(h.row(r).begin(), h.row(r).end(),
                           [](const Integer &x) { return sgn(x) != 0; });
    if (it == h.row(r).end())
      break;
    l.pivots_.push_back(static_cast<std::size_t>(it - h.row(r).begin()));
    l.basis_.push_back(h.row(r));
    l.transform_.push_back(u.row(r));
  }
  return l;
}

Integer Lattice::index() const {
  if (rank() < dim_)
    return 0;
  Integer p = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    p *= basis_[i][pivots_[i]];
  return p;
}

std::optional<IntegerVector> Lattice::coordinates(const IntegerVector &q) const {
  if (q.size() != dim_)
    throw Error(ErrorKind::DimensionMismatch, "lattice query " + to_string(q) +
                                                  " does not have length " +
                                                  std::to_string(dim_));
  IntegerVector residual = q;
  IntegerVector coef(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Integer &pivot = basis_[i][pivots_[i]];
    if (!mpz_divisible_p(residual[pivots_[i]].get_mpz_t(), pivot.get_mpz_t()))
      return std::nullopt;
    mpz_divexact(coef[i].get_mpz_t(), residual[pivots_[i]].get_mpz_t(), pivot.get_mpz_t());
    if (sgn(coef[i]) != 0)
      axpy(residual, coef[i], basis_[i]);
  }
  for (const auto &x : residual)
    if (sgn(x) != 0)
      return std::nullopt;
  return coef;
}

bool Lattice::contains(const IntegerVector &q) const { return coordinates(q).has_value(); }

std::optional<IntegerVector> Lattice::generator_coefficients(const IntegerVector &q) const {
  auto coef = coordinates(q);
  if (!coef)
    return std::nullopt;
  const std::size_t ngens = transform_.empty() ? 0 : transform_.front().size();
  IntegerVector out(ngens, Integer(0));
  for (std::size_t i = 0; i < coef->size(); ++i)
    for (std::size_t j = 0; j < ngens; ++j)
      out[j] += (*coef)[i] * transform_[i][j];
  return out;
}

std::optional<Character> separating_character(const Lattice &l, const IntegerVector &q) {
  if (l.contains(q))
    return std::nullopt;
  const std::size_t dim = l.dim();
  const std::size_t rank = l.rank();

  // In coordinates y = x V the lattice becomes d_1 Z x ... x d_r Z x 0.
  IntegerMatrix v = IntegerMatrix::identity(dim);
  std::vector<Integer> diag;
  if (rank > 0) {
    auto s = snf(IntegerMatrix(dim, l.basis()));
    v = std::move(s.v);
    for (std::size_t k = 0; k < rank; ++k)
      diag.push_back(s.d(k, k));
  }
  IntegerVector y(dim, Integer(0));
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t j = 0; j < dim; ++j)
      y[k] += q[j] * v(j, k);

  auto column_over = [&](std::size_t k, const Integer &den) {
    Character c;
    c.w.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      Rational r(v(j, k), den);
      r.canonicalize();
      c.w.push_back(frac(r));
    }
    return c;
  };

  for (std::size_t k = 0; k < rank; ++k)
    if (!mpz_divisible_p(y[k].get_mpz_t(), diag[k].get_mpz_t()))
      return column_over(k, diag[k]);
  for (std::size_t k = rank; k < dim; ++k)
    if (sgn(y[k]) != 0)
      return column_over(k, 2 * y[k]);
  // unreachable: q outside l forces one of the coordinates above to fail
  throw Error(ErrorKind::InvalidArgument, "separating_character: inconsistent Smith form");
}

} // namespace lipsat::intlin
