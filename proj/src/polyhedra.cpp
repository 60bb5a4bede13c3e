#include "lipsat/polyhedra.hpp"

#include "lipsat/error.hpp"

#include <algorithm>
#include <utility>

namespace lipsat::polyhedra {

namespace {

// Phase-one tableau for  sign_i (A_i x - s_i) + art_i = sign_i b_i,
// minimising the sum of the artificial variables.
class PhaseOne {
public:
  PhaseOne(const RationalMatrix &a, const RationalVector &b, const std::vector<bool> &is_eq)
      : m_(a.size()), n_(a.empty() ? 0 : a.front().size()) {
    std::size_t surplus = 0;
    for (bool e : is_eq)
      surplus += e ? 0 : 1;
    art_begin_ = n_ + surplus;
    cols_ = art_begin_ + m_;
    rows_.assign(m_ + 1, RationalVector(cols_ + 1, Rational(0)));
    sign_.assign(m_, 1);
    basis_.resize(m_);

    std::size_t s = n_;
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = sgn(b[i]) < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j)
        rows_[i][j] = sign_[i] * a[i][j];
      if (!is_eq[i])
        rows_[i][s++] = -sign_[i];
      rows_[i][art_begin_ + i] = 1;
      rows_[i][cols_] = sign_[i] * b[i];
      basis_[i] = art_begin_ + i;
    }
    // reduced costs: c_j - sum over rows (all basic costs are 1)
    RationalVector &obj = rows_[m_];
    for (std::size_t j = 0; j <= cols_; ++j) {
      Rational c = (j >= art_begin_ && j < cols_) ? 1 : 0;
      for (std::size_t i = 0; i < m_; ++i)
        c -= rows_[i][j];
      obj[j] = c;
    }
  }

  void run() {
    RationalVector &obj = rows_[m_];
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(obj[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == cols_)
        return;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(rows_[i][enter]) <= 0)
          continue;
        Rational ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      // phase one is bounded below by zero, so some row always qualifies
      if (leave == m_)
        throw Error(ErrorKind::InvalidArgument, "lp_feasible: unbounded phase one");
      pivot(leave, enter);
    }
  }

  // optimum value of the phase-one objective
  Rational infeasibility() const { return -rows_[m_][cols_]; }

  RationalVector point() const {
    RationalVector x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_)
        x[basis_[i]] = rows_[i][cols_];
    return x;
  }

  // duals of the optimal basis, mapped back through the row signs
  RationalVector farkas() const {
    RationalVector y(m_);
    for (std::size_t i = 0; i < m_; ++i)
      y[i] = sign_[i] * (Rational(1) - rows_[m_][art_begin_ + i]);
    return y;
  }

private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows_[r][c];
    for (auto &x : rows_[r])
      x /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || sgn(rows_[i][c]) == 0)
        continue;
      const Rational f = rows_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(rows_[r][j]) != 0)
          rows_[i][j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t m_, n_;
  std::size_t art_begin_ = 0, cols_ = 0;
  std::vector<RationalVector> rows_; // m_ constraint rows + objective row
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
};

} // namespace

LpResult lp_feasible(const RationalMatrix &a, const RationalVector &b,
                     std::span<const std::size_t> eq_rows) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "lp_feasible: row count differs from rhs length");
  const std::size_t n = a.empty() ? 0 : a.front().size();
  for (const auto &row : a)
    if (row.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "lp_feasible: ragged constraint matrix");
  std::vector<bool> is_eq(a.size(), false);
  for (std::size_t r : eq_rows) {
    if (r >= a.size())
      throw Error(ErrorKind::InvalidArgument, "lp_feasible: equality row index out of range");
    is_eq[r] = true;
  }

  PhaseOne lp(a, b, is_eq);
  lp.run();
  if (sgn(lp.infeasibility()) == 0)
    return {true, lp.point()};
  return {false, lp.farkas()};
}

Integer min_pairing(const std::vector<IntegerVector> &points, const IntegerVector &v) {
  if (points.empty())
    throw Error(ErrorKind::InvalidArgument, "min_pairing: empty point set");
  Integer best = intlin::dot(points.front(), v);
  for (std::size_t i = 1; i < points.size(); ++i)
    best = std::min(best, intlin::dot(points[i], v));
  return best;
}

NewtonPolyhedron::NewtonPolyhedron(std::size_t dim, std::vector<IntegerVector> points)
    : dim_(dim), points_(std::move(points)) {
  if (points_.empty())
    throw Error(ErrorKind::InvalidArgument, "Newton polyhedron needs at least one point");
  for (const auto &p : points_)
    if (p.size() != dim_)
      throw Error(ErrorKind::DimensionMismatch,
                  "Newton polyhedron point " + intlin::to_string(p) + " has wrong length");
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

void NewtonPolyhedron::check_dim(const IntegerVector &q) const {
  if (q.size() != dim_)
    throw Error(ErrorKind::DimensionMismatch,
                "query " + intlin::to_string(q) + " does not have length " + std::to_string(dim_));
}

// Rows: sum lambda = 1, then -sum lambda_i p_ik >= -q_k per coordinate.
LpResult NewtonPolyhedron::solve(const IntegerVector &q) const {
  const std::size_t n = points_.size();
  RationalMatrix a(dim_ + 1, RationalVector(n));
  RationalVector b(dim_ + 1);
  for (std::size_t i = 0; i < n; ++i)
    a[0][i] = 1;
  b[0] = 1;
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      a[k + 1][i] = -points_[i][k];
    b[k + 1] = -q[k];
  }
  const std::size_t eq[] = {0};
  return lp_feasible(a, b, eq);
}

namespace {

bool dominates(const IntegerVector &q, const IntegerVector &p) {
  for (std::size_t k = 0; k < q.size(); ++k)
    if (q[k] < p[k])
      return false;
  return true;
}

// Coordinate k where q lies strictly below every point, if any.
std::optional<std::size_t> below_all(const std::vector<IntegerVector> &points,
                                     const IntegerVector &q) {
  for (std::size_t k = 0; k < q.size(); ++k) {
    bool below = true;
    for (const auto &p : points)
      if (!(q[k] < p[k])) {
        below = false;
        break;
      }
    if (below)
      return k;
  }
  return std::nullopt;
}

} // namespace

bool NewtonPolyhedron::contains(const IntegerVector &q) const {
  check_dim(q);
  for (const auto &p : points_)
    if (dominates(q, p))
      return true;
  if (below_all(points_, q))
    return false;
  return solve(q).feasible;
}

std::optional<RationalVector> NewtonPolyhedron::convex_weights(const IntegerVector &q) const {
  check_dim(q);
  auto r = solve(q);
  if (!r.feasible)
    return std::nullopt;
  return std::move(r.certificate);
}

std::optional<IntegerVector> NewtonPolyhedron::support_witness(const IntegerVector &q) const {
  check_dim(q);
  for (const auto &p : points_)
    if (dominates(q, p))
      return std::nullopt;
  IntegerVector v(dim_, Integer(0));
  if (auto k = below_all(points_, q)) {
    v[*k] = 1;
    return v;
  }
  auto r = solve(q);
  if (r.feasible)
    return std::nullopt;

  // y = (y_0, y_1..y_d): <q, y_1..d> < y_0 <= min_i <p_i, y_1..d>
  Integer den = 1;
  for (std::size_t k = 0; k < dim_; ++k)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.certificate[k + 1].get_den_mpz_t());
  Integer g = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    Rational scaled = r.certificate[k + 1] * Rational(den);
    v[k] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[k].get_mpz_t());
  }
  if (g > 1)
    for (auto &x : v)
      x /= g;
  if (!(intlin::dot(q, v) < min_pairing(points_, v)))
    throw Error(ErrorKind::InvalidArgument, "support_witness: Farkas vector failed to separate");
  return v;
}

} // namespace lipsat::polyhedra
