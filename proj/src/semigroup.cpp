#include "lipsat/semigroup.hpp"

#include "lipsat/error.hpp"

#include <algorithm>
#include <sstream>

namespace lipsat::semigroup {

namespace {

constexpr std::size_t kMaxBoxPoints = std::size_t{1} << 26;

void check_nonnegative(const IntegerVector &q, const char *what) {
  for (const auto &x : q)
    if (sgn(x) < 0)
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + " " + intlin::to_string(q) + " has a negative coordinate");
}

} // namespace

bool leq(const IntegerVector &a, const IntegerVector &b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k])
      return false;
  return true;
}

Box::Box(const IntegerVector &bound) : bound_(bound) {
  if (bound_.empty())
    throw Error(ErrorKind::InvalidArgument, "box bound must have at least one coordinate");
  extent_.resize(bound_.size());
  for (std::size_t k = 0; k < bound_.size(); ++k) {
    if (sgn(bound_[k]) <= 0)
      throw Error(ErrorKind::InvalidArgument,
                  "box bound " + intlin::to_string(bound_) + " must be positive");
    if (!bound_[k].fits_slong_p() || bound_[k] > Integer(static_cast<long>(kMaxBoxPoints)))
      throw Error(ErrorKind::InvalidArgument, "box bound " + intlin::to_string(bound_) +
                                                  " is too large to enumerate");
    extent_[k] = bound_[k].get_si();
  }
  stride_.assign(extent_.size(), 1);
  for (std::size_t k = extent_.size(); k-- > 0;) {
    stride_[k] = size_;
    size_ *= static_cast<std::size_t>(extent_[k]);
    if (size_ > kMaxBoxPoints)
      throw Error(ErrorKind::InvalidArgument, "box " + intlin::to_string(bound_) +
                                                  " has too many points to enumerate");
  }
}

bool Box::contains(const IntegerVector &x) const {
  if (x.size() != dim())
    return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (sgn(x[k]) < 0 || x[k] >= bound_[k])
      return false;
  return true;
}

bool Box::contains(const std::vector<long> &x) const {
  if (x.size() != dim())
    return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (x[k] < 0 || x[k] >= extent_[k])
      return false;
  return true;
}

bool Box::dominates(const Box &other) const {
  if (other.dim() != dim())
    return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (extent_[k] < other.extent_[k])
      return false;
  return true;
}

std::size_t Box::index_of(const std::vector<long> &x) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dim(); ++k)
    idx += static_cast<std::size_t>(x[k]) * stride_[k];
  return idx;
}

std::size_t Box::index_of(const IntegerVector &x) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dim(); ++k)
    idx += static_cast<std::size_t>(x[k].get_si()) * stride_[k];
  return idx;
}

std::vector<long> Box::coords(std::size_t index) const {
  std::vector<long> x(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    x[k] = static_cast<long>(index / stride_[k]);
    index %= stride_[k];
  }
  return x;
}

IntegerVector Box::point(std::size_t index) const {
  IntegerVector p;
  p.reserve(dim());
  for (long c : coords(index))
    p.emplace_back(c);
  return p;
}

std::size_t Box::offset(const std::vector<long> &delta) const { return index_of(delta); }

void Box::for_each_in(const std::vector<long> &lo, const std::vector<long> &hi,
                      const std::function<void(std::size_t, const std::vector<long> &)> &fn) const {
  const std::size_t d = dim();
  std::vector<long> a(d), b(d);
  for (std::size_t k = 0; k < d; ++k) {
    a[k] = std::max(lo[k], 0L);
    b[k] = std::min(hi[k], extent_[k]);
    if (a[k] >= b[k])
      return;
  }
  std::vector<long> x = a;
  for (;;) {
    fn(index_of(x), x);
    std::size_t k = d;
    while (k-- > 0) {
      if (++x[k] < b[k])
        break;
      x[k] = a[k];
    }
    if (k == static_cast<std::size_t>(-1))
      return;
  }
}

AffineSemigroup::AffineSemigroup(std::size_t dim, std::vector<IntegerVector> generators)
    : dim_(dim) {
  if (dim_ == 0)
    throw Error(ErrorKind::InvalidArgument, "semigroup dimension must be positive");
  if (generators.empty())
    throw Error(ErrorKind::InvalidArgument, "semigroup needs at least one generator");
  for (auto &g : generators) {
    if (g.size() != dim_)
      throw Error(ErrorKind::DimensionMismatch, "generator " + intlin::to_string(g) +
                                                    " does not have length " +
                                                    std::to_string(dim_));
    check_nonnegative(g, "generator");
    if (std::all_of(g.begin(), g.end(), [](const Integer &x) { return sgn(x) == 0; }))
      throw Error(ErrorKind::InvalidArgument, "the zero vector is not a valid generator");
    if (std::find(generators_.begin(), generators_.end(), g) == generators_.end())
      generators_.push_back(std::move(g));
  }
}

SmoothDiagnostics check_smooth(const AffineSemigroup &s) {
  SmoothDiagnostics diag;
  const std::size_t d = s.dim();
  for (std::size_t axis = 0; axis < d; ++axis) {
    bool found = false;
    for (const auto &g : s.generators()) {
      bool on_axis = sgn(g[axis]) > 0;
      for (std::size_t k = 0; k < d && on_axis; ++k)
        if (k != axis && sgn(g[k]) != 0)
          on_axis = false;
      if (on_axis) {
        found = true;
        break;
      }
    }
    if (!found)
      diag.empty_axes.push_back(axis);
  }
  diag.group_index = intlin::Lattice::from_generators(d, s.generators()).index();

  std::ostringstream msg;
  for (std::size_t axis : diag.empty_axes)
    msg << "axis " << axis + 1 << " carries no generator; ";
  if (diag.group_index == 0)
    msg << "generators do not span a full-rank group; ";
  else if (diag.group_index != 1)
    msg << "group index " << diag.group_index << " (generators do not span Z^" << d << "); ";
  diag.message = msg.str();
  if (!diag.message.empty())
    diag.message.resize(diag.message.size() - 2);
  diag.smooth = diag.empty_axes.empty() && diag.group_index == 1;
  if (diag.smooth)
    diag.message = "smooth normalization";
  return diag;
}

void require_smooth(const AffineSemigroup &s) {
  auto diag = check_smooth(s);
  if (!diag.smooth)
    throw Error(ErrorKind::NotSmooth, "semigroup normalization is not N^d: " + diag.message);
}

std::vector<char> reachable(const std::vector<IntegerVector> &generators, const Box &box) {
  struct Step {
    std::vector<long> g;
    std::size_t offset;
  };
  std::vector<Step> steps;
  for (const auto &g : generators) {
    if (g.size() != box.dim())
      throw Error(ErrorKind::DimensionMismatch, "generator length differs from box dimension");
    std::vector<long> c(g.size());
    bool fits = true;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g[k] >= box.bound()[k]) {
        fits = false;
        break;
      }
      c[k] = g[k].get_si();
    }
    if (fits)
      steps.push_back({c, box.offset(c)});
  }

  std::vector<char> flags(box.size(), 0);
  flags[0] = 1;
  const std::size_t d = box.dim();
  std::vector<long> x(d, 0);
  for (std::size_t idx = 1; idx < box.size(); ++idx) {
    for (std::size_t k = d; k-- > 0;) {
      if (++x[k] < box.extent()[k])
        break;
      x[k] = 0;
    }
    for (const auto &st : steps) {
      bool fits = true;
      for (std::size_t k = 0; k < d; ++k)
        if (st.g[k] > x[k]) {
          fits = false;
          break;
        }
      if (fits && flags[idx - st.offset]) {
        flags[idx] = 1;
        break;
      }
    }
  }
  return flags;
}

namespace {

IntegerVector plus_one(const IntegerVector &m) {
  IntegerVector b = m;
  for (auto &x : b)
    x += 1;
  return b;
}

std::vector<IntegerVector> collect(const std::vector<char> &flags, const Box &box) {
  std::vector<IntegerVector> out;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i])
      out.push_back(box.point(i));
  return out;
}

} // namespace

bool semigroup_contains(const AffineSemigroup &s, const IntegerVector &q) {
  if (q.size() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "point " + intlin::to_string(q) +
                                                  " does not have length " +
                                                  std::to_string(s.dim()));
  check_nonnegative(q, "point");
  Box box(plus_one(q));
  return reachable(s.generators(), box)[box.size() - 1] != 0;
}

Bounds bounds(const AffineSemigroup &s) {
  require_smooth(s);
  const std::size_t d = s.dim();
  IntegerVector b(d, Integer(0)), c(d, Integer(0));
  for (const auto &g : s.generators())
    for (std::size_t k = 0; k < d; ++k) {
      c[k] = std::max(c[k], g[k]);
      bool on_axis = true;
      for (std::size_t j = 0; j < d && on_axis; ++j)
        if (j != k && sgn(g[j]) != 0)
          on_axis = false;
      if (on_axis && sgn(g[k]) > 0 && (sgn(b[k]) == 0 || g[k] < b[k]))
        b[k] = g[k];
    }
  IntegerVector total(d);
  for (std::size_t k = 0; k < d; ++k)
    total[k] = b[k] + c[k];
  return {b, c, Box(total)};
}

std::vector<IntegerVector> below_set(const AffineSemigroup &s, const IntegerVector &m) {
  if (m.size() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "point " + intlin::to_string(m) +
                                                  " does not have length " +
                                                  std::to_string(s.dim()));
  check_nonnegative(m, "point");
  Box box(plus_one(m));
  return collect(reachable(s.generators(), box), box);
}

std::vector<IntegerVector> enumerate_box_members(const AffineSemigroup &s, const Box &box) {
  if (box.dim() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "box dimension differs from semigroup dimension");
  return collect(reachable(s.generators(), box), box);
}

} // namespace lipsat::semigroup
