#include "lipsat/saturation.hpp"

#include "lipsat/error.hpp"
#include "lipsat/polyhedra.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <thread>

namespace lipsat::saturation {

using intlin::Integer;
using polyhedra::NewtonPolyhedron;

namespace {

constexpr std::size_t kMaxGenerators = 63;
constexpr std::size_t kMaxBruteForceGenerators = 20;

bool is_zero(const IntegerVector &q) {
  return std::all_of(q.begin(), q.end(), [](const Integer &x) { return sgn(x) == 0; });
}

void check_point(const AffineSemigroup &s, const IntegerVector &q) {
  if (q.size() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "point " + intlin::to_string(q) +
                                                  " does not have length " +
                                                  std::to_string(s.dim()));
  for (const auto &x : q)
    if (sgn(x) < 0)
      throw Error(ErrorKind::InvalidArgument,
                  "point " + intlin::to_string(q) + " has a negative coordinate");
}

IndexSet indices_of(std::uint64_t mask) {
  IndexSet out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1)
      out.push_back(i);
  return out;
}

std::vector<IntegerVector> points_of(const AffineSemigroup &s, std::uint64_t mask) {
  std::vector<IntegerVector> pts;
  for (std::size_t i : indices_of(mask))
    pts.push_back(s.generator(i));
  return pts;
}

std::uint64_t full_mask(std::size_t n) {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// q outside the Newton polyhedron of the masked generators; the empty
// polyhedron contains nothing.
bool offending(const AffineSemigroup &s, std::uint64_t mask, const IntegerVector &q) {
  if (mask == 0)
    return true;
  return !NewtonPolyhedron(s.dim(), points_of(s, mask)).contains(q);
}

// Expand lattice coefficients over the masked generators to one entry per
// generator.
IntegerVector spread(const IntegerVector &local, std::uint64_t mask, std::size_t n) {
  IntegerVector out(n, Integer(0));
  std::size_t j = 0;
  for (std::size_t i : indices_of(mask))
    out[i] = local[j++];
  return out;
}

NonMemberWitness make_witness(const AffineSemigroup &s, std::uint64_t subset,
                              const Lattice &complement, const IntegerVector &q) {
  NonMemberWitness w;
  w.subset = indices_of(subset);
  if (subset == 0) {
    w.support.assign(s.dim(), Integer(1));
  } else {
    auto v = NewtonPolyhedron(s.dim(), points_of(s, subset)).support_witness(q);
    if (!v)
      throw Error(ErrorKind::InvalidArgument, "offending subset without support witness");
    w.support = std::move(*v);
  }
  auto chi = intlin::separating_character(complement, q);
  if (!chi)
    throw Error(ErrorKind::InvalidArgument, "complement lattice unexpectedly contains the point");
  w.character = std::move(*chi);
  return w;
}

std::vector<IntegerVector> collect(const std::vector<char> &flags, const Box &box) {
  std::vector<IntegerVector> out;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i])
      out.push_back(box.point(i));
  return out;
}

} // namespace

struct MembershipEngine::Outcome {
  bool member = false;
  std::variant<MemberCertificate, NonMemberWitness> certificate;
};

MembershipEngine::MembershipEngine(AffineSemigroup s) : semigroup_(std::move(s)) {
  if (semigroup_.size() > kMaxGenerators)
    throw Error(ErrorKind::InvalidArgument, "at most 63 generators are supported");
  semigroup::require_smooth(semigroup_);
  full_mask_ = full_mask(semigroup_.size());
}

std::shared_ptr<const Lattice> MembershipEngine::span_of(std::uint64_t mask) const {
  {
    std::shared_lock lock(memo_mutex_);
    if (auto it = memo_.find(mask); it != memo_.end())
      return it->second;
  }
  auto l = std::make_shared<const Lattice>(
      Lattice::from_generators(semigroup_.dim(), points_of(semigroup_, mask)));
  std::unique_lock lock(memo_mutex_);
  return memo_.try_emplace(mask, std::move(l)).first->second;
}

MembershipEngine::Outcome MembershipEngine::evaluate(const IntegerVector &q,
                                                     bool want_certificate) const {
  check_point(semigroup_, q);
  const std::size_t n = semigroup_.size();
  if (is_zero(q))
    return {true, MemberCertificate{MemberCertificate::Kind::DominatedSpan,
                                    IntegerVector(n, Integer(0)),
                                    {}}};

  // Generators below q never sit in an offending subset.
  std::uint64_t dominated = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (semigroup::leq(semigroup_.generator(i), q))
      dominated |= std::uint64_t{1} << i;
  const std::uint64_t candidates = full_mask_ & ~dominated;

  auto base = span_of(dominated);
  if (auto c = base->generator_coefficients(q)) {
    MemberCertificate cert;
    if (want_certificate)
      cert.coefficients = spread(*c, dominated, n);
    return {true, std::move(cert)};
  }

  // Offending subsets form a down-set and the complement condition only
  // weakens on subsets, so the maximal offending subsets decide everything.
  std::vector<std::uint64_t> order;
  for (std::uint64_t sub = candidates;; sub = (sub - 1) & candidates) {
    order.push_back(sub);
    if (sub == 0)
      break;
  }
  std::stable_sort(order.begin(), order.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) > std::popcount(b);
  });

  std::vector<std::uint64_t> maximal;
  for (std::uint64_t sub : order) {
    bool covered = std::any_of(maximal.begin(), maximal.end(),
                               [sub](std::uint64_t m) { return (sub & ~m) == 0; });
    if (covered || !offending(semigroup_, sub, q))
      continue;
    maximal.push_back(sub);
    auto complement = span_of(full_mask_ & ~sub);
    if (!complement->contains(q)) {
      NonMemberWitness w;
      if (want_certificate)
        w = make_witness(semigroup_, sub, *complement, q);
      return {false, std::move(w)};
    }
  }

  MemberCertificate cert;
  cert.kind = MemberCertificate::Kind::MaximalSubsets;
  if (want_certificate)
    for (std::uint64_t sub : maximal) {
      const std::uint64_t comp = full_mask_ & ~sub;
      auto c = span_of(comp)->generator_coefficients(q);
      cert.subsets.push_back({indices_of(sub), spread(*c, comp, n)});
    }
  return {true, std::move(cert)};
}

MembershipVerdict MembershipEngine::contains(const IntegerVector &q) const {
  auto out = evaluate(q, true);
  return {q, out.member, std::move(out.certificate)};
}

bool MembershipEngine::is_member(const IntegerVector &q) const { return evaluate(q, false).member; }

std::vector<char> MembershipEngine::sweep(const Box &box, unsigned jobs) const {
  if (box.dim() != semigroup_.dim())
    throw Error(ErrorKind::DimensionMismatch, "box dimension differs from semigroup dimension");
  std::vector<char> flags(box.size(), 0);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < box.size(); i += step)
      flags[i] = is_member(box.point(i)) ? 1 : 0;
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    work(0, 1);
    return flags;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back(work, t, jobs);
  pool.clear();
  return flags;
}

BruteForceOracle::BruteForceOracle(AffineSemigroup s) : semigroup_(std::move(s)) {
  if (semigroup_.size() > kMaxBruteForceGenerators)
    throw Error(ErrorKind::InvalidArgument, "brute force is limited to 20 generators");
  semigroup::require_smooth(semigroup_);
  const std::uint64_t subsets = std::uint64_t{1} << semigroup_.size();
  spans_.reserve(subsets);
  for (std::uint64_t mask = 0; mask < subsets; ++mask)
    spans_.push_back(Lattice::from_generators(semigroup_.dim(), points_of(semigroup_, mask)));
}

bool BruteForceOracle::contains(const IntegerVector &q) const {
  check_point(semigroup_, q);
  if (is_zero(q))
    return true;
  const std::uint64_t all = full_mask(semigroup_.size());
  for (std::uint64_t subset = 0; subset <= all; ++subset) {
    // condition: q outside N(subset)  =>  q in span(complement)
    if (spans_[all & ~subset].contains(q))
      continue;
    if (offending(semigroup_, subset, q))
      return false;
  }
  return true;
}

MembershipVerdict gamma_s_contains(const AffineSemigroup &s, const IntegerVector &q) {
  return MembershipEngine(s).contains(q);
}

bool gamma_s_contains_bruteforce(const AffineSemigroup &s, const IntegerVector &q) {
  return BruteForceOracle(s).contains(q);
}

NonMemberWitness non_membership_witness(const AffineSemigroup &s, const IntegerVector &q) {
  auto verdict = gamma_s_contains(s, q);
  if (verdict.member)
    throw Error(ErrorKind::InvalidArgument,
                "point " + intlin::to_string(q) + " belongs to the saturation");
  return std::get<NonMemberWitness>(std::move(verdict.certificate));
}

namespace {

bool valid_subset(const IndexSet &subset, std::size_t n, std::uint64_t &mask) {
  mask = 0;
  for (std::size_t i : subset) {
    if (i >= n || (mask >> i) & 1)
      return false;
    mask |= std::uint64_t{1} << i;
  }
  return true;
}

bool reproduces(const AffineSemigroup &s, const IntegerVector &coef, const IntegerVector &q,
                std::uint64_t allowed) {
  if (coef.size() != s.size())
    return false;
  IntegerVector sum(s.dim(), Integer(0));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (sgn(coef[i]) == 0)
      continue;
    if (!((allowed >> i) & 1))
      return false;
    for (std::size_t k = 0; k < s.dim(); ++k)
      sum[k] += coef[i] * s.generator(i)[k];
  }
  return sum == q;
}

bool verify_witness(const AffineSemigroup &s, const IntegerVector &q, const NonMemberWitness &w) {
  const std::size_t n = s.size();
  std::uint64_t mask = 0;
  if (!valid_subset(w.subset, n, mask))
    return false;
  if (w.support.size() != s.dim() || w.character.w.size() != s.dim())
    return false;
  if (std::any_of(w.support.begin(), w.support.end(), [](const Integer &x) { return sgn(x) < 0; }))
    return false;
  if (mask != 0) {
    auto pts = points_of(s, mask);
    if (is_zero(w.support))
      return false;
    if (!(intlin::dot(q, w.support) < polyhedra::min_pairing(pts, w.support)))
      return false;
    if (NewtonPolyhedron(s.dim(), pts).contains(q))
      return false;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!((mask >> j) & 1) && sgn(intlin::character_eval(w.character, s.generator(j))) != 0)
      return false;
  return sgn(intlin::character_eval(w.character, q)) != 0;
}

bool verify_member(const AffineSemigroup &s, const IntegerVector &q, const MemberCertificate &c) {
  const std::size_t n = s.size();
  const std::uint64_t all = full_mask(n);
  std::uint64_t dominated = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (semigroup::leq(s.generator(i), q))
      dominated |= std::uint64_t{1} << i;

  if (c.kind == MemberCertificate::Kind::DominatedSpan)
    return reproduces(s, c.coefficients, q, dominated);

  std::vector<std::uint64_t> recorded;
  for (const auto &rec : c.subsets) {
    std::uint64_t mask = 0;
    if (!valid_subset(rec.subset, n, mask))
      return false;
    if (!offending(s, mask, q))
      return false;
    if (!reproduces(s, rec.coefficients, q, all & ~mask))
      return false;
    recorded.push_back(mask);
  }
  // Completeness: a minimal subset not covered by any record must not be
  // offending (offending subsets are closed under taking subsets).
  const std::uint64_t candidates = all & ~dominated;
  auto covered = [&](std::uint64_t sub) {
    return std::any_of(recorded.begin(), recorded.end(),
                       [sub](std::uint64_t m) { return (sub & ~m) == 0; });
  };
  for (std::uint64_t sub = candidates;; sub = (sub - 1) & candidates) {
    if (!covered(sub)) {
      bool minimal = true;
      for (std::uint64_t rest = sub; rest && minimal; rest &= rest - 1)
        if (!covered(sub & ~(rest & -rest)))
          minimal = false;
      if (minimal && offending(s, sub, q))
        return false;
    }
    if (sub == 0)
      break;
  }
  return true;
}

} // namespace

bool verify_certificate(const AffineSemigroup &s, const IntegerVector &q,
                        const MembershipVerdict &verdict) {
  try {
    if (q.size() != s.dim() || verdict.point != q || s.size() > kMaxGenerators)
      return false;
    for (const auto &x : q)
      if (sgn(x) < 0)
        return false;
    if (verdict.member) {
      const auto *c = std::get_if<MemberCertificate>(&verdict.certificate);
      return c && verify_member(s, q, *c);
    }
    const auto *w = std::get_if<NonMemberWitness>(&verdict.certificate);
    return w && verify_witness(s, q, *w);
  } catch (const Error &) {
    return false;
  }
}

Lattice gamma_m(const AffineSemigroup &s, const IntegerVector &m) {
  if (!semigroup::semigroup_contains(s, m))
    throw Error(ErrorKind::InvalidArgument,
                "point " + intlin::to_string(m) + " does not lie in the semigroup");
  return Lattice::from_generators(s.dim(), semigroup::below_set(s, m));
}

CampilloResult campillo_closure(const AffineSemigroup &s, const Box &box) {
  semigroup::require_smooth(s);
  if (box.dim() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "box dimension differs from semigroup dimension");
  const std::size_t d = s.dim();

  std::vector<IntegerVector> gens = s.generators();
  std::vector<char> in = semigroup::reachable(gens, box);
  // size of the below-set each m had when it was last expanded
  std::vector<std::size_t> expanded(box.size(), 0);
  const std::vector<long> origin(d, 0);

  CampilloResult result{box, {}, 0};
  for (;;) {
    ++result.iterations;
    bool changed = false;

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i])
        order.push_back(i);
    std::vector<long> norm(box.size(), 0);
    for (std::size_t i : order)
      for (long c : box.coords(i))
        norm[i] += c * c;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return norm[a] < norm[b]; });

    for (std::size_t mi : order) {
      const std::vector<long> m = box.coords(mi);
      std::vector<long> upper(d);
      for (std::size_t k = 0; k < d; ++k)
        upper[k] = m[k] + 1;

      std::vector<IntegerVector> below;
      box.for_each_in(origin, upper, [&](std::size_t idx, const std::vector<long> &) {
        if (in[idx])
          below.push_back(box.point(idx));
      });
      if (below.size() == expanded[mi])
        continue;
      expanded[mi] = below.size();

      const Lattice lat = Lattice::from_generators(d, below);
      const bool everything = lat.index() == 1;
      IntegerVector diff(d);
      box.for_each_in(m, box.extent(), [&](std::size_t idx, const std::vector<long> &x) {
        if (in[idx])
          return;
        if (!everything) {
          for (std::size_t k = 0; k < d; ++k)
            diff[k] = x[k] - m[k];
          if (!lat.contains(diff))
            return;
        }
        in[idx] = 1;
        gens.push_back(box.point(idx));
        changed = true;
      });
    }
    if (!changed)
      break;
    in = semigroup::reachable(gens, box);
  }
  result.members = collect(in, box);
  return result;
}

SaturationResult lipschitz_generators(const AffineSemigroup &s, const std::optional<Box> &box,
                                      unsigned jobs) {
  const auto b = semigroup::bounds(s);
  MembershipEngine engine(s);
  const Box eval = box.value_or(b.box);
  if (eval.dim() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "box dimension differs from semigroup dimension");

  SaturationResult out{eval, b.box, {}, {}};
  out.members = collect(engine.sweep(eval, jobs), eval);
  if (eval == b.box) {
    out.generators = out.members;
  } else {
    out.generators = collect(engine.sweep(b.box, jobs), b.box);
  }
  return out;
}

std::vector<IntegerVector> diff_campillo(const AffineSemigroup &s, const Box &box, unsigned jobs) {
  MembershipEngine engine(s);
  const auto flags = engine.sweep(box, jobs);
  const auto closure = campillo_closure(s, box);
  std::vector<char> in_closure(box.size(), 0);
  for (const auto &p : closure.members)
    in_closure[box.index_of(p)] = 1;
  std::vector<IntegerVector> out;
  for (std::size_t i = 0; i < box.size(); ++i)
    if (flags[i] && !in_closure[i])
      out.push_back(box.point(i));
  return out;
}

} // namespace lipsat::saturation
