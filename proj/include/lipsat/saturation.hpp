#pragma once

// Membership in the Lipschitz saturation of an affine semigroup with smooth
// normalization, its certificates, the Campillo presaturation closure and
// finite generating sets.
//
// A point q of N^d belongs to the saturation iff for every subset I of
// generator indices with q outside the Newton polyhedron of {p_i : i in I},
// q lies in the group spanned by the remaining generators (or q = 0).

#include "lipsat/intlin.hpp"
#include "lipsat/semigroup.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <variant>
#include <vector>

namespace lipsat::saturation {

using intlin::Character;
using intlin::IntegerVector;
using intlin::Lattice;
using semigroup::AffineSemigroup;
using semigroup::Box;

using IndexSet = std::vector<std::size_t>;

/// One maximal subset I with q outside its Newton polyhedron, together with
/// integer coefficients (one per generator, zero on I) reproducing q.
struct SubsetRecord {
  IndexSet subset;
  IntegerVector coefficients;
};

struct MemberCertificate {
  enum class Kind {
    /// q = sum c_i p_i using only generators p_i <= q. No offending subset
    /// can contain such an index, so this settles every subset at once.
    DominatedSpan,
    /// Every maximal offending subset with its complement representation.
    MaximalSubsets,
  };
  Kind kind = Kind::DominatedSpan;
  IntegerVector coefficients;        // DominatedSpan, one entry per generator
  std::vector<SubsetRecord> subsets; // MaximalSubsets
};

/// Offending subset I, covector v in N^d with <q,v> < min_{i in I} <p_i,v>,
/// and a character trivial on the complement generators but not on q.
struct NonMemberWitness {
  IndexSet subset;
  IntegerVector support;
  Character character;
};

struct MembershipVerdict {
  IntegerVector point;
  bool member = false;
  std::variant<MemberCertificate, NonMemberWitness> certificate;
};

/// Pruned membership search with lattices memoized per complement. Safe to
/// share between threads.
class MembershipEngine {
public:
  /// Throws Error(NotSmooth) unless the normalization is N^d.
  explicit MembershipEngine(AffineSemigroup s);

  const AffineSemigroup &semigroup() const noexcept { return semigroup_; }

  MembershipVerdict contains(const IntegerVector &q) const;
  bool is_member(const IntegerVector &q) const;

  /// Member flags for every point of `box`, spread across `jobs` threads.
  std::vector<char> sweep(const Box &box, unsigned jobs = 1) const;

  /// Lattice spanned by the generators whose indices are set in `mask`.
  std::shared_ptr<const Lattice> span_of(std::uint64_t mask) const;

private:
  struct Outcome;
  Outcome evaluate(const IntegerVector &q, bool want_certificate) const;

  AffineSemigroup semigroup_;
  std::uint64_t full_mask_;
  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<std::uint64_t, std::shared_ptr<const Lattice>> memo_;
};

/// Literal evaluation of the subset condition over all 2^n subsets.
class BruteForceOracle {
public:
  explicit BruteForceOracle(AffineSemigroup s);
  bool contains(const IntegerVector &q) const;

private:
  AffineSemigroup semigroup_;
  std::vector<Lattice> spans_; // indexed by generator mask
};

MembershipVerdict gamma_s_contains(const AffineSemigroup &s, const IntegerVector &q);
bool gamma_s_contains_bruteforce(const AffineSemigroup &s, const IntegerVector &q);

/// Throws Error(InvalidArgument) when q is a member.
NonMemberWitness non_membership_witness(const AffineSemigroup &s, const IntegerVector &q);

/// Re-derives every claim of the verdict from the generators alone.
bool verify_certificate(const AffineSemigroup &s, const IntegerVector &q,
                        const MembershipVerdict &verdict);

/// Z-span of {g in semigroup : g <= m}; m must lie in the semigroup.
Lattice gamma_m(const AffineSemigroup &s, const IntegerVector &m);

struct CampilloResult {
  Box box;
  std::vector<IntegerVector> members;
  std::size_t iterations = 0;
};

CampilloResult campillo_closure(const AffineSemigroup &s, const Box &box);

struct SaturationResult {
  Box box;                               ///< evaluated box
  Box generator_box;                     ///< the bound box
  std::vector<IntegerVector> members;    ///< saturation inside `box`
  std::vector<IntegerVector> generators; ///< saturation inside `generator_box`
};

/// Evaluates the bound box, or `box` when given, pointwise.
SaturationResult lipschitz_generators(const AffineSemigroup &s,
                                      const std::optional<Box> &box = std::nullopt,
                                      unsigned jobs = 1);

/// Saturation points inside `box` missed by the Campillo closure.
std::vector<IntegerVector> diff_campillo(const AffineSemigroup &s, const Box &box,
                                         unsigned jobs = 1);

} // namespace lipsat::saturation
