#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include "lipsat/intlin.hpp"
#include "lipsat/semigroup.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace lipsat::testing {

using intlin::Integer;
using intlin::IntegerVector;
using intlin::make_vector;
using semigroup::AffineSemigroup;

inline std::vector<IntegerVector> points(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntegerVector> out;
  for (const auto &r : rows)
    out.push_back(make_vector(r));
  return out;
}

inline AffineSemigroup semigroup_of(std::initializer_list<std::initializer_list<long>> rows) {
  auto gens = points(rows);
  return AffineSemigroup(gens.front().size(), gens);
}

inline AffineSemigroup staircase_semigroup() {
  return semigroup_of({{4, 0}, {0, 4}, {4, 10}, {13, 4}, {13, 10}, {13, 11}, {6, 10}});
}

inline AffineSemigroup closure_gap_semigroup() {
  return semigroup_of({{1, 0}, {0, 3}, {0, 4}, {0, 5}, {3, 1}, {3, 2}});
}

inline AffineSemigroup closure_step_semigroup() {
  return semigroup_of({{0, 3}, {0, 4}, {0, 5}, {2, 0}, {3, 0}, {1, 1}, {1, 4}});
}

inline long rand_in(std::mt19937_64 &rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Index of the group generated by `gens` in Z^d via the gcd of maximal
// minors, computed by brute force over d-subsets (0 when rank < d).
inline Integer group_index_by_minors(std::size_t d, const std::vector<IntegerVector> &gens) {
  Integer g = 0;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t start) {
    if (k == d) {
      intlin::IntegerMatrix m(d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          m(r, c) = gens[pick[r]][c];
      Integer det = intlin::determinant(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      return;
    }
    for (std::size_t i = start; i < gens.size(); ++i) {
      pick[k] = i;
      rec(k + 1, i + 1);
    }
  };
  rec(0, 0);
  return g;
}

// Random semigroup in dimension 2 or 3 with 2..6 generators of coordinates
// at most 8, repaired into smooth normalization by injecting axis
// generators k*e_i (k <= 8) until every axis is covered and the group is
// Z^d. Repairs that would exceed 6 generators restart the draw.
inline AffineSemigroup random_smooth_instance(std::mt19937_64 &rng, long max_coord = 8,
                                              std::size_t max_gens = 6) {
  for (;;) {
    const std::size_t d = rand_in(rng, 2, 3);
    const std::size_t n = rand_in(rng, 2, static_cast<long>(max_gens));
    std::set<IntegerVector> seen;
    std::vector<IntegerVector> gens;
    auto add = [&](IntegerVector v) {
      if (seen.insert(v).second)
        gens.push_back(std::move(v));
    };
    const std::size_t base = rand_in(rng, 1, static_cast<long>(n) - 1);
    while (gens.size() < base) {
      IntegerVector v(d);
      bool nonzero = false;
      for (auto &x : v) {
        x = rand_in(rng, 0, max_coord);
        nonzero |= x != 0;
      }
      if (nonzero)
        add(v);
    }
    for (std::size_t i = 0; i < d; ++i) {
      bool covered = std::any_of(gens.begin(), gens.end(), [&](const IntegerVector &g) {
        for (std::size_t k = 0; k < d; ++k)
          if ((k == i) != (g[k] != 0))
            return false;
        return true;
      });
      if (!covered) {
        IntegerVector e(d, 0);
        e[i] = rand_in(rng, 1, max_coord);
        add(e);
      }
    }
    int attempts = 0;
    while (group_index_by_minors(d, gens) != 1 && gens.size() < n && attempts++ < 20) {
      IntegerVector e(d, 0);
      e[rand_in(rng, 0, static_cast<long>(d) - 1)] = rand_in(rng, 1, max_coord);
      add(e);
    }
    if (group_index_by_minors(d, gens) != 1 || gens.size() < 2 || gens.size() > max_gens)
      continue;
    return AffineSemigroup(d, gens);
  }
}

// Semigroup membership by enumerating nonnegative combinations with
// coefficient sum at most sum(q).
inline bool combination_oracle(const std::vector<IntegerVector> &gens, const IntegerVector &q) {
  const std::size_t d = q.size();
  Integer total = 0;
  for (const auto &x : q)
    total += x;
  std::vector<Integer> cur(d, 0);
  std::function<bool(std::size_t, Integer)> rec = [&](std::size_t i, Integer budget) -> bool {
    if (cur == q)
      return true;
    if (i == gens.size())
      return false;
    std::vector<Integer> saved = cur;
    for (Integer k = 0; k <= budget; ++k) {
      bool fits = true;
      for (std::size_t c = 0; c < d; ++c)
        fits &= cur[c] <= q[c];
      if (!fits)
        break;
      if (rec(i + 1, budget - k)) {
        cur = saved;
        return true;
      }
      for (std::size_t c = 0; c < d; ++c)
        cur[c] += gens[i][c];
    }
    cur = saved;
    return false;
  };
  return rec(0, total);
}

inline bool dominates(const IntegerVector &q, const IntegerVector &p) {
  for (std::size_t k = 0; k < q.size(); ++k)
    if (q[k] < p[k])
      return false;
  return true;
}

} // namespace lipsat::testing
