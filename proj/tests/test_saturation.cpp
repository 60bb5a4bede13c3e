#include "support.hpp"

#include "lipsat/error.hpp"
#include "lipsat/polyhedra.hpp"
#include "lipsat/saturation.hpp"

#include <doctest.h>

using namespace lipsat;
using namespace lipsat::saturation;
using namespace lipsat::testing;
using polyhedra::NewtonPolyhedron;
using semigroup::Box;

namespace {

bool has(const std::vector<IntegerVector> &pts, const IntegerVector &p) {
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

AffineSemigroup small_nonmember_example() {
  return semigroup_of({{2, 0}, {3, 0}, {0, 2}, {0, 3}, {1, 1}});
}

// Subsets with q outside their Newton polyhedron, straight from the
// definition.
std::vector<std::uint64_t> offending_family(const AffineSemigroup &s, const IntegerVector &q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.size()); ++mask) {
    std::vector<IntegerVector> pts;
    for (std::size_t i = 0; i < s.size(); ++i)
      if ((mask >> i) & 1)
        pts.push_back(s.generator(i));
    if (pts.empty() || !NewtonPolyhedron(s.dim(), pts).contains(q))
      out.push_back(mask);
  }
  return out;
}

std::vector<IntegerVector> box_points(const Box &box) {
  std::vector<IntegerVector> out;
  for (std::size_t i = 0; i < box.size(); ++i)
    out.push_back(box.point(i));
  return out;
}

} // namespace

TEST_SUITE("saturation") {

TEST_CASE("gamma_s_contains examples") {
  auto e = staircase_semigroup();
  auto v = gamma_s_contains(e, make_vector({10, 8}));
  CHECK(v.member);
  CHECK(verify_certificate(e, make_vector({10, 8}), v));
  CHECK(gamma_s_contains_bruteforce(e, make_vector({10, 8})));

  auto f = closure_gap_semigroup();
  auto v2 = gamma_s_contains(f, make_vector({2, 2}));
  CHECK(v2.member);
  CHECK(verify_certificate(f, make_vector({2, 2}), v2));
  CHECK(gamma_s_contains_bruteforce(f, make_vector({2, 2})));

  auto s = small_nonmember_example();
  auto v3 = gamma_s_contains(s, make_vector({1, 0}));
  CHECK_FALSE(v3.member);
  CHECK_FALSE(gamma_s_contains_bruteforce(s, make_vector({1, 0})));
  auto v4 = gamma_s_contains(s, make_vector({1, 2}));
  CHECK(v4.member);
  CHECK(gamma_s_contains_bruteforce(s, make_vector({1, 2})));
}

TEST_CASE("maximal offending subsets of the small example") {
  auto s = small_nonmember_example();
  auto q = make_vector({1, 2});
  auto family = offending_family(s, q);
  std::vector<std::uint64_t> maximal;
  for (auto a : family) {
    bool is_max = true;
    for (auto b : family)
      if (a != b && (a & ~b) == 0)
        is_max = false;
    if (is_max)
      maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end());
  // {(2,0),(3,0)} and {(0,3)}
  CHECK(maximal == std::vector<std::uint64_t>{0b00011, 0b01000});
  auto full = Lattice::from_generators(2, points({{0, 2}, {0, 3}, {1, 1}}));
  CHECK(full.index() == 1);
  auto other = Lattice::from_generators(2, points({{2, 0}, {3, 0}, {0, 2}, {1, 1}}));
  CHECK(other.index() == 1);

  auto v = gamma_s_contains(s, q);
  REQUIRE(v.member);
  auto cert = std::get<MemberCertificate>(v.certificate);
  CHECK(cert.kind == MemberCertificate::Kind::MaximalSubsets);
  std::vector<IndexSet> recorded;
  for (const auto &r : cert.subsets)
    recorded.push_back(r.subset);
  std::sort(recorded.begin(), recorded.end());
  CHECK(recorded == std::vector<IndexSet>{{0, 1}, {3}});
}

TEST_CASE("zero and generators are members") {
  auto e = staircase_semigroup();
  MembershipEngine engine(e);
  CHECK(engine.is_member(make_vector({0, 0})));
  CHECK(gamma_s_contains_bruteforce(e, make_vector({0, 0})));
  for (const auto &g : e.generators()) {
    auto v = engine.contains(g);
    CHECK(v.member);
    CHECK(verify_certificate(e, g, v));
    CHECK(gamma_s_contains_bruteforce(e, g));
  }
}

TEST_CASE("engine rejects bad input") {
  CHECK_THROWS_AS(MembershipEngine(semigroup_of({{2, 0}, {0, 2}, {1, 1}})), Error);
  CHECK_THROWS_AS(MembershipEngine(semigroup_of({{4, 0}, {0, 4}})), Error);
  MembershipEngine engine(closure_gap_semigroup());
  CHECK_THROWS_AS(engine.contains(make_vector({-1, 2})), Error);
  CHECK_THROWS_AS(engine.contains(make_vector({1, 2, 3})), Error);
  CHECK_THROWS_AS(BruteForceOracle(semigroup_of({{2, 0}, {0, 2}, {1, 1}})), Error);
}

TEST_CASE("non_membership_witness examples") {
  auto s = small_nonmember_example();
  auto q = make_vector({1, 0});
  auto w = non_membership_witness(s, q);
  CHECK(w.subset == IndexSet{0, 1, 2, 3, 4});
  for (const auto &g : s.generators())
    CHECK(intlin::dot(q, w.support) < intlin::dot(g, w.support));
  // v = (1,1) is one valid choice: 1 < 2 on all five generators
  for (const auto &g : s.generators())
    CHECK(intlin::dot(q, make_vector({1, 1})) < intlin::dot(g, make_vector({1, 1})));
  CHECK(intlin::character_eval(w.character, q) != 0);
  CHECK(verify_certificate(s, q, MembershipVerdict{q, false, w}));

  // Two axis generators alone have group index 16; the smooth variant
  // below keeps (1,1) outside every polyhedron with an empty complement.
  auto t = semigroup_of({{4, 0}, {0, 4}, {5, 0}, {0, 5}});
  auto q2 = make_vector({1, 1});
  auto w2 = non_membership_witness(t, q2);
  CHECK(w2.subset == IndexSet{0, 1, 2, 3});
  for (const auto &g : t.generators())
    CHECK(intlin::dot(q2, w2.support) < intlin::dot(g, w2.support));
  CHECK(verify_certificate(t, q2, MembershipVerdict{q2, false, w2}));

  CHECK_THROWS_AS(non_membership_witness(s, make_vector({1, 2})), Error);
}

TEST_CASE("verify_certificate rejects tampering") {
  auto s = small_nonmember_example();
  auto q = make_vector({1, 0});
  auto v = gamma_s_contains(s, q);
  REQUIRE(verify_certificate(s, q, v));

  auto bad_v = v;
  std::get<NonMemberWitness>(bad_v.certificate).support = make_vector({0, 1});
  CHECK_FALSE(verify_certificate(s, q, bad_v));

  auto zero_v = v;
  std::get<NonMemberWitness>(zero_v.certificate).support = make_vector({0, 0});
  CHECK_FALSE(verify_certificate(s, q, zero_v));

  auto bad_w = v;
  std::get<NonMemberWitness>(bad_w.certificate).character.w = {0, 0};
  CHECK_FALSE(verify_certificate(s, q, bad_w));

  auto flipped = v;
  flipped.member = true;
  CHECK_FALSE(verify_certificate(s, q, flipped));

  auto e = staircase_semigroup();
  auto q2 = make_vector({10, 8});
  auto m = gamma_s_contains(e, q2);
  auto &cert = std::get<MemberCertificate>(m.certificate);
  REQUIRE(cert.kind == MemberCertificate::Kind::MaximalSubsets);
  REQUIRE_FALSE(cert.subsets.empty());
  auto corrupted = m;
  auto &rec = std::get<MemberCertificate>(corrupted.certificate).subsets.front();
  for (auto &c : rec.coefficients)
    if (c != 0) {
      c += 1;
      break;
    }
  CHECK_FALSE(verify_certificate(e, q2, corrupted));

  auto dropped = m;
  std::get<MemberCertificate>(dropped.certificate).subsets.pop_back();
  CHECK_FALSE(verify_certificate(e, q2, dropped));

  CHECK_FALSE(verify_certificate(e, make_vector({10, 9}), m));
}

TEST_CASE("the staircase point is certified by the two lattices") {
  auto e = staircase_semigroup();
  auto q = make_vector({10, 8});
  auto m = gamma_s_contains(e, q);
  auto cert = std::get<MemberCertificate>(m.certificate);
  for (const auto &rec : cert.subsets) {
    std::vector<IntegerVector> pts;
    for (auto i : rec.subset)
      pts.push_back(e.generator(i));
    CHECK_FALSE(NewtonPolyhedron(2, pts).contains(q));
  }
  std::vector<IndexSet> recorded;
  for (const auto &r : cert.subsets)
    recorded.push_back(r.subset);
  std::sort(recorded.begin(), recorded.end());
  // 0-based {p3,p5,p6,p7} and {p4,p5,p6}
  CHECK(recorded == std::vector<IndexSet>{{2, 4, 5, 6}, {3, 4, 5}});
}

TEST_CASE("gamma_m examples") {
  auto s = closure_step_semigroup();
  CHECK(gamma_m(s, make_vector({3, 1})).index() == 1);
  CHECK(gamma_m(s, make_vector({0, 0})).rank() == 0);
  auto axis = gamma_m(s, make_vector({0, 3}));
  CHECK(axis.basis() == points({{0, 3}}));
  CHECK_THROWS_AS(gamma_m(s, make_vector({1, 0})), Error);
}

TEST_CASE("campillo_closure examples") {
  auto s = closure_step_semigroup();
  auto c = campillo_closure(s, semigroup::bounds(s).box);
  CHECK(has(c.members, make_vector({3, 2})));
  CHECK(gamma_s_contains(s, make_vector({3, 2})).member);

  auto f = closure_gap_semigroup();
  auto cf = campillo_closure(f, Box(make_vector({4, 8})));
  CHECK_FALSE(has(cf.members, make_vector({2, 2})));
  CHECK(cf.iterations >= 1);

  auto u = semigroup_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  Box box(make_vector({3, 2, 4}));
  CHECK(campillo_closure(u, box).members == box_points(box));
}

TEST_CASE("diff_campillo examples") {
  auto f = closure_gap_semigroup();
  auto d = diff_campillo(f, Box(make_vector({4, 8})));
  CHECK(d == points({{2, 2}}));
  CHECK(diff_campillo(semigroup_of({{1, 0}, {0, 1}}), Box(make_vector({5, 5}))).empty());
  for (const auto &p : d)
    CHECK_FALSE(semigroup::semigroup_contains(f, p));
}

TEST_CASE("lipschitz_generators examples") {
  auto e = staircase_semigroup();
  auto r = lipschitz_generators(e);
  CHECK(r.box.bound() == make_vector({17, 15}));
  CHECK(has(r.members, make_vector({10, 8})));
  CHECK(r.generators == r.members);

  // On N(p3,p4) minus N(p3) and N(p4), the saturation is exactly the
  // intersection of the two lattices.
  NewtonPolyhedron both(2, points({{4, 10}, {13, 4}}));
  NewtonPolyhedron p3(2, points({{4, 10}})), p4(2, points({{13, 4}}));
  auto l1237 = Lattice::from_generators(2, points({{4, 0}, {0, 4}, {4, 10}, {6, 10}}));
  auto l124 = Lattice::from_generators(2, points({{4, 0}, {0, 4}, {13, 4}}));
  std::vector<IntegerVector> region_members, region_lattice;
  for (const auto &x : box_points(r.box)) {
    if (!both.contains(x) || p3.contains(x) || p4.contains(x))
      continue;
    if (has(r.members, x))
      region_members.push_back(x);
    if (l1237.contains(x) && l124.contains(x))
      region_lattice.push_back(x);
  }
  CHECK(has(region_members, make_vector({10, 8})));
  CHECK(region_members == region_lattice);

  auto f = lipschitz_generators(closure_gap_semigroup());
  CHECK(has(f.members, make_vector({2, 2})));

  auto u = lipschitz_generators(semigroup_of({{1, 0}, {0, 1}}));
  CHECK(u.members == box_points(u.box));
  CHECK(has(u.generators, make_vector({1, 0})));
  CHECK(has(u.generators, make_vector({0, 1})));

  auto bigger = lipschitz_generators(closure_gap_semigroup(), Box(make_vector({6, 9})));
  CHECK(bigger.generator_box.bound() == make_vector({4, 8}));
  CHECK(bigger.generators == f.members);
  for (const auto &g : bigger.generators)
    CHECK(has(bigger.members, g));
}

TEST_CASE("parallel sweeps match the sequential sweep") {
  auto e = staircase_semigroup();
  MembershipEngine engine(e);
  Box box(make_vector({20, 18}));
  CHECK(engine.sweep(box, 1) == engine.sweep(box, 3));
}

TEST_CASE("pruned search agrees with the brute force and certificates verify") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    auto s = random_smooth_instance(rng);
    MembershipEngine engine(s);
    BruteForceOracle oracle(s);
    auto box = semigroup::bounds(s).box;
    for (std::size_t i = 0; i < box.size(); ++i) {
      auto q = box.point(i);
      auto v = engine.contains(q);
      CHECK(v.member == oracle.contains(q));
      CHECK(verify_certificate(s, q, v));
    }
  }
}

TEST_CASE("offending subsets form a down-set") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_smooth_instance(rng);
    for (int k = 0; k < 10; ++k) {
      IntegerVector q(s.dim());
      for (auto &x : q)
        x = rand_in(rng, 0, 10);
      auto family = offending_family(s, q);
      for (auto a : family)
        for (std::size_t i = 0; i < s.size(); ++i)
          if ((a >> i) & 1)
            CHECK(std::binary_search(family.begin(), family.end(), a & ~(std::uint64_t{1} << i)));
    }
  }
}

TEST_CASE("inclusion chain and additivity on random instances") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_smooth_instance(rng);
    auto box = semigroup::bounds(s).box;
    MembershipEngine engine(s);
    auto flags = engine.sweep(box);
    auto gamma = semigroup::reachable(s.generators(), box);
    auto closure = campillo_closure(s, box);
    std::vector<char> in_closure(box.size(), 0);
    for (const auto &p : closure.members)
      in_closure[box.index_of(p)] = 1;
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (gamma[i])
        CHECK(in_closure[i]);
      if (in_closure[i])
        CHECK(flags[i]);
    }
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (!flags[i])
        continue;
      auto x = box.coords(i);
      for (std::size_t j = i; j < box.size(); ++j) {
        if (!flags[j])
          continue;
        auto y = box.coords(j);
        std::vector<long> sum(x.size());
        for (std::size_t k = 0; k < x.size(); ++k)
          sum[k] = x[k] + y[k];
        if (box.contains(sum))
          CHECK(flags[box.index_of(sum)]);
      }
    }
  }
}

TEST_CASE("closure is consistent across nested boxes") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 15; ++trial) {
    auto s = random_smooth_instance(rng);
    auto small = semigroup::bounds(s).box;
    IntegerVector big_bound = small.bound();
    for (auto &x : big_bound)
      x += 3;
    Box big(big_bound);
    auto a = campillo_closure(s, small).members;
    auto b = campillo_closure(s, big).members;
    std::vector<IntegerVector> restricted;
    for (const auto &p : b)
      if (small.contains(p))
        restricted.push_back(p);
    CHECK(a == restricted);
  }
}

TEST_CASE("Campillo-type combinations land in the saturation") {
  std::mt19937_64 rng(45);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_smooth_instance(rng);
    MembershipEngine engine(s);
    auto box = semigroup::bounds(s).box;
    auto members = semigroup::enumerate_box_members(s, box);
    for (int k = 0; k < 20; ++k) {
      const auto &m = members[rand_in(rng, 0, static_cast<long>(members.size()) - 1)];
      auto below = semigroup::below_set(s, m);
      IntegerVector sum_k(s.dim(), 0), sum_l(s.dim(), 0);
      for (int j = 0; j < 2; ++j) {
        const auto &kk = below[rand_in(rng, 0, static_cast<long>(below.size()) - 1)];
        const auto &ll = below[rand_in(rng, 0, static_cast<long>(below.size()) - 1)];
        for (std::size_t c = 0; c < s.dim(); ++c) {
          sum_k[c] += kk[c];
          sum_l[c] += ll[c];
        }
      }
      IntegerVector target(s.dim());
      bool nonneg = true;
      for (std::size_t c = 0; c < s.dim(); ++c) {
        if (sum_k[c] < sum_l[c])
          nonneg = false;
        target[c] = m[c] + sum_k[c] - sum_l[c];
      }
      if (!nonneg)
        continue;
      CHECK(engine.is_member(target));
      ++checked;
    }
  }
  CHECK(checked > 50);
}

} // TEST_SUITE
