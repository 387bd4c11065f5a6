#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "qspace/bounds.hpp"
#include "qspace/code_builder.hpp"
#include "qspace/design_verify.hpp"

using namespace qspace;

namespace {

const FieldPtr& gf2() {
  static const FieldPtr f = Field::make(2, 1);
  return f;
}

const std::vector<OrbitGenerator> kCyclicGens = {
    {0, 21, 42},
    {0, 1, 4, 6, 16, 24, 33},
    {0, 1, 6, 8, 18, 21, 22, 27, 29, 39, 42, 43, 48, 50, 60},
};

}  // namespace

TEST(Skeleton, Distances) {
  EXPECT_EQ(hamming_distance("111000", "100110"), 4u);
  EXPECT_EQ(asymmetric_distance("1100", "0011"), 2u);
  EXPECT_EQ(asymmetric_distance("1110", "0001"), 3u);
  EXPECT_EQ(asymmetric_distance("1000", "1110"), 2u);
}

TEST(Skeleton, DefaultMeetsItsDistance) {
  for (Metric m : {Metric::Grassmannian, Metric::Subspace, Metric::Injection})
    for (unsigned delta = 1; delta <= 3; ++delta) {
      const SkeletonCode s = skeleton_default(7, 3, delta, m);
      ASSERT_FALSE(s.words.empty());
      EXPECT_EQ(s.words.front(), "1110000");
      EXPECT_TRUE(s.verify());
      if (m == Metric::Grassmannian)
        for (const auto& w : s.words) EXPECT_EQ(std::count(w.begin(), w.end(), '1'), 3);
    }
}

TEST(Spread, SpreadsArePerfect) {
  for (auto [n, k] : {std::pair{4u, 2u}, std::pair{6u, 2u}, std::pair{6u, 3u}, std::pair{8u, 4u}}) {
    const SubspaceCode c = spread(gf2(), n, k);
    EXPECT_EQ(BigInt(c.size()), spread_exact(n, k, 2));
    EXPECT_TRUE(verify_spread(c));
    EXPECT_EQ(code_min_distance(c, Metric::Grassmannian), k);
  }
  const SubspaceCode c3 = spread(Field::make(3, 1), 4, 2);
  EXPECT_EQ(c3.size(), 10u);
  EXPECT_TRUE(verify_spread(c3));
}

TEST(Spread, NotDivisibleThrows) {
  try {
    spread(gf2(), 5, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotDivisible);
  }
}

TEST(PartialSpread, SizesWithinBounds) {
  struct P {
    unsigned n, k;
    std::size_t expected;
  };
  for (auto [n, k, expected] : {P{5, 2, 9}, P{7, 2, 41}, P{7, 3, 17}, P{5, 3, 1}}) {
    const SubspaceCode c = partial_spread(gf2(), n, k);
    EXPECT_EQ(c.size(), expected) << n << "," << k;
    EXPECT_TRUE(verify_partial_spread(c));
  }
  const SubspaceCode c = partial_spread(gf2(), 8, 3);
  EXPECT_TRUE(verify_partial_spread(c));
  EXPECT_GE(BigInt(c.size()), partial_spread_lower(8, 3, 2));
  EXPECT_LE(BigInt(c.size()), partial_3spread_binary_exact(8));
}

TEST(Cyclic, OrbitCodeOfSize107) {
  const Extension ext(Field::parse("GF(2^6)/1,1,0,0,0,0,1"), gf2());
  const SubspaceCode bare = cyclic_orbit_code(ext, kCyclicGens, false, false);
  EXPECT_EQ(bare.size(), 105u);
  const SubspaceCode c = cyclic_orbit_code(ext, kCyclicGens, true, true);
  EXPECT_EQ(c.size(), 107u);
  EXPECT_EQ(c.metric(), Metric::Injection);
  EXPECT_EQ(code_min_distance(c, Metric::Injection), 2u);
  // Closed under the shift map.
  for (const auto& x : bare.words()) EXPECT_TRUE(bare.has(shift_map(ext, x, 1)));
}

TEST(Cyclic, GeneratorMustBeClosed) {
  const Extension ext(Field::parse("GF(2^6)/1,1,0,0,0,0,1"), gf2());
  EXPECT_EQ(generator_subspace(ext, {0, 21, 42}).k(), 2u);
  try {
    generator_subspace(ext, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotASubspace);
  }
}

TEST(Cyclic, FrobeniusAndShiftAreBijectionsPreservingDistance) {
  const Extension ext = Extension::over(gf2(), 5);
  const auto g = enumerate_grassmannian(*gf2(), 5, 2);
  std::set<Subspace> img_f, img_s;
  for (const auto& x : g) {
    const Subspace a = frobenius_map(ext, x, 1), b = shift_map(ext, x, 3);
    EXPECT_EQ(a.k(), 2u);
    img_f.insert(a);
    img_s.insert(b);
  }
  EXPECT_EQ(img_f.size(), g.size());
  EXPECT_EQ(img_s.size(), g.size());
  for (std::size_t i = 0; i < g.size(); i += 13)
    for (std::size_t j = 0; j < g.size(); j += 7)
      EXPECT_EQ(d_S(*gf2(), frobenius_map(ext, g[i], 2), frobenius_map(ext, g[j], 2)), d_S(*gf2(), g[i], g[j]));
  // Classes of the combined relation partition the Grassmannian.
  std::set<Subspace> covered;
  std::size_t total = 0;
  for (const auto& x : g) {
    if (covered.count(x)) continue;
    const auto cls = equivalence_class(ext, x);
    total += cls.size();
    for (const auto& y : cls) EXPECT_TRUE(covered.insert(y).second);
  }
  EXPECT_EQ(total, g.size());
}

TEST(Multilevel, TwoWordSkeleton) {
  SkeletonCode s;
  s.n = 6;
  s.words = {"111000", "000111"};
  s.kind = SkeletonDistance::Hamming;
  s.distance = 6;
  s.constant_weight = 3;
  const MultilevelResult r3 = multilevel(gf2(), s, 3, Metric::Grassmannian);
  EXPECT_EQ(r3.code.size(), 9u);
  EXPECT_TRUE(verify_steiner(r3.code, 1));
  const MultilevelResult r2 = multilevel(gf2(), s, 2, Metric::Grassmannian);
  EXPECT_EQ(r2.code.size(), 65u);
  ASSERT_TRUE(r2.verified_distance);
  EXPECT_EQ(*r2.verified_distance, 2u);
  std::uint64_t sum = 0;
  for (const auto& p : r2.parts) {
    EXPECT_EQ(p.size, oracle::upow(2, p.dim));
    EXPECT_EQ(p.diagram, ferrers_of(p.word));
    sum += p.size;
  }
  EXPECT_EQ(sum, r2.code.size());
}

TEST(Multilevel, GreedySkeletonRespectsBounds) {
  for (auto [n, k, delta] : {std::tuple{6u, 3u, 2u}, std::tuple{7u, 3u, 2u}, std::tuple{7u, 3u, 3u}}) {
    const SkeletonCode s = skeleton_default(n, k, delta, Metric::Grassmannian);
    const MultilevelResult r = multilevel(gf2(), s, delta, Metric::Grassmannian);
    ASSERT_TRUE(r.verified_distance);
    EXPECT_GE(*r.verified_distance, delta);
    const Bracket b = best_bounds(n, delta, k, 2);
    EXPECT_LE(BigInt(r.code.size()), b.upper.value);
  }
}

TEST(Multilevel, SubspaceAndInjectionTargets) {
  const SkeletonCode s = skeleton_default(5, 2, 2, Metric::Subspace);
  const MultilevelResult r = multilevel(gf2(), s, 2, Metric::Subspace);
  ASSERT_TRUE(r.verified_distance);
  EXPECT_GE(*r.verified_distance, r.target);
  const SkeletonCode si = skeleton_default(5, 2, 2, Metric::Injection);
  const MultilevelResult ri = multilevel(gf2(), si, 2, Metric::Injection);
  ASSERT_TRUE(ri.verified_distance);
  EXPECT_GE(*ri.verified_distance, 2u);
}

TEST(Multilevel, RejectsMismatchedSkeleton) {
  SkeletonCode s;
  s.n = 4;
  s.words = {"1100", "1010"};
  s.distance = 2;
  try {
    multilevel(gf2(), s, 2, Metric::Grassmannian);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SkeletonDistanceTooSmall);
  }
}

TEST(Puncture, EveryHyperplaneLosesAtMostOne) {
  const SubspaceCode c = lift_code(gabidulin(gf2(), 2, 2, 2));  // (4, 4, 2) in d_S
  ASSERT_EQ(code_min_distance(c, Metric::Subspace), 4u);
  int checked = 0;
  for (const auto& q : enumerate_grassmannian(*gf2(), 4, 3)) {
    for (std::uint32_t m = 1; m < 16; ++m) {
      Vec v(4);
      for (unsigned i = 0; i < 4; ++i) v[i] = (m >> i) & 1;
      if (contains(*gf2(), q, v)) continue;
      const SubspaceCode p = puncture_code(c, q, v);
      if (p.size() >= 2) EXPECT_GE(code_min_distance(p, Metric::Subspace), 3u);
      ++checked;
      break;
    }
  }
  EXPECT_EQ(checked, 15);
}

TEST(Puncture, ChooseQOnLiftedMrd) {
  const SubspaceCode c = lift_code(gabidulin(gf2(), 3, 3, 2));
  const PunctureChoice ch = choose_Q(c);
  EXPECT_EQ(ch.size, 16u);
  const SubspaceCode p = puncture_code(c, ch.hyperplane, ch.v);
  EXPECT_EQ(p.size(), 16u);
  EXPECT_GE(code_min_distance(p, Metric::Subspace), 3u);
  const SubspaceCode a = augment_greedy(p, Metric::Subspace, 3, 100);
  EXPECT_GE(code_min_distance(a, Metric::Subspace), 3u);
  EXPECT_LE(BigInt(a.size()), subspace_metric_bounds(5, 3, 2)->upper.value);
}

TEST(Puncture, ErrorCases) {
  const SubspaceCode c = spread(gf2(), 4, 2);
  const Subspace q = enumerate_grassmannian(*gf2(), 4, 3).front();
  const Vec inside = q.row(0);
  try {
    puncture_code(c, q, inside);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::VInQ);
  }
  try {
    puncture_subspace(*gf2(), Subspace::full(4), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnitVectorInside);
  }
}

TEST(Augment, TrivialWords) {
  const SubspaceCode c = spread(gf2(), 4, 2);
  const SubspaceCode a = augment_trivial(c, Metric::Subspace, 2);
  EXPECT_EQ(a.size(), 7u);
  EXPECT_EQ(code_min_distance(a, Metric::Subspace), 2u);
  EXPECT_EQ(augment_trivial(c, Metric::Subspace, 4).size(), 5u);
}
