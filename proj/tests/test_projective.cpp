#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "qspace/projective.hpp"

using namespace qspace;

TEST(Gaussian, MatchesProductFormula) {
  for (std::uint64_t q : {2, 3, 4, 5, 7})
    for (unsigned n = 0; n <= 9; ++n)
      for (unsigned k = 0; k <= n + 1; ++k)
        EXPECT_EQ(gaussian_binomial(n, k, q), BigInt(static_cast<std::uint64_t>(oracle::gauss(n, k, q))))
            << n << " " << k << " " << q;
  EXPECT_EQ(gaussian_binomial(6, 3, 2), 1395);
  EXPECT_EQ(projective_size(6, 2), 2825);
}

TEST(Enumeration, BinaryMatchesClosureOracle) {
  const FieldPtr f = Field::make(2, 1);
  for (unsigned n = 1; n <= 5; ++n) {
    std::set<oracle::VecSet> expected;
    for (auto& s : oracle::all_binary_subspaces(n)) expected.insert(s);
    std::set<oracle::VecSet> got;
    Subspace prev;
    bool first = true;
    for (const auto& x : enumerate_projective(*f, n)) {
      got.insert(oracle::vecset(x));
      if (!first) EXPECT_LT(prev, x) << "not strictly increasing";
      prev = x;
      first = false;
    }
    EXPECT_EQ(got, expected) << "n=" << n;
  }
}

TEST(Enumeration, CountsMatchGaussian) {
  for (auto [p, m, nmax] : {std::tuple{2u, 1u, 7u}, std::tuple{3u, 1u, 5u}, std::tuple{2u, 2u, 4u}}) {
    const FieldPtr f = Field::make(p, m);
    for (unsigned n = 0; n <= nmax; ++n)
      for (unsigned k = 0; k <= n; ++k) {
        std::uint64_t count = 0;
        for_each_grassmannian(*f, n, k, [&](const Subspace& x) {
          EXPECT_EQ(x.k(), k);
          ++count;
        });
        EXPECT_EQ(BigInt(count), gaussian_binomial(n, k, f->q()));
      }
  }
}

TEST(Enumeration, CapIsEnforcedUpFront) {
  const FieldPtr f = Field::make(2, 1);
  try {
    enumerate_grassmannian(*f, 8, 4, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CapExceeded);
  }
}

TEST(Subspace, RowSpaceIsCanonical) {
  const FieldPtr f = Field::make(3, 1);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix m(3, 5);
    for (auto& d : m.data) d = rng() % 3;
    const Subspace x = Subspace::row_space(*f, m);
    // Multiply by a random invertible matrix: same space, same canonical form.
    Matrix g(3, 3);
    do {
      for (auto& d : g.data) d = rng() % 3;
    } while (rank(*f, g) < 3);
    EXPECT_EQ(Subspace::row_space(*f, mat_mul(*f, g, m)), x);
    EXPECT_EQ(x.k(), rank(*f, m));
  }
}

TEST(Distance, MetricsAgreeWithOracleOnG25) {
  const FieldPtr f = Field::make(2, 1);
  const auto g = enumerate_grassmannian(*f, 5, 2);
  std::vector<oracle::VecSet> sets;
  for (const auto& x : g) sets.push_back(oracle::vecset(x));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      const unsigned s = d_S(*f, g[i], g[j]);
      ASSERT_EQ(s, oracle::d_S(sets[i], sets[j]));
      ASSERT_EQ(s, 2 * d_G(*f, g[i], g[j]));
      ASSERT_EQ(s, 2 * d_I(*f, g[i], g[j]));
    }
}

TEST(Distance, MixedDimensions) {
  const FieldPtr f = Field::make(2, 1);
  const auto all = enumerate_projective(*f, 4);
  for (const auto& x : all)
    for (const auto& y : all) {
      const auto a = oracle::vecset(x), b = oracle::vecset(y);
      const unsigned i = oracle::dim_of(oracle::meet(a, b));
      EXPECT_EQ(d_S(*f, x, y), oracle::d_S(a, b));
      EXPECT_EQ(d_I(*f, x, y), std::max(x.k(), y.k()) - i);
      EXPECT_EQ(intersection_dim(*f, x, y), i);
      EXPECT_EQ(oracle::vecset(intersect(*f, x, y)), oracle::meet(a, b));
    }
  try {
    d_G(*f, all[1], all.back());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnequalDimensions);
  }
}

TEST(Dual, InvolutionAndOracle) {
  for (auto [p, n] : {std::pair{2u, 5u}, std::pair{3u, 4u}}) {
    const FieldPtr f = Field::make(p, 1);
    for (const auto& x : enumerate_projective(*f, n)) {
      const Subspace y = dual(*f, x);
      EXPECT_EQ(y.k(), n - x.k());
      EXPECT_EQ(dual(*f, y), x);
      for (unsigned r = 0; r < x.k(); ++r)
        for (unsigned s = 0; s < y.k(); ++s) {
          Digit dot = 0;
          for (unsigned c = 0; c < n; ++c) dot = f->add(dot, f->mul(x.at(r, c), y.at(s, c)));
          EXPECT_EQ(dot, 0u);
        }
    }
  }
}

TEST(Dual, CodeDualPreservesDistances) {
  const FieldPtr f = Field::make(2, 1);
  SubspaceCode c(f, 5, Metric::Subspace);
  const auto all = enumerate_projective(*f, 5);
  for (std::size_t i = 0; i < all.size(); i += 17) c.insert(all[i]);
  const SubspaceCode d = code_dual(c);
  EXPECT_EQ(d.size(), c.size());
  EXPECT_EQ(code_min_distance(d, Metric::Subspace), code_min_distance(c, Metric::Subspace));
  EXPECT_EQ(code_min_distance(d, Metric::Injection), code_min_distance(c, Metric::Injection));
}

TEST(IdentifyingVector, MarksPivots) {
  const FieldPtr f = Field::make(2, 1);
  const Subspace x = Subspace::row_space(*f, Matrix::from_rows(6, {{0, 1, 1, 0, 0, 1}, {0, 0, 0, 1, 0, 1}}));
  EXPECT_EQ(identifying_vector(x), "010100");
  EXPECT_EQ(x.pivots(), (std::vector<unsigned>{1, 3}));
}
