#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "qspace/projections.hpp"

using namespace qspace;

namespace {

const FieldPtr& gf2() {
  static const FieldPtr f = Field::make(2, 1);
  return f;
}

BigInt delta_formula(unsigned n, unsigned rho, unsigned t, unsigned i, std::uint64_t q) {
  if (t < i || t - i > n - rho) return 0;
  return gaussian_binomial(n - rho, t - i, q) * ipow(BigInt(q), i * (n - rho - t + i));
}

BigInt gamma_formula(unsigned k, unsigned j, unsigned t, unsigned i, std::uint64_t q) {
  if (t < i || k < j || t - i > k - j) return 0;
  return gaussian_binomial(k - j, t - i, q) * ipow(BigInt(q), i * (k - j - t + i));
}

// A random k-subspace of F^n whose projection onto the first rho coordinates is y.
Subspace random_lift(const Field& f, const Subspace& y, unsigned n, unsigned k, std::mt19937& rng) {
  const unsigned rho = y.n();
  for (;;) {
    Matrix m(k, n);
    for (unsigned r = 0; r < k; ++r)
      for (unsigned c = rho; c < n; ++c) m.at(r, c) = rng() % f.q();
    for (unsigned r = 0; r < y.k(); ++r)
      for (unsigned c = 0; c < rho; ++c) m.at(r, c) = y.at(r, c);
    // Mix rows so the representative is not in a fixed shape.
    Matrix g(k, k);
    do {
      for (auto& d : g.data) d = rng() % f.q();
    } while (rank(f, g) < k);
    const Subspace s = Subspace::row_space(f, mat_mul(f, g, m));
    if (s.k() == k) return s;
  }
}

}  // namespace

TEST(Projection, DeltaMatchesClosedForm) {
  const unsigned n = 6, t = 2;
  for (unsigned rho = 1; rho <= 4; ++rho)
    for (const auto& x : enumerate_projective(*gf2(), rho))
      if (x.k() <= t) EXPECT_EQ(delta_count(*gf2(), x, n, t), delta_formula(n, rho, t, x.k(), 2)) << "rho=" << rho;
}

TEST(Projection, DeltaOverGF3) {
  const FieldPtr f = Field::make(3, 1);
  for (const auto& x : enumerate_projective(*f, 2)) EXPECT_EQ(delta_count(*f, x, 4, 2), delta_formula(4, 2, 2, x.k(), 3));
}

TEST(Projection, GammaMatchesClosedFormAndIsRepresentativeIndependent) {
  std::mt19937 rng(12345);
  const unsigned n = 7, k = 3, t = 2;
  for (unsigned rho = 2; rho <= 4; ++rho) {
    const auto ys = enumerate_projective(*gf2(), rho);
    for (const auto& y : ys) {
      if (y.k() > k || k - y.k() > n - rho) {
        if (y.k() <= k) EXPECT_FALSE(canonical_lift(*gf2(), y, n, k).has_value());
        continue;
      }
      const auto lifted = canonical_lift(*gf2(), y, n, k);
      ASSERT_TRUE(lifted);
      EXPECT_EQ(project(*gf2(), *lifted, rho), y);
      for (const auto& x : ys) {
        if (x.k() > t || !is_subspace_of(*gf2(), x, y)) continue;
        const BigInt expect = gamma_formula(k, y.k(), t, x.k(), 2);
        EXPECT_EQ(gamma_count(*gf2(), x, y, n, k, t), expect);
        for (int rep = 0; rep < 3; ++rep) {
          const Subspace kr = random_lift(*gf2(), y, n, k, rng);
          ASSERT_EQ(project(*gf2(), kr, rho), y);
          EXPECT_EQ(gamma_count_in(*gf2(), kr, x, t), expect);
        }
      }
    }
  }
}

TEST(System, FanoParametersAtRhoTwo) {
  const EquationSystem sys = build_system(gf2(), 7, 3, 2, 2);
  ASSERT_EQ(sys.variables.size(), 5u);
  ASSERT_EQ(sys.equations.size(), 5u);
  std::vector<BigInt> deltas;
  std::vector<BigInt> gammas;
  for (const auto& e : sys.equations) {
    deltas.push_back(e.delta);
    for (const auto& [v, c] : e.terms) gammas.push_back(c);
  }
  EXPECT_EQ(deltas, (std::vector<BigInt>{155, 496, 496, 496, 1024}));
  EXPECT_EQ(gammas, (std::vector<BigInt>{7, 1, 1, 1, 6, 1, 6, 1, 6, 1, 4}));
  const SolveOutcome o = solve(sys);
  EXPECT_EQ(o.tag, SolveTag::Unique);
  ASSERT_EQ(o.solutions.size(), 1u);
  EXPECT_EQ(o.solutions[0], (std::vector<BigInt>{5, 40, 40, 40, 256}));
  EXPECT_TRUE(sys.satisfied_by(o.solutions[0]));
}

TEST(System, SolverAgreesWithEnumerationOnSmallSystems) {
  for (auto [n, k, t, rho] : {std::tuple{7u, 3u, 2u, 1u}, std::tuple{6u, 3u, 1u, 2u}, std::tuple{5u, 2u, 1u, 2u}}) {
    const EquationSystem sys = build_system(gf2(), n, k, t, rho);
    const std::size_t m = sys.variables.size();
    ASSERT_LE(m, 5u);
    std::uint64_t bound = 0;
    for (const auto& e : sys.equations) bound = std::max(bound, static_cast<std::uint64_t>(e.delta));
    // Enumerate every vector in [0, bound]^m that the equations allow, variable by variable.
    std::uint64_t found = 0;
    std::vector<BigInt> a(m, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == m) {
        found += sys.satisfied_by(a);
        return;
      }
      for (std::uint64_t v = 0; v <= bound; ++v) {
        a[i] = v;
        bool over = false;
        for (const auto& e : sys.equations) {
          BigInt s = 0;
          for (const auto& [var, c] : e.terms)
            if (var <= i) s += c * a[var];
          over = over || s > e.delta;
        }
        if (over) break;
        rec(i + 1);
      }
      a[i] = 0;
    };
    rec(0);
    const SolveOutcome o = solve(sys);
    EXPECT_EQ(o.count, found) << n << k << t << rho;
    EXPECT_FALSE(o.count_capped);
  }
}

TEST(System, RhoFourWithPin) {
  const EquationSystem sys = build_system(gf2(), 7, 3, 2, 4);
  EXPECT_EQ(sys.variables.size(), 66u);
  EXPECT_EQ(sys.equations.size(), 51u);
  SolveOptions opt;
  opt.pins[0] = 1;
  const SolveOutcome o = solve(sys, opt);
  EXPECT_EQ(o.tag, SolveTag::Unique);
  ASSERT_EQ(o.solutions.size(), 1u);
  for (std::size_t i = 0; i < sys.variables.size(); ++i) {
    const unsigned d = sys.variables[i].k();
    if (d == 2) EXPECT_EQ(o.solutions[0][i], 4);
    if (d == 3) EXPECT_EQ(o.solutions[0][i], 16);
  }
}

TEST(System, BadPins) {
  const EquationSystem sys = build_system(gf2(), 7, 3, 2, 2);
  for (auto [idx, val] : {std::pair{9, 1}, std::pair{0, -1}}) {
    SolveOptions opt;
    opt.pins[idx] = val;
    try {
      solve(sys, opt);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InconsistentPins);
    }
  }
  SolveOptions opt;
  opt.pins[4] = 255;
  EXPECT_EQ(solve(sys, opt).tag, SolveTag::Infeasible);
}

TEST(Feasibility, Report) {
  const FeasibilityReport bad = feasibility_report(gf2(), 8, 3, 2, 1, 2);
  EXPECT_FALSE(bad.divisibility_ok);
  EXPECT_EQ(bad.verdict, "excluded by divisibility");
  const FeasibilityReport fano = feasibility_report(gf2(), 7, 3, 2, 1, 5);
  EXPECT_TRUE(fano.divisibility_ok);
  ASSERT_EQ(fano.per_rho.size(), 5u);
  EXPECT_FALSE(fano.per_rho[4].outcome.has_value());
  EXPECT_EQ(fano.verdict, "not excluded");
}
