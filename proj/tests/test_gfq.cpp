#include <gtest/gtest.h>

#include <set>

#include "qspace/gfq.hpp"

using namespace qspace;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return Errc::ParseError;
}

// Schoolbook polynomial product mod the field modulus, digits base p.
Digit slow_mul(const Field& f, Digit a, Digit b) {
  const unsigned p = f.p(), m = f.m();
  std::vector<unsigned> x(m), y(m), prod(2 * m, 0);
  for (unsigned i = 0; i < m; ++i, a /= p, b /= p) {
    x[i] = a % p;
    y[i] = b % p;
  }
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  const auto& mod = f.modulus();
  for (unsigned d = 2 * m - 1; d >= m; --d) {
    const unsigned c = prod[d];
    if (!c) continue;
    for (unsigned i = 0; i <= m; ++i) prod[d - m + i] = (prod[d - m + i] + p * p - c * mod[i] % p) % p;
  }
  Digit r = 0;
  for (unsigned i = m; i-- > 0;) r = r * p + prod[i];
  return r;
}

}  // namespace

class FieldAxioms : public ::testing::TestWithParam<std::pair<unsigned, unsigned>> {};

TEST_P(FieldAxioms, TablesMatchPolynomialArithmetic) {
  const auto [p, m] = GetParam();
  const FieldPtr f = Field::make(p, m);
  const Digit q = f->q();
  for (Digit a = 0; a < q; ++a) {
    EXPECT_EQ(f->add(a, f->neg(a)), 0u);
    for (Digit b = 0; b < q; ++b) {
      EXPECT_EQ(f->mul(a, b), slow_mul(*f, a, b)) << a << "*" << b;
      EXPECT_EQ(f->mul(a, b), f->mul(b, a));
      EXPECT_EQ(f->sub(f->add(a, b), b), a);
    }
    if (a) EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
  }
  std::set<Digit> powers;
  for (std::uint32_t i = 0; i + 1 < q; ++i) powers.insert(f->primitive_power(i));
  EXPECT_EQ(powers.size(), q - 1u) << "alpha is not primitive";
  for (Digit a = 1; a < q; ++a) EXPECT_EQ(f->primitive_power(f->dlog(a)), a);
}

INSTANTIATE_TEST_SUITE_P(Small, FieldAxioms,
                         ::testing::Values(std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{5u, 1u}, std::pair{2u, 2u},
                                           std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{2u, 4u}, std::pair{2u, 6u},
                                           std::pair{5u, 2u}));

TEST(Field, DescriptorRoundTrip) {
  const FieldPtr f = Field::parse("GF(2^6)/1,1,0,0,0,0,1");
  EXPECT_EQ(f->q(), 64u);
  EXPECT_EQ(f->descriptor(), "GF(2^6)/1,1,0,0,0,0,1");
  EXPECT_TRUE(Field::parse(f->descriptor())->same_as(*f));
  EXPECT_TRUE(Field::parse("GF(2^6)")->same_as(*f));
  EXPECT_EQ(Field::parse("GF(7)")->q(), 7u);
}

TEST(Field, RejectsBadParameters) {
  EXPECT_EQ(code_of([] { Field::make(6, 1); }), Errc::NonPrime);
  EXPECT_EQ(code_of([] { Field::make(2, 2, std::vector<unsigned>{1, 0, 1}); }), Errc::NotIrreducible);
  // x^4 + x^3 + x^2 + x + 1 is irreducible of order 5
  EXPECT_EQ(code_of([] { Field::make(2, 4, std::vector<unsigned>{1, 1, 1, 1, 1}); }), Errc::NotPrimitive);
  EXPECT_EQ(code_of([] { Field::parse("GF(2^x)"); }), Errc::ParseError);
  const FieldPtr f = Field::make(2, 3);
  EXPECT_EQ(code_of([&] { f->inv(0); }), Errc::DivisionByZero);
  EXPECT_EQ(code_of([&] { f->dlog(0); }), Errc::LogOfZero);
}

TEST(FieldElement, MixingFieldsThrows) {
  const FieldElement a(Field::make(2, 3), 3), b(Field::make(2, 4), 3);
  EXPECT_EQ(code_of([&] { (void)(a + b); }), Errc::FieldMismatch);
  EXPECT_EQ((a * a.inv()).value(), 1u);
}

TEST(Extension, CoordinatesAreLinearAndBijective) {
  for (auto [p, m, n] : {std::tuple{2u, 1u, 6u}, std::tuple{2u, 2u, 3u}, std::tuple{3u, 1u, 3u}}) {
    const FieldPtr base = Field::make(p, m);
    const Extension ext = Extension::over(base, n);
    const Field& big = *ext.big();
    std::set<std::vector<Digit>> seen;
    for (Digit e = 0; e < big.q(); ++e) {
      const auto v = ext.elem_to_vec(e);
      ASSERT_EQ(v.size(), n);
      EXPECT_EQ(ext.vec_to_elem(v), e);
      seen.insert(v);
      for (Digit g = 0; g < big.q(); g += 3) {
        const auto w = ext.elem_to_vec(g), s = ext.elem_to_vec(big.add(e, g));
        for (unsigned i = 0; i < n; ++i) EXPECT_EQ(s[i], base->add(v[i], w[i]));
      }
      for (Digit c = 0; c < base->q(); ++c) {
        const auto s = ext.elem_to_vec(big.mul(ext.embed(c), e));
        for (unsigned i = 0; i < n; ++i) EXPECT_EQ(s[i], base->mul(c, v[i]));
      }
    }
    EXPECT_EQ(seen.size(), big.q());
  }
}

TEST(Extension, BasisIsPowersOfAlpha) {
  const Extension ext(Field::parse("GF(2^6)/1,1,0,0,0,0,1"), Field::make(2, 1));
  for (unsigned i = 0; i < 6; ++i) {
    const auto v = ext.elem_to_vec(ext.big()->primitive_power(i));
    for (unsigned j = 0; j < 6; ++j) EXPECT_EQ(v[j], i == j ? 1u : 0u);
  }
  // alpha^6 = 1 + alpha
  EXPECT_EQ(ext.elem_to_vec(ext.big()->primitive_power(6)), (std::vector<Digit>{1, 1, 0, 0, 0, 0}));
}
