#include "qspace/gfq.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <sstream>

namespace qspace {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::NoDefaultModulus: return "NoDefaultModulus";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::LogOfZero: return "LogOfZero";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::UnequalDimensions: return "UnequalDimensions";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::TooFewWords: return "TooFewWords";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadDelta: return "BadDelta";
    case Errc::ZeroWeight: return "ZeroWeight";
    case Errc::SkeletonDistanceTooSmall: return "SkeletonDistanceTooSmall";
    case Errc::MetricMismatch: return "MetricMismatch";
    case Errc::UnitVectorInside: return "UnitVectorInside";
    case Errc::BadHyperplane: return "BadHyperplane";
    case Errc::VInQ: return "VInQ";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::NotASubspace: return "NotASubspace";
    case Errc::BadParams: return "BadParams";
    case Errc::DimTooSmall: return "DimTooSmall";
    case Errc::NotConstantDimension: return "NotConstantDimension";
    case Errc::InconsistentPins: return "InconsistentPins";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Smallest primitive monic polynomial of each degree, by integer encoding of
// the coefficient vector (constant term least significant).
struct DefaultModulus {
  unsigned p;
  unsigned m;
  std::vector<unsigned> coeffs;
};

const std::vector<DefaultModulus>& default_table() {
  static const std::vector<DefaultModulus> table = {
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 0, 0, 0, 1}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
      {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
      {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 12, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}},
      {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 14, {1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 16, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {3, 2, {2, 1, 1}},
      {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 1, 0, 0, 1}},
      {3, 5, {1, 2, 0, 0, 0, 1}},
      {3, 6, {2, 1, 0, 0, 0, 0, 1}},
      {5, 2, {2, 1, 1}},
      {5, 3, {2, 3, 0, 1}},
      {5, 4, {2, 2, 1, 0, 1}},
      {5, 5, {2, 4, 0, 0, 0, 1}},
      {5, 6, {2, 1, 0, 0, 0, 0, 1}},
      {7, 2, {3, 1, 1}},
      {7, 3, {2, 3, 0, 1}},
      {7, 4, {5, 3, 1, 0, 1}},
      {7, 5, {4, 1, 0, 0, 0, 1}},
      {7, 6, {5, 1, 3, 0, 0, 0, 1}},
  };
  return table;
}

using Poly = std::vector<unsigned>;  // coefficients mod p, constant first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const unsigned c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m <= 1) return true;
  for (unsigned d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly g(d + 1);
      std::uint64_t t = v;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::uint32_t smallest_primitive_root(unsigned p) {
  if (p == 2) return 1;
  std::vector<unsigned> factors;
  unsigned n = p - 1;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  auto powmod = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (unsigned r : factors)
      if (powmod(g, (p - 1) / r) == 1) ok = false;
    if (ok) return g;
  }
  return 1;
}

}  // namespace

std::optional<std::vector<unsigned>> Field::default_modulus(unsigned p, unsigned m) {
  if (m == 1) return std::vector<unsigned>{};
  for (const auto& e : default_table())
    if (e.p == p && e.m == m) return e.coeffs;
  return std::nullopt;
}

FieldPtr Field::make(unsigned p, unsigned m, std::optional<std::vector<unsigned>> modulus) {
  if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(Errc::BadParams, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(Errc::BadParams, "field order exceeds 2^20");
  }
  std::vector<unsigned> f;
  if (modulus && !(m == 1 && modulus->empty())) {
    f = *modulus;
    if (m == 1) throw Error(Errc::BadParams, "prime fields take no modulus");
    if (f.size() != m + 1 || f.back() != 1)
      throw Error(Errc::BadParams, "modulus must be monic of degree " + std::to_string(m));
    for (unsigned c : f)
      if (c >= p) throw Error(Errc::BadParams, "modulus coefficient out of range");
    if (!is_irreducible(f, p)) throw Error(Errc::NotIrreducible, "modulus is reducible");
  } else if (m > 1) {
    auto d = default_modulus(p, m);
    if (!d)
      throw Error(Errc::NoDefaultModulus,
                  "no built-in modulus for GF(" + std::to_string(p) + "^" + std::to_string(m) + ")");
    f = std::move(*d);
  }
  return FieldPtr(new Field(p, m, std::move(f)));
}

Field::Field(unsigned p, unsigned m, std::vector<unsigned> modulus)
    : p_(p), m_(m), q_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < m_; ++i) q_ *= p_;
  const std::uint32_t order = q_ - 1;
  exp_.assign(2 * static_cast<std::size_t>(order), 0);
  log_.assign(q_, 0);
  std::vector<bool> seen(q_, false);

  if (m_ == 1) {
    const std::uint32_t g = smallest_primitive_root(p_);
    std::uint64_t cur = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
      exp_[i] = static_cast<Digit>(cur);
      cur = cur * g % p_;
    }
  } else {
    std::vector<unsigned> digits(m_, 0);
    digits[0] = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
      Digit v = 0;
      for (unsigned j = m_; j-- > 0;) v = v * p_ + digits[j];
      if (i > 0 && v == 1)
        throw Error(Errc::NotPrimitive,
                    "x has multiplicative order " + std::to_string(i) + " < " + std::to_string(order));
      exp_[i] = v;
      // multiply by x
      const unsigned carry = digits[m_ - 1];
      for (unsigned j = m_ - 1; j > 0; --j) digits[j] = digits[j - 1];
      digits[0] = 0;
      if (carry)
        for (unsigned j = 0; j < m_; ++j) digits[j] = (digits[j] + (p_ - carry) * modulus_[j]) % p_;
    }
  }
  for (std::uint32_t i = 0; i < order; ++i) {
    if (seen[exp_[i]]) throw Error(Errc::NotPrimitive, "generator does not span the group");
    seen[exp_[i]] = true;
    log_[exp_[i]] = i;
    exp_[i + order] = exp_[i];
  }
}

Digit Field::add_digits(Digit a, Digit b) const noexcept {
  Digit r = 0, scale = 1;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Digit Field::neg_digits(Digit a) const noexcept {
  Digit r = 0, scale = 1;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

Digit Field::inv(Digit a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

Digit Field::pow(Digit a, std::int64_t e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    throw Error(Errc::DivisionByZero, "negative power of zero");
  }
  const std::int64_t order = q_ - 1;
  std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (e % order)) % order;
  if (r < 0) r += order;
  return exp_[static_cast<std::size_t>(r)];
}

Digit Field::primitive_power(std::int64_t i) const noexcept {
  const std::int64_t order = q_ - 1;
  std::int64_t r = i % order;
  if (r < 0) r += order;
  return exp_[static_cast<std::size_t>(r)];
}

std::uint32_t Field::dlog(Digit a) const {
  if (a == 0) throw Error(Errc::LogOfZero, "discrete log of zero");
  if (a >= q_) throw Error(Errc::FieldMismatch, "value outside the field");
  return log_[a];
}

std::string Field::descriptor() const {
  std::ostringstream os;
  os << "GF(" << p_ << "^" << m_ << ")";
  if (m_ > 1) {
    os << "/";
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  }
  return os.str();
}

FieldPtr Field::parse(std::string_view text) {
  auto fail = [&](const std::string& why) -> FieldPtr {
    throw Error(Errc::ParseError, "field descriptor '" + std::string(text) + "': " + why);
  };
  auto number = [&](std::string_view s) -> unsigned {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) fail("bad number '" + std::string(s) + "'");
    return v;
  };
  std::string_view s = text;
  if (s.substr(0, 3) != "GF(") return fail("expected GF(");
  const auto close = s.find(')');
  if (close == std::string_view::npos) return fail("missing )");
  std::string_view order = s.substr(3, close - 3);
  unsigned p = 0, m = 1;
  if (auto caret = order.find('^'); caret != std::string_view::npos) {
    p = number(order.substr(0, caret));
    m = number(order.substr(caret + 1));
  } else {
    p = number(order);
  }
  std::string_view rest = s.substr(close + 1);
  if (rest.empty()) return make(p, m);
  if (rest.front() != '/') return fail("expected '/' before modulus");
  rest.remove_prefix(1);
  if (rest.empty()) return make(p, m, std::vector<unsigned>{});
  std::vector<unsigned> coeffs;
  while (true) {
    const auto comma = rest.find(',');
    coeffs.push_back(number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return make(p, m, std::move(coeffs));
}

// FieldElement

FieldElement::FieldElement(FieldPtr field, Digit value) : field_(std::move(field)), value_(value) {
  if (!field_ || !field_->contains(value_))
    throw Error(Errc::FieldMismatch, "value " + std::to_string(value) + " not in field");
}

const Field& FieldElement::checked(const FieldElement& o) const {
  if (field_ != o.field_ && !field_->same_as(*o.field_))
    throw Error(Errc::FieldMismatch, field_->descriptor() + " vs " + o.field_->descriptor());
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, checked(o).add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, checked(o).sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, checked(o).mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, checked(o).div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::int64_t e) const { return {field_, field_->pow(value_, e)}; }
std::uint32_t FieldElement::dlog() const { return field_->dlog(value_); }

bool FieldElement::operator==(const FieldElement& o) const {
  return value_ == o.value_ && (field_ == o.field_ || field_->same_as(*o.field_));
}

FieldElement primitive_power(const FieldPtr& field, std::int64_t i) {
  return {field, field->primitive_power(i)};
}

// Extension

namespace {

std::vector<unsigned> digits_of(Digit v, unsigned p, unsigned len) {
  std::vector<unsigned> d(len);
  for (unsigned i = 0; i < len; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

unsigned inv_mod(unsigned a, unsigned p) {
  for (unsigned x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

}  // namespace

Extension::Extension(FieldPtr big, FieldPtr base) : big_(std::move(big)), base_(std::move(base)) {
  if (big_->p() != base_->p() || big_->m() % base_->m() != 0)
    throw Error(Errc::DimensionMismatch, big_->descriptor() + " is not an extension of " + base_->descriptor());
  degree_ = big_->m() / base_->m();
  const unsigned p = big_->p();
  const unsigned mb = base_->m();
  const unsigned total = big_->m();

  // Root of the base modulus inside the big field; the base generator maps to it.
  Digit beta = 1;
  if (mb > 1) {
    bool found = false;
    const auto& g = base_->modulus();
    for (std::uint32_t e = 0; e + 1 < big_->q() && !found; ++e) {
      const Digit x = big_->primitive_power(e);
      Digit acc = 0;
      for (std::size_t i = g.size(); i-- > 0;) acc = big_->add(big_->mul(acc, x), g[i]);
      if (acc == 0) {
        beta = x;
        found = true;
      }
    }
    if (!found) throw Error(Errc::DimensionMismatch, "base modulus has no root in the extension");
  }
  base_image_.resize(base_->q());
  for (Digit v = 0; v < base_->q(); ++v) {
    auto d = digits_of(v, p, mb);
    Digit acc = 0, pw = 1;
    for (unsigned i = 0; i < mb; ++i) {
      acc = big_->add(acc, big_->mul(d[i], pw));
      pw = big_->mul(pw, beta);
    }
    base_image_[v] = acc;
  }

  // Columns: digits of beta^i alpha^j, index j*mb + i.
  std::vector<unsigned> a(static_cast<std::size_t>(total) * total);
  for (unsigned j = 0; j < degree_; ++j) {
    for (unsigned i = 0; i < mb; ++i) {
      const Digit e = big_->mul(big_->pow(beta, i), big_->primitive_power(j));
      auto d = digits_of(e, p, total);
      for (unsigned r = 0; r < total; ++r) a[r * total + j * mb + i] = d[r];
    }
  }
  std::vector<unsigned> inv(static_cast<std::size_t>(total) * total, 0);
  for (unsigned i = 0; i < total; ++i) inv[i * total + i] = 1;
  for (unsigned col = 0; col < total; ++col) {
    unsigned piv = col;
    while (piv < total && a[piv * total + col] == 0) ++piv;
    if (piv == total) throw Error(Errc::DimensionMismatch, "degenerate extension basis");
    for (unsigned c = 0; c < total; ++c) {
      std::swap(a[piv * total + c], a[col * total + c]);
      std::swap(inv[piv * total + c], inv[col * total + c]);
    }
    const unsigned s = inv_mod(a[col * total + col], p);
    for (unsigned c = 0; c < total; ++c) {
      a[col * total + c] = a[col * total + c] * s % p;
      inv[col * total + c] = inv[col * total + c] * s % p;
    }
    for (unsigned r = 0; r < total; ++r) {
      if (r == col || a[r * total + col] == 0) continue;
      const unsigned f = a[r * total + col];
      for (unsigned c = 0; c < total; ++c) {
        a[r * total + c] = (a[r * total + c] + (p - f) * a[col * total + c]) % p;
        inv[r * total + c] = (inv[r * total + c] + (p - f) * inv[col * total + c]) % p;
      }
    }
  }
  to_coords_ = std::move(inv);
}

Extension Extension::over(FieldPtr base, unsigned n) {
  if (n < 1) throw Error(Errc::BadParams, "extension degree must be positive");
  auto big = Field::make(base->p(), base->m() * n);
  return Extension(std::move(big), std::move(base));
}

std::vector<Digit> Extension::elem_to_vec(Digit e) const {
  if (!big_->contains(e)) throw Error(Errc::FieldMismatch, "element outside the extension field");
  const unsigned p = big_->p();
  const unsigned total = big_->m();
  const unsigned mb = base_->m();
  auto d = digits_of(e, p, total);
  std::vector<Digit> out(degree_, 0);
  for (unsigned j = 0; j < degree_; ++j) {
    Digit v = 0;
    for (unsigned i = mb; i-- > 0;) {
      unsigned c = 0;
      const std::size_t row = static_cast<std::size_t>(j * mb + i) * total;
      for (unsigned r = 0; r < total; ++r) c = (c + to_coords_[row + r] * d[r]) % p;
      v = v * p + c;
    }
    out[j] = v;
  }
  return out;
}

Digit Extension::vec_to_elem(std::span<const Digit> v) const {
  if (v.size() != degree_)
    throw Error(Errc::DimensionMismatch,
                "vector length " + std::to_string(v.size()) + " != degree " + std::to_string(degree_));
  Digit acc = 0;
  for (unsigned j = 0; j < degree_; ++j) {
    if (!base_->contains(v[j])) throw Error(Errc::FieldMismatch, "coordinate outside base field");
    acc = big_->add(acc, big_->mul(base_image_[v[j]], big_->primitive_power(j)));
  }
  return acc;
}

Digit Extension::embed(Digit base_value) const {
  if (!base_->contains(base_value)) throw Error(Errc::FieldMismatch, "value outside base field");
  return base_image_[base_value];
}

}  // namespace qspace
