#pragma once

// Arithmetic in GF(p^m) with an explicit primitive modulus, and the
// coordinate isomorphism between GF(q^n) and GF(q)^n.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qspace/error.hpp"

namespace qspace {

/// Raw field element value in [0, q-1]. Base-p digits are the polynomial
/// coefficients, least significant digit = constant term.
using Digit = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  /// Largest field order supported by the log/exp tables.
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  /// Validates p, m and the modulus (monic, coefficients constant term first,
  /// length m + 1). Without a modulus the built-in primitive table is used.
  static FieldPtr make(unsigned p, unsigned m,
                       std::optional<std::vector<unsigned>> modulus = std::nullopt);

  /// Parses "GF(p^m)/c0,c1,...,cm", "GF(p^m)" or "GF(p)".
  static FieldPtr parse(std::string_view descriptor);

  /// Built-in primitive polynomial for (p, m), if tabulated.
  static std::optional<std::vector<unsigned>> default_modulus(unsigned p, unsigned m);

  unsigned p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }
  std::string descriptor() const;

  Digit zero() const noexcept { return 0; }
  Digit one() const noexcept { return 1; }

  Digit add(Digit a, Digit b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (m_ == 1) return (a + b) % p_;
    return add_digits(a, b);
  }
  Digit neg(Digit a) const noexcept {
    if (p_ == 2 || a == 0) return a;
    if (m_ == 1) return p_ - a;
    return neg_digits(a);
  }
  Digit sub(Digit a, Digit b) const noexcept { return add(a, neg(b)); }
  Digit mul(Digit a, Digit b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Digit inv(Digit a) const;
  Digit div(Digit a, Digit b) const { return mul(a, inv(b)); }
  Digit pow(Digit a, std::int64_t e) const;

  /// alpha^i, where alpha is x (m > 1) or the smallest primitive root (m = 1).
  Digit primitive_power(std::int64_t i) const noexcept;
  /// Discrete log base alpha, in [0, q-2].
  std::uint32_t dlog(Digit a) const;

  bool contains(Digit a) const noexcept { return a < q_; }
  bool same_as(const Field& other) const noexcept {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

 private:
  Field(unsigned p, unsigned m, std::vector<unsigned> modulus);

  Digit add_digits(Digit a, Digit b) const noexcept;
  Digit neg_digits(Digit a) const noexcept;

  unsigned p_;
  unsigned m_;
  std::uint32_t q_;
  std::vector<unsigned> modulus_;
  std::vector<Digit> exp_;          // alpha^i for i in [0, 2(q-1))
  std::vector<std::uint32_t> log_;  // log_[0] unused
};

/// A field value bound to its field; mixing fields raises FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Digit value);

  const FieldPtr& field() const noexcept { return field_; }
  Digit value() const noexcept { return value_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;
  std::uint32_t dlog() const;

  bool operator==(const FieldElement& o) const;

 private:
  const Field& checked(const FieldElement& o) const;

  FieldPtr field_;
  Digit value_;
};

FieldElement primitive_power(const FieldPtr& field, std::int64_t i);

/// GF(q^n) seen as an n-dimensional vector space over GF(q). Coordinates are
/// taken in the basis 1, alpha, ..., alpha^{n-1} of the big field, constant
/// coordinate first.
class Extension {
 public:
  Extension(FieldPtr big, FieldPtr base);

  /// GF(q^n) with the built-in modulus for degree m*n over GF(p).
  static Extension over(FieldPtr base, unsigned n);

  const FieldPtr& big() const noexcept { return big_; }
  const FieldPtr& base() const noexcept { return base_; }
  unsigned degree() const noexcept { return degree_; }

  std::vector<Digit> elem_to_vec(Digit e) const;
  Digit vec_to_elem(std::span<const Digit> v) const;

  /// Image of a base-field element inside the big field.
  Digit embed(Digit base_value) const;

 private:
  FieldPtr big_;
  FieldPtr base_;
  unsigned degree_;
  std::vector<Digit> base_image_;  // embed table, size q
  // Inverse of the GF(p) change of basis (mn x mn), row-major.
  std::vector<unsigned> to_coords_;
};

bool is_prime(std::uint64_t n) noexcept;

}  // namespace qspace
