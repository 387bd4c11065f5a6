#pragma once

// Subspaces of F_q^n in canonical RREF form, distances, duality and
// enumeration of Grassmannians.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qspace/bigint.hpp"
#include "qspace/gfq.hpp"

namespace qspace {

using Vec = std::vector<Digit>;

inline constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

struct Matrix {
  unsigned rows = 0;
  unsigned cols = 0;
  std::vector<Digit> data;  // row-major

  Matrix() = default;
  Matrix(unsigned r, unsigned c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  static Matrix from_rows(unsigned cols, const std::vector<Vec>& rows);

  Digit& at(unsigned r, unsigned c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  Digit at(unsigned r, unsigned c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  Vec row(unsigned r) const;

  bool operator==(const Matrix&) const = default;
};

struct RrefResult {
  Matrix matrix;  // zero rows dropped
  unsigned rank = 0;
  std::vector<unsigned> pivots;
};

RrefResult rref(const Field& f, Matrix m);
unsigned rank(const Field& f, Matrix m);

Matrix mat_add(const Field& f, const Matrix& a, const Matrix& b);
Matrix mat_sub(const Field& f, const Matrix& a, const Matrix& b);
Matrix mat_scale(const Field& f, Digit s, const Matrix& a);
Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
/// Basis of {x : M x = 0}, one vector per non-pivot column of rref(M).
std::vector<Vec> null_space(const Field& f, const Matrix& m);

class Subspace {
 public:
  Subspace() = default;

  /// Trusts that `rows` is already a k x n RREF matrix of full rank.
  static Subspace from_rref(unsigned n, unsigned k, std::vector<Digit> rows);
  /// Row space of an arbitrary matrix.
  static Subspace row_space(const Field& f, const Matrix& m);
  static Subspace zero(unsigned n) { return from_rref(n, 0, {}); }
  static Subspace full(unsigned n);

  unsigned n() const noexcept { return n_; }
  unsigned k() const noexcept { return k_; }
  const std::vector<Digit>& data() const noexcept { return rows_; }
  Digit at(unsigned r, unsigned c) const { return rows_[static_cast<std::size_t>(r) * n_ + c]; }
  Vec row(unsigned r) const;
  Matrix matrix() const;
  std::vector<unsigned> pivots() const;

  /// One line per row, base-q digits (q <= 9 for digit strings; otherwise
  /// space separated values).
  std::vector<std::string> row_strings(unsigned q) const;

  bool operator==(const Subspace& o) const = default;
  /// Canonical order: dimension, then pivot set in colex order, then entries
  /// row-major.
  std::strong_ordering operator<=>(const Subspace& o) const;

 private:
  unsigned n_ = 0;
  unsigned k_ = 0;
  std::vector<Digit> rows_;
};

Subspace span(const Field& f, unsigned n, const std::vector<Vec>& vectors);
bool contains(const Field& f, const Subspace& x, std::span<const Digit> v);
/// All q^k vectors of X, zero vector first.
std::vector<Vec> vectors_of(const Field& f, const Subspace& x);

unsigned intersection_dim(const Field& f, const Subspace& x, const Subspace& y);
Subspace sum_subspace(const Field& f, const Subspace& x, const Subspace& y);
Subspace intersect(const Field& f, const Subspace& x, const Subspace& y);
bool is_subspace_of(const Field& f, const Subspace& x, const Subspace& y);
Subspace dual(const Field& f, const Subspace& x);

unsigned d_S(const Field& f, const Subspace& x, const Subspace& y);
unsigned d_I(const Field& f, const Subspace& x, const Subspace& y);
unsigned d_G(const Field& f, const Subspace& x, const Subspace& y);

enum class Metric { Subspace, Injection, Grassmannian };
std::string metric_name(Metric m);
Metric parse_metric(std::string_view s);
unsigned distance(const Field& f, Metric m, const Subspace& x, const Subspace& y);

BigInt gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);
/// |P_q(n)|
BigInt projective_size(unsigned n, std::uint64_t q);

/// Pivot positions as a '0'/'1' string of length n.
std::string identifying_vector(const Subspace& x);

/// Streams G_q(n, k) in canonical order. Throws CapExceeded before starting
/// if [n, k]_q exceeds cap.
void for_each_grassmannian(const Field& f, unsigned n, unsigned k,
                           const std::function<void(const Subspace&)>& fn,
                           std::uint64_t cap = kDefaultEnumCap);
std::vector<Subspace> enumerate_grassmannian(const Field& f, unsigned n, unsigned k,
                                             std::uint64_t cap = kDefaultEnumCap);
void for_each_projective(const Field& f, unsigned n, const std::function<void(const Subspace&)>& fn,
                         std::uint64_t cap = kDefaultEnumCap);
std::vector<Subspace> enumerate_projective(const Field& f, unsigned n, std::uint64_t cap = kDefaultEnumCap);

/// All subspaces with the given pivot set, in canonical order.
void for_each_with_pivots(const Field& f, unsigned n, const std::vector<unsigned>& pivots,
                          const std::function<void(const Subspace&)>& fn);

class SubspaceCode {
 public:
  SubspaceCode(FieldPtr field, unsigned n, Metric metric);

  const FieldPtr& field() const noexcept { return field_; }
  const Field& f() const noexcept { return *field_; }
  unsigned n() const noexcept { return n_; }
  Metric metric() const noexcept { return metric_; }
  void set_metric(Metric m) { metric_ = m; }
  const std::vector<Subspace>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

  /// Inserts in canonical position; returns false if already present.
  bool insert(const Subspace& x);
  bool has(const Subspace& x) const;
  /// Dimension shared by all words, if any.
  std::optional<unsigned> constant_dimension() const;

  std::optional<unsigned> claimed_distance;

 private:
  FieldPtr field_;
  unsigned n_;
  Metric metric_;
  std::vector<Subspace> words_;  // sorted, unique
};

/// Exhaustive minimum pairwise distance. Throws TooFewWords for |C| < 2.
unsigned code_min_distance(const SubspaceCode& c, Metric m);
unsigned code_min_distance(const SubspaceCode& c);
SubspaceCode code_dual(const SubspaceCode& c);

}  // namespace qspace

template <>
struct std::hash<qspace::Subspace> {
  std::size_t operator()(const qspace::Subspace& s) const noexcept;
};
