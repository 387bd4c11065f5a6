#pragma once

// Exact-integer bounds on A_q(n, delta, k) (Grassmannian codes), A^S_q(n, d)
// (subspace-metric codes), C_q(n, k, r) (q-covering designs) and constant
// rank codes, plus table aggregation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qspace/bigint.hpp"

namespace qspace {

enum class BoundKind { Lower, Upper, Exact, Unknown };
std::string kind_name(BoundKind k);

struct BoundResult {
  BigInt value = 0;
  BoundKind kind = BoundKind::Unknown;
  std::string source;
};

struct Bracket {
  BoundResult lower;
  BoundResult upper;
  bool exact() const { return lower.value == upper.value; }
};

bool is_prime_power(std::uint64_t q) noexcept;

// ---- A_q(n, delta, k) ----

/// floor((q^n - 1)/(q^k - 1) * inner), inner bounding A_q(n-1, delta, k-1).
BigInt johnson_step(unsigned n, unsigned delta, unsigned k, std::uint64_t q, const BigInt& inner);
/// Nested floors down to A_q(n-k+delta, delta, delta).
BigInt iterated_johnson(unsigned n, unsigned delta, unsigned k, std::uint64_t q);
/// floor([n, k-delta+1]_q / [k, k-delta+1]_q)
BigInt packing_upper(unsigned n, unsigned delta, unsigned k, std::uint64_t q);
/// q^{(n-k')(k'-delta+1)} with k' = min(k, n-k).
BigInt lifted_mrd_lower(unsigned n, unsigned delta, unsigned k, std::uint64_t q);
/// (q^n - 1)/(q^k - 1) when k | n.
BigInt spread_exact(unsigned n, unsigned k, std::uint64_t q);
/// floor((q^n - 1)/(q^k - 1)) - 1 when k does not divide n.
BigInt partial_spread_upper(unsigned n, unsigned k, std::uint64_t q);
/// (q^n - q^k (q^r - 1) - 1)/(q^k - 1), r = n mod k.
BigInt partial_spread_lower(unsigned n, unsigned k, std::uint64_t q);
/// (q^n - q)/(q^k - 1) - q + 1 when n = 1 mod k.
BigInt partial_spread_mod1_exact(unsigned n, unsigned k, std::uint64_t q);
/// A_2(n, 3, 3) = (2^n - 2^c)/7 - c, c = n mod 3; valid for n = 3, 4 and n >= 6.
BigInt partial_3spread_binary_exact(unsigned n);
/// floor of Omega with 2 Omega = sqrt(1 + 4q^k(q^k - q^c)) - (2q^k - 2q^c + 1).
BigInt drake_freeman_omega_floor(unsigned k, unsigned c, std::uint64_t q);
/// sum_{i<l} q^{ik+c} - floor(Omega) - 1 for n = kl + c, 0 < c < k.
BigInt drake_freeman_upper(unsigned n, unsigned k, std::uint64_t q);

// ---- A^S_q(n, d) ----

struct SmallDistanceExact {
  BigInt d1;  // |P_q(n)|
  BigInt d2;  // sum over even k of [n, k]_q
};
SmallDistanceExact subspace_code_small_distance(unsigned n, std::uint64_t q);
/// A^S_2(2n+1, 2n) = 2^{n+1} + 1
BigInt subspace_code_2n_exact(unsigned n);
/// A^S_2(2n+1, 2n-1) lies in [2^{n+2} + 1, 2^{n+2} + 2]
Bracket subspace_code_2n_minus1_bracket(unsigned n);

// ---- C_q(n, k, r) ----

/// ceil((q^n - 1)/(q^k - 1) * inner), inner bounding C_q(n-1, k-1, r-1).
BigInt schonheim_step(unsigned n, unsigned k, unsigned r, std::uint64_t q, const BigInt& inner);
BigInt iterated_schonheim(unsigned n, unsigned k, unsigned r, std::uint64_t q);
/// ceil([n, r]_q / [k, r]_q); equality iff a q-Steiner system S_q(r, k, n) exists.
BigInt covering_lower(unsigned n, unsigned k, unsigned r, std::uint64_t q);
/// Lower bound on C_q(n, k, k-1).
BigInt de_caen_lower(unsigned n, unsigned k, std::uint64_t q);
/// C_q(n, k, 1) = ceil((q^n - 1)/(q^k - 1))
BigInt cover_dim1_exact(unsigned n, unsigned k, std::uint64_t q);
/// C_q(n, n-1, r) = (q^{r+1} - 1)/(q - 1)
BigInt cover_hyperplane_exact(unsigned n, unsigned r, std::uint64_t q);
/// Lower bound on C_q(2s+1, 2s-1, s), s >= 2.
BigInt cover_lines_lower(unsigned s, std::uint64_t q);
/// Upper bound on C_q(2s+x, 2s+x-2, s+x-1), 1 <= x <= s.
BigInt cover_lines_upper(unsigned s, unsigned x, std::uint64_t q);
/// q^{n-k} C_q(n-1, k-1, r-1) + C_q(n-1, k, r)
BigInt covering_upper_step(unsigned n, unsigned k, std::uint64_t q, const BigInt& smaller_k, const BigInt& same_k);
/// C_q(vm + delta, vm - m + delta, v - 1) = (q^{vm} - 1)/(q^m - 1), v, m >= 2.
BigInt normal_spread_cover_exact(unsigned v, unsigned m, unsigned delta, std::uint64_t q);
/// C_q(n+1, k+1, r) <= C_q(n, k, r): returns the implied upper bound.
BigInt covering_monotone_upper(const BigInt& known);

/// Packing/covering exchange. With d = delta:
///   C_q(n, k, k-d) <= A + [n, k-d] - [k, k-d] A   for any lower bound A on A_q(n, d+1, k)
///   A_q(n, d+1, k) >= C + [n, k-d] - [k, k-d] C   for any upper bound C on C_q(n, k, k-d)
BigInt covering_upper_from_packing(unsigned n, unsigned k, unsigned d, std::uint64_t q, const BigInt& a_lower);
BigInt packing_lower_from_covering(unsigned n, unsigned k, unsigned d, std::uint64_t q, const BigInt& c_upper);

// ---- constant rank codes A^R_q(m, n, d, r) ----

/// Exact values when d = r + 1 or d = 2r; otherwise the Grassmannian
/// equivalence when its preconditions hold; else kind Unknown.
Bracket constant_rank_bounds(unsigned m, unsigned n, unsigned d, unsigned r, std::uint64_t q);

// ---- literature and aggregation ----

struct LiteratureEntry {
  std::string quantity;  // "A" (Grassmannian) or "AS" (subspace metric)
  std::uint64_t q = 0;
  unsigned n = 0;
  unsigned d = 0;
  unsigned k = 0;  // unused for AS
  BigInt value;
  BoundKind kind = BoundKind::Unknown;
  std::string citation;
};
const std::vector<LiteratureEntry>& literature();
std::vector<LiteratureEntry> parse_literature(std::string_view csv);

/// Every individual bound that applies, before aggregation.
std::vector<BoundResult> applicable_bounds(unsigned n, unsigned delta, unsigned k, std::uint64_t q);
Bracket best_bounds(unsigned n, unsigned delta, unsigned k, std::uint64_t q);
/// Best bounds on A^S_q(n, d) known to the registry and the closed forms; nullopt
/// when nothing applies.
std::optional<Bracket> subspace_metric_bounds(unsigned n, unsigned d, std::uint64_t q);

/// size / packing_upper
Rational density(const BigInt& size, unsigned n, unsigned delta, unsigned k, std::uint64_t q);

struct TableRow {
  std::uint64_t q;
  unsigned n, delta, k;
  Bracket bounds;
};
/// Cells with 1 <= delta <= k <= n - k in the given ranges.
std::vector<TableRow> emit_table(std::uint64_t q, unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi,
                                 unsigned k_lo, unsigned k_hi);
std::string table_csv(const std::vector<TableRow>& rows);

}  // namespace qspace
