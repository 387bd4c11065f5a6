#pragma once

// Linear systems over projected-subspace multiplicities of a hypothetical
// q-Steiner system S_q(t, k, n), and an exact nonnegative-integer solver.
//
// The projection of a subspace of F_q^n is the span of its vectors cut down
// to their first rho coordinates.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qspace/bigint.hpp"
#include "qspace/projective.hpp"

namespace qspace {

Subspace project(const Field& f, const Subspace& z, unsigned rho);

/// #{T in G_q(n, t) : project(T) = X}, by enumeration.
BigInt delta_count(const Field& f, const Subspace& x, unsigned n, unsigned t, std::uint64_t cap = kDefaultEnumCap);

/// k-subspace [Y | 0] + <e_rho, ..., e_{rho+k-dim Y-1}> projecting onto Y;
/// nullopt when k - dim Y > n - rho.
std::optional<Subspace> canonical_lift(const Field& f, const Subspace& y, unsigned n, unsigned k);

/// #{T <= K : dim T = t, project(T) = X} for a given k-subspace K.
BigInt gamma_count_in(const Field& f, const Subspace& k_rep, const Subspace& x, unsigned t);
/// Same on canonical_lift(Y); 0 when Y has no lift.
BigInt gamma_count(const Field& f, const Subspace& x, const Subspace& y, unsigned n, unsigned k, unsigned t);

struct Equation {
  Subspace subject;                                  // X
  BigInt delta;                                      // delta_X
  std::vector<std::pair<std::size_t, BigInt>> terms; // (variable, Gamma_{X,Y}), Gamma > 0
};

struct EquationSystem {
  FieldPtr field;
  unsigned n = 0, k = 0, t = 0, rho = 0;
  std::vector<Subspace> variables;  // subspaces of F_q^rho, canonical order
  std::vector<bool> fixed_zero;     // Y with no k-dimensional lift
  std::vector<Equation> equations;

  std::optional<std::size_t> variable_index(const Subspace& y) const;
  /// Exact integer check of every equation.
  bool satisfied_by(const std::vector<BigInt>& a) const;
};

/// Needs 1 <= rho <= n and t < k < n. Throws CapExceeded when [n, t]_q or the
/// variable count exceeds cap.
EquationSystem build_system(FieldPtr field, unsigned n, unsigned k, unsigned t, unsigned rho,
                            std::uint64_t cap = kDefaultEnumCap);

inline constexpr std::uint64_t kDefaultNodeCap = 1'000'000;

struct SolveOptions {
  std::map<std::size_t, BigInt> pins;
  std::uint64_t node_cap = kDefaultNodeCap;
  std::uint64_t solution_cap = 1000;
  std::size_t samples = 3;
};

enum class SolveTag { Infeasible, Unique, Multiple, CapReached };
std::string solve_tag_name(SolveTag t);

struct SolveOutcome {
  SolveTag tag = SolveTag::Infeasible;
  std::uint64_t count = 0;         // solutions found
  bool count_capped = false;       // search stopped at solution_cap or node_cap
  std::uint64_t nodes = 0;
  std::vector<std::vector<BigInt>> solutions;  // up to `samples`
  std::string note;
};

/// Exact rational elimination, interval propagation, then depth-first search
/// over the free variables. Throws InconsistentPins for out-of-range,
/// negative, or fixed-zero-violating pins.
SolveOutcome solve(const EquationSystem& sys, const SolveOptions& opt = {});

struct RhoReport {
  unsigned rho = 0;
  std::size_t variables = 0, equations = 0;
  std::optional<SolveOutcome> outcome;  // empty when skipped
  std::string status;                   // "solutions found", "excluded", "skipped: ...", ...
};

struct FeasibilityReport {
  bool divisibility_ok = true;
  std::vector<RhoReport> per_rho;
  std::string verdict;  // "excluded by divisibility", "excluded at rho=...", "not excluded"
};

/// rho above 4 runs only with allow_large; results never claim existence.
FeasibilityReport feasibility_report(FieldPtr field, unsigned n, unsigned k, unsigned t, unsigned rho_lo,
                                     unsigned rho_hi, bool allow_large = false,
                                     std::uint64_t node_cap = kDefaultNodeCap);

}  // namespace qspace
