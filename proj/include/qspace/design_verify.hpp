#pragma once

// Exhaustive checks of design properties: t-subspace coverage, q-Steiner
// systems, designs, coverings, spreads, subspace transversal designs, and the
// census of subspaces meeting their dual trivially.

#include <cstdint>
#include <string>
#include <vector>

#include "qspace/bigint.hpp"
#include "qspace/projective.hpp"

namespace qspace {

struct CoverageReport {
  unsigned t = 0;
  unsigned n = 0;
  std::uint64_t total = 0;                // [n, t]_q
  std::vector<std::uint64_t> histogram;   // histogram[m] = #t-subspaces covered m times
  bool trivial = false;                   // code is a whole Grassmannian layer

  bool is_design(std::uint64_t lambda) const;
  bool is_steiner() const { return is_design(1); }
  bool is_covering() const;
};

/// Multiplicity of every t-subspace over all words. Throws DimTooSmall if a
/// word has dimension < t, CapExceeded if [n, t]_q > cap.
CoverageReport coverage(const SubspaceCode& c, unsigned t, std::uint64_t cap = kDefaultEnumCap);

/// Constant-dimension and every t-subspace in exactly one word.
bool verify_steiner(const SubspaceCode& c, unsigned t);
bool verify_design(const SubspaceCode& c, unsigned t, std::uint64_t lambda);
/// Every r-subspace in at least one word.
bool verify_covering(const SubspaceCode& c, unsigned r);

struct DivisibilityTerm {
  unsigned i = 0;
  Rational quotient;
  bool integral = false;
};
struct DivisibilityReport {
  std::vector<DivisibilityTerm> terms;
  bool pass = true;
};
/// [n-i, t-i]_q / [k-i, t-i]_q for i < t; needs t < k < n.
DivisibilityReport steiner_divisibility(unsigned t, unsigned k, unsigned n, std::uint64_t q);

bool verify_partial_spread(const SubspaceCode& c);
bool verify_spread(const SubspaceCode& c);

struct STDReport {
  unsigned k = 0, n = 0, t = 0;
  std::uint64_t group_count = 0;
  std::uint64_t group_size = 0;
  std::uint64_t admissible = 0;  // t-subspaces meeting V_0 trivially
  bool point_count = false;      // (1)
  bool groups_partition = false; // (2)
  bool blocks_avoid_v0 = false;  // (3)
  bool one_point_per_group = false;  // (4)
  bool strength = false;         // (5)
  bool all() const { return point_count && groups_partition && blocks_avoid_v0 && one_point_per_group && strength; }
};

/// Checks the five transversal-design properties with points the projective
/// points whose first k coordinates are not all zero, groups indexed by the
/// direction of that prefix, and strength t.
STDReport verify_std(const SubspaceCode& c, unsigned k, unsigned n, unsigned t,
                     std::uint64_t cap = kDefaultEnumCap);

/// Every 1-subspace of the ambient space lies in some word.
bool cover_check(const SubspaceCode& c);

struct ComplementCensus {
  unsigned n = 0;
  std::uint64_t q = 0;
  std::uint64_t count = 0;  // X with X & X^perp = {0}
  std::uint64_t total = 0;  // |P_q(n)|
  double ratio = 0;
  double limit = 0;
};
/// prod_{i >= 1} (1 + q^{-i})^{-1}, to about 1e-12.
double complement_limit(std::uint64_t q);
ComplementCensus complements_census(const Field& f, unsigned n, std::uint64_t cap = kDefaultEnumCap);

}  // namespace qspace
