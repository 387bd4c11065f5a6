#pragma once

// Code constructions: multilevel (skeleton + Ferrers layers), puncturing,
// spreads and partial spreads, cyclic orbit codes, trivial augmentation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qspace/projective.hpp"
#include "qspace/rank_metric.hpp"

namespace qspace {

enum class SkeletonDistance { Hamming, Asymmetric };

unsigned hamming_distance(const std::string& a, const std::string& b);
/// max(N(a,b), N(b,a)), N(a,b) = #{i : a_i = 1, b_i = 0}
unsigned asymmetric_distance(const std::string& a, const std::string& b);

struct SkeletonCode {
  unsigned n = 0;
  std::vector<std::string> words;  // binary strings of length n
  SkeletonDistance kind = SkeletonDistance::Hamming;
  unsigned distance = 0;
  std::optional<unsigned> constant_weight;

  /// Exhaustive minimum distance of the declared kind (0 with < 2 words).
  unsigned min_distance() const;
  unsigned min_distance(SkeletonDistance k) const;
  bool verify() const;
};

/// Greedy code over candidates in decreasing lexicographic order, seeded with
/// 1^k 0^{n-k}. Grassmannian: weight k, Hamming >= 2 delta. Subspace: any
/// weight, Hamming >= 2 delta - 1. Injection: any weight, asymmetric >= delta.
SkeletonCode skeleton_default(unsigned n, unsigned k, unsigned delta, Metric metric);

struct MultilevelPart {
  std::string word;
  FerrersDiagram diagram;
  unsigned dim = 0;
  unsigned bound = 0;
  std::string method;
  std::uint64_t size = 0;  // q^dim
};

struct MultilevelResult {
  SubspaceCode code;
  std::vector<MultilevelPart> parts;
  unsigned target = 0;
  std::optional<unsigned> verified_distance;
};

/// Subspaces with the given identifying vector whose free entries carry the
/// codewords of a rank code on its echelon Ferrers diagram.
std::vector<Subspace> embed_layer(const Field& f, const std::string& word, const RankCode& code);

MultilevelResult multilevel(FieldPtr field, const SkeletonCode& skeleton, unsigned delta, Metric metric,
                            bool verify = true);

Subspace puncture_subspace(const Field& f, const Subspace& x, unsigned i);
/// The union of {Delta(X) : X in C, X <= Q} and {Delta(X & Q) : X in C, v in X},
/// Delta deleting the coordinate missing from Q's pivots.
SubspaceCode puncture_code(const SubspaceCode& c, const Subspace& hyperplane, const Vec& v);

struct PunctureChoice {
  Subspace hyperplane;
  Vec v;
  std::size_t size = 0;
};

/// Exhaustive over hyperplanes Q and normalized v outside Q; ties go to the
/// canonically smallest Q, then the lexicographically smallest v.
PunctureChoice choose_Q(const SubspaceCode& c, std::uint64_t cap = kDefaultEnumCap);

/// Adds subspaces in canonical order while every distance stays >= target.
SubspaceCode augment_greedy(const SubspaceCode& c, Metric metric, unsigned target, std::size_t max_add);
/// Adds {0} and then F_q^n when each keeps the minimum distance >= target.
SubspaceCode augment_trivial(const SubspaceCode& c, Metric metric, unsigned target);

SubspaceCode spread(FieldPtr base, unsigned n, unsigned k);
SubspaceCode partial_spread(FieldPtr base, unsigned n, unsigned k);

/// Exponents i of alpha^i in GF(q^n); 0 is implicit.
using OrbitGenerator = std::vector<std::int64_t>;

/// Subspace of F_q^n formed by {0} and the given powers of alpha. Throws
/// NotASubspace when the set is not closed.
Subspace generator_subspace(const Extension& ext, const OrbitGenerator& g);
SubspaceCode cyclic_orbit_code(const Extension& ext, const std::vector<OrbitGenerator>& gens, bool add_zero,
                               bool add_full, Metric metric = Metric::Injection);

/// x -> x^{q^l}
Subspace frobenius_map(const Extension& ext, const Subspace& x, unsigned l);
/// x -> alpha^j x
Subspace shift_map(const Extension& ext, const Subspace& x, std::int64_t j);
std::vector<Subspace> equivalence_class(const Extension& ext, const Subspace& x);

}  // namespace qspace
