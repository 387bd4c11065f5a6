#pragma once

// Rank-metric codes: Gabidulin MRD codes, Ferrers diagrams, codes supported
// on a diagram, and lifting into the Grassmannian.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qspace/projective.hpp"

namespace qspace {

class FerrersDiagram {
 public:
  FerrersDiagram() = default;
  /// Row lengths top row first; zero rows are dropped. Must be nonincreasing.
  explicit FerrersDiagram(std::vector<unsigned> row_lengths);
  static FerrersDiagram rectangle(unsigned m, unsigned eta);
  /// "3,3,1"; the empty string is the empty diagram.
  static FerrersDiagram parse(std::string_view text);

  const std::vector<unsigned>& rows() const noexcept { return rows_; }
  unsigned height() const noexcept { return static_cast<unsigned>(rows_.size()); }
  unsigned width() const noexcept { return rows_.empty() ? 0 : rows_.front(); }
  unsigned dots() const noexcept;
  /// Dots are right-justified inside the height x width box.
  bool has_dot(unsigned i, unsigned j) const noexcept { return i < rows_.size() && j + rows_[i] >= width(); }
  bool empty() const noexcept { return rows_.empty(); }
  std::string to_string() const;

  bool operator==(const FerrersDiagram&) const = default;

 private:
  std::vector<unsigned> rows_;
};

struct RankCode {
  FieldPtr field;
  unsigned rows = 0;
  unsigned cols = 0;
  unsigned delta = 1;
  std::vector<Matrix> basis;
  std::optional<FerrersDiagram> diagram;

  unsigned dim() const noexcept { return static_cast<unsigned>(basis.size()); }
  BigInt size() const;
  /// All q^dim codewords, zero first. Throws CapExceeded above cap.
  std::vector<Matrix> codewords(std::uint64_t cap = kDefaultCodewordCap) const;

  static constexpr std::uint64_t kDefaultCodewordCap = std::uint64_t{1} << 20;
};

unsigned d_R(const Field& f, const Matrix& a, const Matrix& b);
unsigned singleton_rank(unsigned k, unsigned l, unsigned delta);

RankCode gabidulin(FieldPtr base, unsigned k, unsigned l, unsigned delta);
/// Minimum rank over nonzero codewords (0 for the zero code).
unsigned rank_code_min_distance(const RankCode& c, std::uint64_t cap = RankCode::kDefaultCodewordCap);
bool is_mrd(const RankCode& c, std::uint64_t cap = RankCode::kDefaultCodewordCap);

/// Row space of [I_k | A].
Subspace lift(const Field& f, const Matrix& a);
SubspaceCode lift_code(const RankCode& c);

/// Diagram of the free entries in the echelon form of the identifying vector.
FerrersDiagram ferrers_of(const std::string& identifying);
unsigned ferrers_bound(const FerrersDiagram& d, unsigned delta);

struct FdrmResult {
  RankCode code;
  unsigned bound = 0;
  std::string method;  // "unit", "zero", "subcode", "parity", "transformed-subcode"
  unsigned gap() const noexcept { return bound - code.dim(); }
};

inline constexpr unsigned kFdrmSearchBudget = 200;

/// Linear code supported on the diagram with minimum rank distance >= delta.
/// For delta > 2 and non-rectangular diagrams the dimension may fall short of
/// the bound; the gap is reported.
FdrmResult fdrm_construct(FieldPtr base, const FerrersDiagram& d, unsigned delta, std::uint64_t seed = 1,
                          unsigned budget = kFdrmSearchBudget);

}  // namespace qspace
