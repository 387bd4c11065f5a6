#pragma once

// File formats: subspace codes and rank codes as JSON, skeleton word lists,
// projection equation systems.

#include <string>
#include <string_view>
#include <vector>

#include "qspace/code_builder.hpp"
#include "qspace/projections.hpp"
#include "qspace/projective.hpp"
#include "qspace/rank_metric.hpp"

namespace qspace {

/// One row: n base-q digits, or space-separated values when q > 10.
Vec parse_row(const Field& f, std::string_view text, std::string_view context);
/// Row space of the given rows; `canonical` reports whether they were already
/// in reduced echelon form with full rank.
Subspace parse_subspace(const Field& f, unsigned n, const std::vector<std::string>& rows, std::string_view context,
                        bool* canonical = nullptr);

/// {"field", "n", "metric", "subspaces": [[rows], ...]} in canonical order.
std::string write_code(const SubspaceCode& c);

struct CodeReadResult {
  SubspaceCode code;
  std::vector<std::string> warnings;
};
/// Throws ParseError with the offending location.
CodeReadResult read_code(std::string_view json_text);

/// {"field", "rows", "cols", "delta", "diagram"?, "basis": [[rows], ...]}
std::string write_rank_code(const RankCode& c);
RankCode read_rank_code(std::string_view json_text);

/// One binary word per line; blank lines and '#' comments are skipped.
SkeletonCode read_skeleton(std::string_view text, SkeletonDistance kind);
std::string write_skeleton(const SkeletonCode& s);

std::string write_system(const EquationSystem& sys);
EquationSystem read_system(std::string_view json_text);

}  // namespace qspace
