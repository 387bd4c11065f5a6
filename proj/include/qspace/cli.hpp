#pragma once

#include <iosfwd>

namespace qspace {

/// Exit status: 0 ok or verdict true, 1 verdict false, 2 usage or input
/// error, 3 cap exceeded.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qspace
