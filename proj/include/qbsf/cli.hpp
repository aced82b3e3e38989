#pragma once

#include <iosfwd>

namespace qbsf::cli {

/// Exit statuses.
enum Status : int {
  kOk = 0,
  kFailure = 1,  // usage, I/O, disagreement, other errors
  kParseError = 2,
  kClassifyShape = 3,
  kTransformShape = 4,
  kLimit = 10,
};

/// Runs the command line; `in` backs the `-` input path.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qbsf::cli
