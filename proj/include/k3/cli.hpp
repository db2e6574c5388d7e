#pragma once

#include <iosfwd>
#include <string_view>

#include "k3/linalg.hpp"

namespace k3 {

/// Entry point of the k3cert tool. Exit status: 0 success or PASS, 1 a
/// verification FAIL, 2 usage or parse error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// G and M blocks of an entropy input file: whitespace-separated integer
/// rows, blocks separated by blank lines, '#' starts a comment. Throws ParseError.
struct MatrixPair {
  IntMatrix g, m;
};
MatrixPair parse_matrix_pair(std::string_view text);

}  // namespace k3
