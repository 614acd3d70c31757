#pragma once
#include <iosfwd>

namespace dlab {

// Exit codes: 0 ok, 1 input/domain error, 2 invariant violation,
// 3 numerical non-convergence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dlab
