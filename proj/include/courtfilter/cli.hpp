#pragma once

#include <ostream>

namespace courtfilter {

// Entry point behind the courtfilter executable. Returns 0 on success, 1 on
// an internal contract violation and 2 on bad input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace courtfilter
