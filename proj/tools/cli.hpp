#pragma once

#include <iosfwd>

namespace ncd {

/// Entry point of the ncd-agenda tool. Exit codes: 0 success (a time limit is
/// a result, not an error), 1 verify found violations, 2 usage or input error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncd
