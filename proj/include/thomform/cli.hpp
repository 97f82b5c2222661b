#pragma once

#include <ostream>

namespace thomform {

/// Runs the command line. Exit status: 0 success / all checks pass,
/// 1 some check failed, 2 usage or input error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thomform
