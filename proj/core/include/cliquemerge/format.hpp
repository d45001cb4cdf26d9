#pragma once

#include <string>

namespace cliquemerge {

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

// printf-style "%.17g".
std::string format_double17(double v);

}  // namespace cliquemerge
