#pragma once

#include <string>

namespace tandev {

// Shortest representation that reads back to the same double; -0 prints
// as 0 so that meshes of equal geometry are byte-identical.
std::string format_double(double x);

}  // namespace tandev
