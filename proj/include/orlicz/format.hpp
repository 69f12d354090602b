#pragma once

#include <string>

namespace orlicz {

/// Shortest round-trip decimal form ("2", "0.1", "1e-08", "inf").
std::string format_number(double v);

}  // namespace orlicz
