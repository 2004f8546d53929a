#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

namespace tqfi {

/// Shortest decimal string that round-trips to the same double.
std::string format_shortest(double x);

/// printf("%.17g").
std::string format_17(double x);

/// Serializes JSON with 2-space indentation and every floating-point number
/// written with 17 significant digits. Key order is preserved.
void write_json(std::ostream& os, const nlohmann::ordered_json& j, int indent = 0);

}  // namespace tqfi
