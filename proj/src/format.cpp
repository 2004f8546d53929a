#include "thermoqfi/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>

namespace tqfi {

std::string format_shortest(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string format_17(double x) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

void write_json(std::ostream& os, const nlohmann::ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::json(key).dump() << ": ";
        write_json(os, value, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      // Numeric rows stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const auto& e) { return e.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          write_json(os, j[k], indent + 2);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << pad;
        write_json(os, j[k], indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      os << format_17(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

}  // namespace tqfi
