#pragma once

#include <string>
#include <string_view>

#include "segconn/instance.hpp"

namespace segconn {

/// Parses the JSON instance format. Segments are either
/// {"from": [x, y], "to": [x, y]} or {"p": [x, y], "e": [x, y], "a": r, "b": r}.
/// Throws std::runtime_error with a readable message on malformed input.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// Always writes segments in the p/e/a/b form; doubles round-trip exactly.
std::string serialize_instance(const Instance& instance);

}  // namespace segconn
