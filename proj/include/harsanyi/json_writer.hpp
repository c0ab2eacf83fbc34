#pragma once

#include <string>

#include "json.hpp"

namespace harsanyi {

// Serializes j with every floating-point number printed at 17 significant
// digits ("%.17g"), so output is byte-stable and round-trips exactly.
// Non-finite numbers become null. indent < 0 gives compact output.
std::string dump_json(const nlohmann::json& j, int indent = 2);
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace harsanyi
