#pragma once

#include <string>

#include <json.hpp>

namespace steklov {

// Minimal TOML parser covering the scenario-config subset: comments, bare
// and dotted keys, [table] and [[array-of-tables]] headers, basic and
// literal strings, integers, floats, booleans, homogeneous arrays, and
// inline tables.  Produces an ordered JSON DOM.  Errors carry line numbers.
nlohmann::ordered_json parse_toml(const std::string& text);
nlohmann::ordered_json parse_toml_file(const std::string& path);

}  // namespace steklov
