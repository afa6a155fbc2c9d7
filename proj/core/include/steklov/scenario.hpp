#pragma once

#include <string>

#include "steklov/checks.hpp"

namespace steklov {

// Scenario configs are TOML files; the schema is documented in the README
// and mirrored by the configs/ examples.  Schema violations throw with the
// offending field and reason.
Scenario load_scenario_file(const std::string& path);
Scenario load_scenario_text(const std::string& toml_text);

}  // namespace steklov
