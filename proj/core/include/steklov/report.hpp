#pragma once

#include <string>

#include "steklov/checks.hpp"

namespace steklov {

// Deterministic serializations: a fixed scenario (including seed) yields
// byte-identical output.  Files are written atomically (temp + rename).

std::string scenario_run_to_json(const ScenarioRun& run);
std::string sweep_to_csv(const ScenarioRun& run);
std::string spectrum_to_json(const SpectrumResult& result);
std::string spectrum_to_csv(const SpectrumResult& result);
// Log-log plot of the epsilon-indexed check rows (computed vs bound).
std::string checks_to_svg(const ScenarioRun& run);

void write_file_atomic(const std::string& path, const std::string& content);

// Writes whichever of csv/json/svg paths the scenario configures.
void write_artifacts(const ScenarioRun& run);

}  // namespace steklov
