#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "peerreview/calibration.hpp"

namespace peerreview::config {

/// Parses a JSON calibration. Flat keys match Calibration field names;
/// F_spec / G_spec / cR_spec / cA_spec / D_spec / solver are nested objects.
/// Missing keys keep their baseline value; unknown keys throw ConfigError.
/// The result is not validated.
Calibration from_json(std::string_view text);
Calibration load(const std::filesystem::path& path);

/// Serialises every field (12 significant digits) as pretty JSON.
std::string to_json(const Calibration& cal);

/// Applies "key=value" (nested keys as "F_spec.family=beta",
/// "D_spec.d0=0.05", "solver.N_max=30"). Throws ConfigError on an unknown
/// key or unparsable value.
void apply_override(Calibration& cal, std::string_view assignment);

/// Rounds to 12 significant digits so serialised output is stable.
double round_sig(double x, int digits = 12);

}  // namespace peerreview::config
