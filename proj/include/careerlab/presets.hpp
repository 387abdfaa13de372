#pragma once

#include <string>
#include <vector>

#include "careerlab/env.hpp"

namespace careerlab {

enum class PresetId { Bricklayer, Nba };

/// 49-year bricklayer career over 7 construction activities.
EnvConfig bricklayer_config();

/// 20-season NBA power-forward career over 6 activities.
EnvConfig nba_config();

EnvConfig preset_config(PresetId id);

/// Looks up "bricklayer" or "nba"; throws on anything else.
PresetId preset_from_name(const std::string& name);
const char* preset_name(PresetId id);

/// Returns a human-readable violation per broken invariant; empty means the
/// config is valid. Checks scalar ranges, the simplex/horizon bounds, and
/// that exactly one activity maximises both hazard and perf.
std::vector<std::string> validate_config(const EnvConfig& config);

}  // namespace careerlab
