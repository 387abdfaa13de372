#include "careerlab/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace careerlab {

EnvConfig bricklayer_config() {
    EnvConfig cfg;
    cfg.name = "bricklayer";
    cfg.activities = {
        {"block_laying", 85, 90, 105},
        {"scaffold_work", 80, 55, 85},
        {"mortar_mixing", 60, 50, 60},
        {"cutting_grinding", 65, 35, 65},
        {"pointing_finishing", 35, 25, 62},
        {"light_repair", 20, 10, 32},
        {"coordination", 15, 5, 45},
    };
    cfg.load_model.variant = LoadVariant::WeightedDecomposition;
    cfg.dynamics = DynamicsParams{};  // bricklayer calibration is the default
    cfg.role = RoleRule{5, 0.15, 0};
    cfg.horizon = 49;
    cfg.start_age = 16.0;  // career ends at age 65
    cfg.bmi = 22.0;
    return cfg;
}

EnvConfig nba_config() {
    EnvConfig cfg;
    cfg.name = "nba";
    cfg.activities = {
        {"post_play", 90, 90, 110},
        {"perimeter_play", 70, 45, 75},
        {"full_practice", 75, 55, 60},
        {"skill_training", 40, 15, 45},
        {"strength_conditioning", 55, 25, 35},
        {"rehab_rest", 10, 3, 10},
    };
    cfg.load_model.variant = LoadVariant::NormalizedHazard;
    cfg.load_model.hazard_max = 90.0;

    DynamicsParams dyn;
    dyn.damage_scale = 0.055;
    dyn.meniscal_base_rate = 0.15;
    // Recovery and meniscal onset are re-pivoted for the shorter career.
    dyn.recovery_pivot_age = 27.0;
    dyn.recovery_span = 20.0;
    dyn.onset_age = 30.0;
    cfg.dynamics = dyn;

    cfg.role = RoleRule{3, 0.12, 0};
    cfg.horizon = 20;
    cfg.start_age = 18.0;  // career ends at age 38
    cfg.bmi = 22.0;
    return cfg;
}

EnvConfig preset_config(PresetId id) {
    return id == PresetId::Bricklayer ? bricklayer_config() : nba_config();
}

PresetId preset_from_name(const std::string& name) {
    if (name == "bricklayer") return PresetId::Bricklayer;
    if (name == "nba") return PresetId::Nba;
    throw std::invalid_argument("unknown preset: " + name);
}

const char* preset_name(PresetId id) {
    return id == PresetId::Bricklayer ? "bricklayer" : "nba";
}

std::vector<std::string> validate_config(const EnvConfig& cfg) {
    std::vector<std::string> violations;
    auto fail = [&](const std::string& msg) { violations.push_back(msg); };

    if (cfg.horizon < 1) fail("horizon must be >= 1");
    if (cfg.num_activities() < 2) fail("at least 2 activities required");

    for (const auto& a : cfg.activities) {
        if (a.energy < 0 || a.energy > 100) fail(a.name + ": energy outside [0,100]");
        if (a.hazard < 0 || a.hazard > 100) fail(a.name + ": hazard outside [0,100]");
        if (a.perf < 0 || a.perf > 110) fail(a.name + ": perf outside [0,110]");
    }

    // Exactly one activity must be the unique hazard and perf maximiser.
    int hazard_arg = -1, perf_arg = -1;
    bool hazard_unique = true, perf_unique = true;
    for (int i = 0; i < cfg.num_activities(); ++i) {
        const auto& a = cfg.activities[i];
        if (hazard_arg < 0 || a.hazard > cfg.activities[hazard_arg].hazard) {
            hazard_arg = i;
            hazard_unique = true;
        } else if (a.hazard == cfg.activities[hazard_arg].hazard) {
            hazard_unique = false;
        }
        if (perf_arg < 0 || a.perf > cfg.activities[perf_arg].perf) {
            perf_arg = i;
            perf_unique = true;
        } else if (a.perf == cfg.activities[perf_arg].perf) {
            perf_unique = false;
        }
    }
    if (!hazard_unique) fail("hazard maximiser is not unique");
    if (!perf_unique) fail("perf maximiser is not unique");
    if (hazard_unique && perf_unique && hazard_arg != perf_arg) {
        fail("hazard and perf maximisers differ; no dominant activity");
    }
    if (hazard_arg != cfg.role.dominant_index) {
        fail("role.dominant_index does not point at the dominant activity");
    }

    if (cfg.load_model.variant == LoadVariant::WeightedDecomposition) {
        if (std::fabs(cfg.load_model.composite_factor - 0.355) > 1e-6) {
            fail("weighted-decomposition composite factor must equal 0.355");
        }
    } else if (!(cfg.load_model.hazard_max > 0.0)) {
        fail("hazard_max must be positive");
    }

    const DynamicsParams& d = cfg.dynamics;
    if (!(d.damage_scale > 0.0)) fail("damage_scale must be positive");
    if (!(d.amp_threshold > 0.0 && d.amp_threshold < 1.0)) fail("amp_threshold outside (0,1)");
    if (!(d.capacity_threshold > 0.0 && d.capacity_threshold < 1.0)) {
        fail("capacity_threshold outside (0,1)");
    }
    if (!(d.effort_exponent > 0.0 && d.effort_exponent <= 1.0)) {
        fail("effort_exponent outside (0,1]");
    }

    if (cfg.role.window < 1) fail("role window must be >= 1");
    if (!(cfg.role.alpha > 0.0 && cfg.role.alpha < 1.0)) fail("role alpha outside (0,1)");
    if (cfg.role.dominant_index < 0 || cfg.role.dominant_index >= cfg.num_activities()) {
        fail("role dominant_index out of range");
    }
    return violations;
}

}  // namespace careerlab
