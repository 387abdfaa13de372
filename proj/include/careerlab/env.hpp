#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include <Eigen/Core>

// Deterministic single-step simulation of a cumulative-damage career.
// Latent state is (damage D, meniscal integrity M); the agent allocates
// activity shares on the simplex and per-activity efforts in [0,1]. The
// episode ends when the trailing dominant-activity share window drops
// below the role threshold, when damage exhausts working capacity, or at
// the horizon.

namespace careerlab {

struct ActivitySpec {
    std::string name;
    double energy = 0.0;  // 0-100
    double hazard = 0.0;  // 0-100
    double perf = 0.0;    // 0-110
};

enum class LoadVariant { WeightedDecomposition, NormalizedHazard };

struct LoadModel {
    LoadVariant variant = LoadVariant::WeightedDecomposition;
    // Weighted-decomposition variant: the load mixes stress/strain/shear
    // components that are fixed fractions of each activity's hazard scalar.
    double stress_weight = 0.40, stress_fraction = 0.45;
    double strain_weight = 0.35, strain_fraction = 0.35;
    double shear_weight = 0.25, shear_fraction = 0.20;
    // Composite factor applied to sum_i s_i e_i (h_i / 100). Held as an
    // explicit constant: the calibrated value is 0.355.
    double composite_factor = 0.355;
    // Normalized-hazard variant: load = sum_i s_i e_i h_i / hazard_max.
    double hazard_max = 1.0;
};

struct DynamicsParams {
    double damage_scale = 0.083;
    double baratz_exponent = 1.3;
    double baratz_intercept = 0.45;
    double baratz_slope = 0.55;
    double bmi_slope = 0.07;
    double bmi_pivot = 22.0;
    double recovery_scale = 0.015;
    double recovery_pivot_age = 30.0;
    double recovery_span = 50.0;
    double meniscal_base_rate = 0.075;
    double amp_threshold = 0.6;
    double amp_slope = 3.0;
    double onset_age = 45.0;
    double onset_slope = 0.5;
    double onset_span = 20.0;
    double proxy_alpha = 2.5;
    double proxy_gamma = 1.8;
    double capacity_threshold = 0.30;  // D_clin
    double capacity_slope = 1.5;       // nu
    double effort_exponent = 0.6;      // beta
};

struct RoleRule {
    int window = 5;
    double alpha = 0.15;
    int dominant_index = 0;
};

struct EnvConfig {
    std::string name;
    std::vector<ActivitySpec> activities;
    LoadModel load_model;
    DynamicsParams dynamics;
    RoleRule role;
    int horizon = 1;
    double start_age = 0.0;
    double bmi = 22.0;
    bool zero_proxy = false;
    bool no_exit = false;

    int num_activities() const { return static_cast<int>(activities.size()); }
    double perf_max() const;
    double terminal_age() const { return start_age + horizon; }
};

struct EnvState {
    double damage = 0.0;     // D in [0,1]
    double meniscal = 1.0;   // M in [0,1]
    int t = 0;               // step index in [0, H]
    double age = 0.0;
    std::deque<double> share_history;  // last W dominant shares, newest at back
    bool terminal = false;
};

struct Action {
    Eigen::VectorXd shares;   // simplex, length k
    Eigen::VectorXd efforts;  // each in [0,1], length k
};

enum class Termination { None, RoleExit, CapacityExit, AgeLimit };

const char* termination_name(Termination t);

struct StepDiagnostics {
    double damage = 0.0;     // post-update
    double meniscal = 0.0;   // post-update
    double load = 0.0;
    double shear = 0.0;
    double proxy = 0.0;      // S at the pre-update damage used for reward
    double capacity = 0.0;   // h_occ at the pre-update damage used for reward
    double penalty = 0.0;    // soft role penalty; 0 when not configured
    double dominant_share = 0.0;
    bool role_violated = false;      // logged even under no_exit
    bool capacity_violated = false;  // logged even under no_exit
};

struct StepOutcome {
    double reward = 0.0;  // task reward, penalty excluded
    Eigen::Vector2d observation = Eigen::Vector2d::Zero();
    Termination termination = Termination::None;
    StepDiagnostics diagnostics;
};

struct LoadResult {
    double load = 0.0;
    double shear = 0.0;
};

// Per-step building blocks. All of these are total on valid inputs and
// shared verbatim between the simulator, the DP solver, and the relaxation
// objective.

LoadResult compute_load(const Eigen::VectorXd& shares, const Eigen::VectorXd& efforts,
                        const std::vector<ActivitySpec>& activities,
                        const LoadModel& model);

/// Baratz amplification m(M) = 1 / (0.45 + 0.55 M).
double baratz_amplification(double meniscal, const DynamicsParams& p);

/// BMI multiplier b(bmi) = 1 + 0.07 max(0, bmi - 22).
double bmi_multiplier(double bmi, const DynamicsParams& p);

/// Age-dependent recovery r(age) = 0.015 max(0, 1 - (age - 30)/50).
double recovery_rate(double age, const DynamicsParams& p);

double damage_step(double damage, double load, double meniscal, double bmi,
                   double age, const DynamicsParams& p);

double meniscal_step(double meniscal, double shear, double age,
                     const DynamicsParams& p);

/// Proxy (afferent) signal S = 1 + 2.5 D^1.8.
double proxy_signal(double damage, const DynamicsParams& p);

/// Capacity feedback h_occ in [0,1]; silent (=1) at or below D_clin.
double capacity_factor(double damage, double proxy, const DynamicsParams& p);

double step_reward(const Eigen::VectorXd& shares, const Eigen::VectorXd& efforts,
                   double capacity, const std::vector<ActivitySpec>& activities,
                   double effort_exponent);

/// True only when the window holds exactly W entries and their mean is
/// strictly below alpha.
bool role_check(const std::deque<double>& share_history, const RoleRule& rule);

EnvState env_reset(const EnvConfig& config);

/// Observation [t/H, S_t]; the proxy component is zeroed under zero_proxy.
Eigen::Vector2d observe(const EnvState& state, const EnvConfig& config);

/// Advances the state in place. `penalty_weight` enables the linear soft
/// role penalty, reported through diagnostics and never folded into reward.
StepOutcome env_step(EnvState& state, const Action& action, const EnvConfig& config,
                     double penalty_weight = 0.0);

/// Validates the Action invariants (simplex within 1e-9, efforts in
/// bounds, lengths matching the activity list).
void check_action(const Action& action, const EnvConfig& config);

}  // namespace careerlab
