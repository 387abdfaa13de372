#include "careerlab/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace careerlab {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double EnvConfig::perf_max() const {
    double best = 0.0;
    for (const auto& a : activities) best = std::max(best, a.perf);
    return best;
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::None: return "none";
        case Termination::RoleExit: return "role_exit";
        case Termination::CapacityExit: return "capacity_exit";
        case Termination::AgeLimit: return "age_limit";
    }
    return "none";
}

LoadResult compute_load(const Eigen::VectorXd& shares, const Eigen::VectorXd& efforts,
                        const std::vector<ActivitySpec>& activities,
                        const LoadModel& model) {
    const auto k = static_cast<Eigen::Index>(activities.size());
    if (shares.size() != k || efforts.size() != k) {
        throw std::invalid_argument("compute_load: share/effort length mismatch");
    }
    double weighted = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        weighted += shares[i] * efforts[i] * activities[i].hazard;
    }
    LoadResult out;
    if (model.variant == LoadVariant::WeightedDecomposition) {
        // Hazards are on a 0-100 scale; normalize before the composite factor.
        out.load = model.composite_factor * weighted / 100.0;
        out.shear = model.shear_fraction * weighted / 100.0;
    } else {
        out.load = weighted / model.hazard_max;
        out.shear = out.load;  // no stress/strain/shear split in this variant
    }
    return out;
}

double baratz_amplification(double meniscal, const DynamicsParams& p) {
    return 1.0 / (p.baratz_intercept + p.baratz_slope * meniscal);
}

double bmi_multiplier(double bmi, const DynamicsParams& p) {
    return 1.0 + p.bmi_slope * std::max(0.0, bmi - p.bmi_pivot);
}

double recovery_rate(double age, const DynamicsParams& p) {
    return p.recovery_scale *
           std::max(0.0, 1.0 - (age - p.recovery_pivot_age) / p.recovery_span);
}

double damage_step(double damage, double load, double meniscal, double bmi,
                   double age, const DynamicsParams& p) {
    const double gain = p.damage_scale * load * bmi_multiplier(bmi, p) *
                        std::pow(baratz_amplification(meniscal, p), p.baratz_exponent);
    return clamp01(damage + gain - recovery_rate(age, p));
}

double meniscal_step(double meniscal, double shear, double age,
                     const DynamicsParams& p) {
    const double amp = meniscal < p.amp_threshold
                           ? 1.0 + p.amp_slope * (p.amp_threshold - meniscal)
                           : 1.0;
    const double onset = age >= p.onset_age
                             ? 1.0 + p.onset_slope * (age - p.onset_age) / p.onset_span
                             : 1.0;
    return clamp01(meniscal - p.meniscal_base_rate * shear * amp * onset);
}

double proxy_signal(double damage, const DynamicsParams& p) {
    return 1.0 + p.proxy_alpha * std::pow(damage, p.proxy_gamma);
}

double capacity_factor(double damage, double proxy, const DynamicsParams& p) {
    if (damage <= p.capacity_threshold) return 1.0;
    return std::max(0.0, 1.0 - p.capacity_slope * (damage - p.capacity_threshold) * proxy);
}

double step_reward(const Eigen::VectorXd& shares, const Eigen::VectorXd& efforts,
                   double capacity, const std::vector<ActivitySpec>& activities,
                   double effort_exponent) {
    double perf_max = 0.0;
    for (const auto& a : activities) perf_max = std::max(perf_max, a.perf);
    double sum = 0.0;
    for (std::size_t i = 0; i < activities.size(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        const double effort = efforts[idx];
        const double powered = effort > 0.0 ? std::pow(effort, effort_exponent) : 0.0;
        sum += shares[idx] * powered * activities[i].perf / perf_max;
    }
    return capacity * sum;
}

bool role_check(const std::deque<double>& share_history, const RoleRule& rule) {
    if (static_cast<int>(share_history.size()) != rule.window) return false;
    double mean = 0.0;
    for (double s : share_history) mean += s;
    mean /= rule.window;
    return mean < rule.alpha;
}

EnvState env_reset(const EnvConfig& config) {
    if (config.horizon < 1 || config.num_activities() < 2) {
        throw std::invalid_argument("env_reset: invalid config");
    }
    EnvState s;
    s.damage = 0.0;
    s.meniscal = 1.0;
    s.t = 0;
    s.age = config.start_age;
    s.share_history.clear();
    s.terminal = false;
    return s;
}

Eigen::Vector2d observe(const EnvState& state, const EnvConfig& config) {
    Eigen::Vector2d obs;
    obs[0] = static_cast<double>(state.t) / config.horizon;
    obs[1] = config.zero_proxy ? 0.0 : proxy_signal(state.damage, config.dynamics);
    return obs;
}

void check_action(const Action& action, const EnvConfig& config) {
    const auto k = static_cast<Eigen::Index>(config.num_activities());
    if (action.shares.size() != k || action.efforts.size() != k) {
        throw std::invalid_argument("action length does not match activity count");
    }
    if (std::fabs(action.shares.sum() - 1.0) > 1e-9 || action.shares.minCoeff() < 0.0) {
        throw std::invalid_argument("shares must be non-negative and sum to 1");
    }
    if (action.efforts.minCoeff() < 0.0 || action.efforts.maxCoeff() > 1.0) {
        throw std::invalid_argument("efforts must lie in [0,1]");
    }
}

StepOutcome env_step(EnvState& state, const Action& action, const EnvConfig& config,
                     double penalty_weight) {
    if (state.terminal) {
        throw std::logic_error("env_step: episode already terminal");
    }
    check_action(action, config);
    const DynamicsParams& dyn = config.dynamics;

    StepOutcome out;
    // (1) load and shear from the action.
    const LoadResult lr =
        compute_load(action.shares, action.efforts, config.activities, config.load_model);

    // (2) reward at the current damage level.
    const double proxy = proxy_signal(state.damage, dyn);
    const double capacity = capacity_factor(state.damage, proxy, dyn);
    out.reward = step_reward(action.shares, action.efforts, capacity,
                             config.activities, dyn.effort_exponent);

    // (3) soft role penalty, reported separately from the task reward.
    const double dominant_share = action.shares[config.role.dominant_index];
    if (penalty_weight > 0.0 && dominant_share < config.role.alpha) {
        out.diagnostics.penalty = -penalty_weight;
    }

    // (4) state update: damage first, then meniscal.
    state.damage = damage_step(state.damage, lr.load, state.meniscal, config.bmi,
                               state.age, dyn);
    state.meniscal = meniscal_step(state.meniscal, lr.shear, state.age, dyn);

    // (5) push this step's dominant share into the trailing window.
    state.share_history.push_back(dominant_share);
    while (static_cast<int>(state.share_history.size()) > config.role.window) {
        state.share_history.pop_front();
    }

    state.t += 1;
    state.age += 1.0;

    // (6) terminations, evaluated on the updated state.
    const bool role_violated = role_check(state.share_history, config.role);
    const double post_proxy = proxy_signal(state.damage, dyn);
    const bool capacity_violated = capacity_factor(state.damage, post_proxy, dyn) == 0.0;
    const bool at_horizon = state.t >= config.horizon;

    out.diagnostics.role_violated = role_violated;
    out.diagnostics.capacity_violated = capacity_violated;

    if (!config.no_exit && role_violated) {
        out.termination = Termination::RoleExit;
    } else if (!config.no_exit && capacity_violated) {
        out.termination = Termination::CapacityExit;
    } else if (at_horizon) {
        out.termination = Termination::AgeLimit;
    }
    state.terminal = out.termination != Termination::None;

    out.observation = observe(state, config);
    out.diagnostics.damage = state.damage;
    out.diagnostics.meniscal = state.meniscal;
    out.diagnostics.load = lr.load;
    out.diagnostics.shear = lr.shear;
    out.diagnostics.proxy = proxy;
    out.diagnostics.capacity = capacity;
    out.diagnostics.dominant_share = dominant_share;
    return out;
}

}  // namespace careerlab
