#include "careerlab/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "careerlab/rng.hpp"

namespace careerlab {

namespace {

double reward(double damage, double effort, double beta) {
    const double headroom = 1.0 - damage;
    return std::pow(effort, beta) * headroom * headroom;
}

}  // namespace

double MinimalMdpParams::mean_effort_reward() const {
    return 0.5 * (std::pow(effort_low, beta) + std::pow(effort_high, beta));
}

double exact_uniform_value(const MinimalMdpParams& p, double initial_damage, int steps) {
    if (steps <= 0) return 0.0;
    // Damage depends on the action sequence only through the count of
    // high-effort picks, so the uniform-policy expectation runs over
    // (step, count) instead of 2^steps trajectories.
    auto damage_at = [&](int high_count, int total) {
        return std::min(1.0, initial_damage +
                                 p.kappa * (high_count * p.effort_high +
                                            (total - high_count) * p.effort_low));
    };
    // value[c] = expected remaining return at the current step given count c.
    std::vector<double> value(static_cast<std::size_t>(steps) + 1, 0.0);
    for (int t = steps - 1; t >= 0; --t) {
        for (int c = 0; c <= t; ++c) {
            const double d = damage_at(c, t);
            const double take_high = reward(d, p.effort_high, p.beta) + value[c + 1];
            const double take_low = reward(d, p.effort_low, p.beta) + value[c];
            value[c] = 0.5 * (take_high + take_low);
        }
    }
    return value[0];
}

OriginQ exact_q_origin(const MinimalMdpParams& p) {
    if (p.horizon < 1) throw std::invalid_argument("exact_q_origin: horizon must be >= 1");
    OriginQ q;
    const double d_high = std::min(1.0, p.kappa * p.effort_high);
    const double d_low = std::min(1.0, p.kappa * p.effort_low);
    q.q_high = reward(0.0, p.effort_high, p.beta) +
               exact_uniform_value(p, d_high, p.horizon - 1);
    q.q_low = reward(0.0, p.effort_low, p.beta) +
              exact_uniform_value(p, d_low, p.horizon - 1);
    q.gap = q.q_high - q.q_low;
    return q;
}

double expected_step0_gradient(const MinimalMdpParams& p) {
    return 0.25 * exact_q_origin(p).gap;
}

double lipschitz_bound(const MinimalMdpParams& p) {
    return 2.0 * (p.horizon - 1) * p.mean_effort_reward() * p.kappa *
           (p.effort_high - p.effort_low);
}

double h_star(const MinimalMdpParams& p) {
    if (p.effort_high == p.effort_low) {
        throw std::invalid_argument("h_star: undefined for e_H == e_L");
    }
    const double reward_gap =
        std::pow(p.effort_high, p.beta) - std::pow(p.effort_low, p.beta);
    return 1.0 + reward_gap / (2.0 * p.kappa * p.mean_effort_reward() *
                               (p.effort_high - p.effort_low));
}

McGradient mc_step0_gradient(const MinimalMdpParams& p, std::int64_t n_samples,
                             std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("mc_step0_gradient: n_samples >= 1");
    Rng rng(seed);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        // theta_0 = 0: both actions have probability 1/2; the score of the
        // sigmoid logit is +1/2 for e_H and -1/2 for e_L.
        const bool first_high = rng.uniform() < 0.5;
        double damage = 0.0;
        double ret = 0.0;
        for (int t = 0; t < p.horizon; ++t) {
            const bool high = t == 0 ? first_high : rng.uniform() < 0.5;
            const double effort = high ? p.effort_high : p.effort_low;
            ret += reward(damage, effort, p.beta);
            damage = std::min(1.0, damage + p.kappa * effort);
        }
        const double sample = (first_high ? 0.5 : -0.5) * ret;
        sum += sample;
        sum_sq += sample * sample;
    }
    McGradient out;
    const double n = static_cast<double>(n_samples);
    out.estimate = sum / n;
    const double var = std::max(0.0, sum_sq / n - out.estimate * out.estimate);
    out.std_error = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    return out;
}

std::vector<CommitmentRow> commitment_sweep(const std::vector<MinimalMdpParams>& grid) {
    std::vector<CommitmentRow> rows;
    rows.reserve(grid.size());
    for (const auto& params : grid) {
        CommitmentRow row;
        row.params = params;
        row.h_star_value = h_star(params);
        row.gap = exact_q_origin(params).gap;
        row.within_h_star = params.horizon <= row.h_star_value;
        row.gap_positive = row.gap > 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace careerlab
