#pragma once

#include <cstdint>
#include <vector>

// Minimal cumulative-damage MDP with binary effort: exact value/Q oracles
// under the uniform continuation policy, the Lipschitz bound on the
// continuation value, the expected step-0 policy-gradient update, the
// critical horizon H*, and a Monte-Carlo REINFORCE estimator.
//
// Dynamics: D' = min(1, D + kappa * e), reward e^beta (1 - D)^2.

namespace careerlab {

struct MinimalMdpParams {
    double kappa = 0.1;
    double beta = 1.0;      // in (0,1]
    double effort_low = 0.5;
    double effort_high = 1.0;
    int horizon = 2;

    /// Mean per-step effort reward under the uniform policy,
    /// (e_L^beta + e_H^beta) / 2.
    double mean_effort_reward() const;
};

struct OriginQ {
    double q_high = 0.0;
    double q_low = 0.0;
    double gap = 0.0;  // q_high - q_low
};

/// Exact uniform-policy continuation value from damage d0 over `steps`
/// steps, by dynamic programming over (step, count of high-effort actions).
/// O(steps^2) states; exact up to floating-point rounding.
double exact_uniform_value(const MinimalMdpParams& p, double initial_damage, int steps);

/// Exact Q(0, e_H), Q(0, e_L) under the uniform continuation policy.
OriginQ exact_q_origin(const MinimalMdpParams& p);

/// Expected first REINFORCE update on the origin-state logit: gap / 4.
double expected_step0_gradient(const MinimalMdpParams& p);

/// Lipschitz bound 2 (H-1) e_mean kappa (e_H - e_L) on
/// |V(kappa e_H) - V(kappa e_L)| in the unclipped regime.
double lipschitz_bound(const MinimalMdpParams& p);

/// Critical horizon 1 + (e_H^beta - e_L^beta) / (2 kappa e_mean (e_H - e_L)).
/// Throws when e_H == e_L.
double h_star(const MinimalMdpParams& p);

struct McGradient {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo REINFORCE estimate of the expected step-0 gradient with the
/// uniform policy (theta_0 = 0). Unbiased for expected_step0_gradient.
McGradient mc_step0_gradient(const MinimalMdpParams& p, std::int64_t n_samples,
                             std::uint64_t seed);

struct CommitmentRow {
    MinimalMdpParams params;
    double h_star_value = 0.0;
    double gap = 0.0;
    bool within_h_star = false;  // horizon <= H*
    bool gap_positive = false;
};

/// Evaluates the commitment condition over a parameter grid: every row with
/// horizon <= H* must have a positive exact Q-gap; rows beyond H* record
/// where the gap stays positive anyway.
std::vector<CommitmentRow> commitment_sweep(const std::vector<MinimalMdpParams>& grid);

}  // namespace careerlab
