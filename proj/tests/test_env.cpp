#include <doctest.h>

#include <cmath>

#include "careerlab/env.hpp"
#include "careerlab/presets.hpp"
#include "careerlab/rng.hpp"

using namespace careerlab;
using Eigen::VectorXd;

namespace {

Action one_hot(const EnvConfig& cfg, int index, double effort) {
    Action a;
    a.shares = VectorXd::Zero(cfg.num_activities());
    a.shares[index] = 1.0;
    a.efforts = VectorXd::Constant(cfg.num_activities(), effort);
    return a;
}

Action uniform_action(const EnvConfig& cfg, double effort) {
    Action a;
    a.shares = VectorXd::Constant(cfg.num_activities(), 1.0 / cfg.num_activities());
    a.efforts = VectorXd::Constant(cfg.num_activities(), effort);
    return a;
}

Action random_action(const EnvConfig& cfg, Rng& rng) {
    Action a;
    a.shares = rng.dirichlet(VectorXd::Constant(cfg.num_activities(), 1.0));
    a.efforts = VectorXd::NullaryExpr(cfg.num_activities(),
                                      [&](Eigen::Index) { return rng.uniform(); });
    return a;
}

}  // namespace

TEST_CASE("compute_load") {
    const EnvConfig brick = bricklayer_config();
    const EnvConfig nba = nba_config();

    SUBCASE("one-hot post_play at full effort saturates the NBA load") {
        const Action a = one_hot(nba, 0, 1.0);
        const LoadResult lr = compute_load(a.shares, a.efforts, nba.activities, nba.load_model);
        CHECK(lr.load == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(lr.shear == doctest::Approx(lr.load).epsilon(1e-12));
    }
    SUBCASE("one-hot block_laying at full effort") {
        const Action a = one_hot(brick, 0, 1.0);
        const LoadResult lr =
            compute_load(a.shares, a.efforts, brick.activities, brick.load_model);
        CHECK(lr.load == doctest::Approx(0.355 * 0.9).epsilon(1e-12));
        CHECK(lr.shear == doctest::Approx(0.18).epsilon(1e-12));
    }
    SUBCASE("zero effort gives zero load") {
        const Action a = one_hot(brick, 0, 0.0);
        const LoadResult lr =
            compute_load(a.shares, a.efforts, brick.activities, brick.load_model);
        CHECK(lr.load == 0.0);
        CHECK(lr.shear == 0.0);
    }
    SUBCASE("mismatched lengths are a configuration error") {
        VectorXd bad_shares = VectorXd::Constant(3, 1.0 / 3.0);
        VectorXd efforts = VectorXd::Constant(brick.num_activities(), 1.0);
        CHECK_THROWS_AS(compute_load(bad_shares, efforts, brick.activities, brick.load_model),
                        std::invalid_argument);
    }
}

TEST_CASE("damage_step") {
    const DynamicsParams p = bricklayer_config().dynamics;
    SUBCASE("hand-traced first greedy step") {
        // 0.083 * 0.3195 * 1 * 1 - 0.015 * 1.28
        const double expected = 0.083 * (0.355 * 0.9) - 0.015 * (1.0 + 14.0 / 50.0);
        CHECK(damage_step(0.0, 0.355 * 0.9, 1.0, 22.0, 16.0, p) ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(expected == doctest::Approx(0.0073).epsilon(1e-2));
    }
    SUBCASE("recovery clamps at zero damage") {
        CHECK(damage_step(0.0, 0.0, 1.0, 22.0, 16.0, p) == 0.0);
    }
    SUBCASE("upper clamp at full damage") {
        CHECK(damage_step(1.0, 1.0, 1.0, 22.0, 50.0, p) == 1.0);
    }
    SUBCASE("baratz amplification endpoints") {
        CHECK(baratz_amplification(1.0, p) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(baratz_amplification(0.0, p) == doctest::Approx(1.0 / 0.45).epsilon(1e-12));
        CHECK(baratz_amplification(0.3, p) > baratz_amplification(0.7, p));
    }
}

TEST_CASE("meniscal_step") {
    const DynamicsParams p = bricklayer_config().dynamics;
    SUBCASE("hand-traced greedy drain") {
        CHECK(meniscal_step(1.0, 0.18, 20.0, p) == doctest::Approx(0.9865).epsilon(1e-12));
    }
    SUBCASE("amplification is exactly 1 at the threshold") {
        // At M = 0.6 the drain must equal base * shear with no amplification.
        const double drained = meniscal_step(0.6, 0.1, 20.0, p);
        CHECK(drained == doctest::Approx(0.6 - 0.075 * 0.1).epsilon(1e-12));
    }
    SUBCASE("age onset factor at 55 is 1.25") {
        const double drained = meniscal_step(1.0, 0.1, 55.0, p);
        CHECK(drained == doctest::Approx(1.0 - 0.075 * 0.1 * 1.25).epsilon(1e-12));
    }
}

TEST_CASE("proxy_signal and capacity_factor") {
    const DynamicsParams p = bricklayer_config().dynamics;
    CHECK(proxy_signal(0.0, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(proxy_signal(1.0, p) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(proxy_signal(0.3, p) ==
          doctest::Approx(1.0 + 2.5 * std::pow(0.3, 1.8)).epsilon(1e-12));
    CHECK(proxy_signal(0.3, p) == doctest::Approx(1.286).epsilon(1e-3));

    CHECK(capacity_factor(0.2, proxy_signal(0.2, p), p) == 1.0);
    const double h_half = capacity_factor(0.5, proxy_signal(0.5, p), p);
    CHECK(h_half ==
          doctest::Approx(1.0 - 1.5 * 0.2 * (1.0 + 2.5 * std::pow(0.5, 1.8))).epsilon(1e-12));
    CHECK(h_half == doctest::Approx(0.485).epsilon(2e-3));
    CHECK(capacity_factor(1.0, proxy_signal(1.0, p), p) == 0.0);
}

TEST_CASE("step_reward") {
    const EnvConfig brick = bricklayer_config();
    const double beta = brick.dynamics.effort_exponent;
    SUBCASE("one-hot dominant at full effort and zero damage") {
        const Action a = one_hot(brick, 0, 1.0);
        CHECK(step_reward(a.shares, a.efforts, 1.0, brick.activities, beta) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero efforts give zero reward") {
        const Action a = one_hot(brick, 0, 0.0);
        CHECK(step_reward(a.shares, a.efforts, 1.0, brick.activities, beta) == 0.0);
    }
    SUBCASE("one-hot light_repair is 32/105") {
        const Action a = one_hot(brick, 5, 1.0);
        CHECK(step_reward(a.shares, a.efforts, 1.0, brick.activities, beta) ==
              doctest::Approx(32.0 / 105.0).epsilon(1e-12));
    }
}

TEST_CASE("role_check") {
    const RoleRule rule{5, 0.15, 0};
    SUBCASE("boundary mean is not a violation") {
        std::deque<double> h(5, 0.15);
        CHECK_FALSE(role_check(h, rule));
    }
    SUBCASE("low mean violates") {
        std::deque<double> h(5, 0.10);
        CHECK(role_check(h, rule));
    }
    SUBCASE("never fires before the window fills") {
        std::deque<double> h(4, 0.0);
        CHECK_FALSE(role_check(h, rule));
    }
}

TEST_CASE("env_reset and observe") {
    const EnvConfig brick = bricklayer_config();
    const EnvConfig nba = nba_config();

    EnvState s = env_reset(brick);
    CHECK(s.age == 16.0);
    CHECK(s.damage == 0.0);
    CHECK(s.meniscal == 1.0);
    CHECK(s.share_history.empty());
    CHECK(env_reset(nba).age == 18.0);

    const Eigen::Vector2d obs = observe(s, brick);
    CHECK(obs[0] == 0.0);
    CHECK(obs[1] == doctest::Approx(1.0).epsilon(1e-12));

    EnvConfig zp = brick;
    zp.zero_proxy = true;
    EnvState s2 = env_reset(zp);
    s2.damage = 0.7;
    CHECK(observe(s2, zp)[1] == 0.0);

    s2.t = zp.horizon;
    CHECK(observe(s2, zp)[0] == doctest::Approx(1.0).epsilon(1e-15));

    // Determinism of reset.
    const EnvState a = env_reset(brick);
    const EnvState b = env_reset(brick);
    CHECK(a.damage == b.damage);
    CHECK(a.age == b.age);
}

TEST_CASE("env_step composition and terminations") {
    const EnvConfig brick = bricklayer_config();

    SUBCASE("greedy first step: full reward, damage up, meniscal down") {
        EnvState s = env_reset(brick);
        const StepOutcome out = env_step(s, one_hot(brick, 0, 1.0), brick);
        CHECK(out.reward == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.damage > 0.0);
        CHECK(s.meniscal == doctest::Approx(0.9865).epsilon(1e-12));
        CHECK(out.termination == Termination::None);
    }

    SUBCASE("earliest role exit is at age 21") {
        EnvState s = env_reset(brick);
        Action weak = uniform_action(brick, 0.5);  // s_dom = 1/7 < 0.15
        StepOutcome out;
        int steps = 0;
        while (!s.terminal) {
            out = env_step(s, weak, brick);
            ++steps;
        }
        CHECK(steps == 5);
        CHECK(out.termination == Termination::RoleExit);
        CHECK(s.age == 21.0);
    }

    SUBCASE("dominant share at alpha never role-exits") {
        EnvConfig cfg = brick;
        Action a;
        a.shares = VectorXd::Constant(cfg.num_activities(), 0.85 / 6.0);
        a.shares[0] = 0.15;
        a.efforts = VectorXd::Constant(cfg.num_activities(), 0.2);
        EnvState s = env_reset(cfg);
        Termination last = Termination::None;
        while (!s.terminal) last = env_step(s, a, cfg).termination;
        CHECK(last == Termination::AgeLimit);
        CHECK(s.t == cfg.horizon);
    }

    SUBCASE("final step terminates with age_limit") {
        EnvConfig cfg = brick;
        cfg.horizon = 3;
        EnvState s = env_reset(cfg);
        const Action a = one_hot(cfg, 0, 0.3);
        CHECK(env_step(s, a, cfg).termination == Termination::None);
        CHECK(env_step(s, a, cfg).termination == Termination::None);
        CHECK(env_step(s, a, cfg).termination == Termination::AgeLimit);
        CHECK(s.terminal);
    }

    SUBCASE("stepping a terminal state is a usage error") {
        EnvConfig cfg = brick;
        cfg.horizon = 1;
        EnvState s = env_reset(cfg);
        env_step(s, one_hot(cfg, 0, 0.5), cfg);
        CHECK_THROWS_AS(env_step(s, one_hot(cfg, 0, 0.5), cfg), std::logic_error);
    }

    SUBCASE("no_exit logs violations but runs to the horizon") {
        EnvConfig cfg = brick;
        cfg.no_exit = true;
        EnvState s = env_reset(cfg);
        Action weak = uniform_action(cfg, 0.5);
        int steps = 0;
        bool saw_role_violation = false;
        while (!s.terminal) {
            const StepOutcome out = env_step(s, weak, cfg);
            saw_role_violation = saw_role_violation || out.diagnostics.role_violated;
            ++steps;
        }
        CHECK(steps == cfg.horizon);
        CHECK(saw_role_violation);
    }

    SUBCASE("soft penalty shows up in diagnostics only") {
        EnvState s = env_reset(brick);
        Action weak = uniform_action(brick, 0.5);
        const StepOutcome with = env_step(s, weak, brick, 1.0);
        CHECK(with.diagnostics.penalty == -1.0);
        EnvState s2 = env_reset(brick);
        const StepOutcome without = env_step(s2, weak, brick, 0.0);
        CHECK(without.diagnostics.penalty == 0.0);
        CHECK(with.reward == doctest::Approx(without.reward).epsilon(1e-15));
    }
}

TEST_CASE("trajectory invariants under random actions") {
    const EnvConfig brick = bricklayer_config();
    Rng rng(20240817);
    for (int trial = 0; trial < 20; ++trial) {
        EnvConfig cfg = brick;
        cfg.no_exit = trial % 2 == 0;
        EnvState s = env_reset(cfg);
        double prev_m = s.meniscal;
        while (!s.terminal) {
            env_step(s, random_action(cfg, rng), cfg);
            CHECK(s.damage >= 0.0);
            CHECK(s.damage <= 1.0);
            CHECK(s.meniscal >= 0.0);
            CHECK(s.meniscal <= 1.0);
            CHECK(s.meniscal <= prev_m);  // drain is non-negative
            prev_m = s.meniscal;
            CHECK(static_cast<int>(s.share_history.size()) <= cfg.role.window);
        }
    }
}

TEST_CASE("damage is monotone with zero recovery") {
    EnvConfig cfg = bricklayer_config();
    cfg.dynamics.recovery_scale = 0.0;
    cfg.no_exit = true;
    Rng rng(7);
    EnvState s = env_reset(cfg);
    double prev_d = s.damage;
    while (!s.terminal) {
        env_step(s, random_action(cfg, rng), cfg);
        CHECK(s.damage >= prev_d);
        prev_d = s.damage;
    }
}

TEST_CASE("same config and actions give bit-identical trajectories") {
    const EnvConfig cfg = nba_config();
    Rng rng(99);
    std::vector<Action> actions;
    for (int t = 0; t < cfg.horizon; ++t) actions.push_back(random_action(cfg, rng));

    EnvConfig no_exit_cfg = cfg;
    no_exit_cfg.no_exit = true;
    EnvState s1 = env_reset(no_exit_cfg);
    EnvState s2 = env_reset(no_exit_cfg);
    for (const auto& a : actions) {
        const StepOutcome o1 = env_step(s1, a, no_exit_cfg);
        const StepOutcome o2 = env_step(s2, a, no_exit_cfg);
        CHECK(s1.damage == s2.damage);
        CHECK(s1.meniscal == s2.meniscal);
        CHECK(o1.reward == o2.reward);
    }
}
