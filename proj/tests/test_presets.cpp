#include <doctest.h>

#include "careerlab/presets.hpp"

using namespace careerlab;

TEST_CASE("bricklayer preset matches the calibration table") {
    const EnvConfig cfg = bricklayer_config();
    REQUIRE(cfg.num_activities() == 7);
    CHECK(cfg.activities[0].name == "block_laying");
    CHECK(cfg.activities[0].energy == 85);
    CHECK(cfg.activities[0].hazard == 90);
    CHECK(cfg.activities[0].perf == 105);
    CHECK(cfg.activities[6].name == "coordination");
    CHECK(cfg.activities[6].energy == 15);
    CHECK(cfg.activities[6].hazard == 5);
    CHECK(cfg.activities[6].perf == 45);
    CHECK(cfg.perf_max() == 105);
    CHECK(cfg.horizon == 49);
    CHECK(cfg.start_age == 16.0);
    CHECK(cfg.terminal_age() == 65.0);
    CHECK(cfg.role.window == 5);
    CHECK(cfg.role.alpha == 0.15);
    CHECK(cfg.role.dominant_index == 0);
    CHECK(validate_config(cfg).empty());
}

TEST_CASE("nba preset matches the calibration table") {
    const EnvConfig cfg = nba_config();
    REQUIRE(cfg.num_activities() == 6);
    CHECK(cfg.activities[0].name == "post_play");
    CHECK(cfg.activities[0].energy == 90);
    CHECK(cfg.activities[0].hazard == 90);
    CHECK(cfg.activities[0].perf == 110);
    CHECK(cfg.activities[5].name == "rehab_rest");
    CHECK(cfg.activities[5].energy == 10);
    CHECK(cfg.activities[5].hazard == 3);
    CHECK(cfg.activities[5].perf == 10);
    CHECK(cfg.horizon == 20);
    CHECK(cfg.start_age == 18.0);
    CHECK(cfg.terminal_age() == 38.0);
    CHECK(cfg.role.window == 3);
    CHECK(cfg.role.alpha == 0.12);
    CHECK(cfg.load_model.hazard_max == 90.0);
    CHECK(cfg.dynamics.damage_scale == 0.055);
    CHECK(cfg.dynamics.meniscal_base_rate == 0.15);
    CHECK(validate_config(cfg).empty());
}

TEST_CASE("validate_config flags broken invariants") {
    SUBCASE("two hazard maximisers") {
        EnvConfig cfg = bricklayer_config();
        cfg.activities[1].hazard = 90;
        const auto violations = validate_config(cfg);
        CHECK(violations.size() == 1);
    }
    SUBCASE("alpha of zero") {
        EnvConfig cfg = bricklayer_config();
        cfg.role.alpha = 0.0;
        CHECK(validate_config(cfg).size() == 1);
    }
    SUBCASE("perf and hazard maximisers must coincide") {
        EnvConfig cfg = nba_config();
        cfg.activities[1].perf = 111;  // also out of range: two violations
        CHECK(validate_config(cfg).size() == 2);
    }
    SUBCASE("composite factor is pinned") {
        EnvConfig cfg = bricklayer_config();
        cfg.load_model.composite_factor = 0.36;
        CHECK(validate_config(cfg).size() == 1);
    }
    SUBCASE("preset lookup") {
        CHECK(preset_from_name("bricklayer") == PresetId::Bricklayer);
        CHECK(preset_from_name("nba") == PresetId::Nba);
        CHECK_THROWS_AS(preset_from_name("golfer"), std::invalid_argument);
    }
}
