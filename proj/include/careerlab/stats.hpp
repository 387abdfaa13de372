#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

// Statistical procedures for the analysis pipeline plus the per-seed
// summary record and its outcome classifiers.

namespace careerlab {

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;  // two-sided
};

/// Welch's unequal-variance t-test from summary statistics; df by
/// Welch–Satterthwaite. Requires n >= 2 per group and at least one
/// positive sd.
WelchResult welch_t(double mean1, double sd1, int n1, double mean2, double sd2, int n2);

struct MannWhitneyResult {
    double u = 0.0;  // U statistic of the first sample
    double p = 1.0;  // two-sided
    bool exact = false;
};

/// Mann-Whitney U. Exact enumeration when n+m <= 12, otherwise the
/// tie-corrected normal approximation with continuity correction.
MannWhitneyResult mann_whitney_u(const std::vector<double>& xs,
                                 const std::vector<double>& ys);

/// Percentile bootstrap CI of `statistic` over `values`.
std::pair<double, double> bootstrap_ci(
    const std::vector<double>& values,
    const std::function<double(const std::vector<double>&)>& statistic,
    int resamples, double level, std::uint64_t seed);

/// Exact Clopper-Pearson binomial interval for k successes in n trials.
std::pair<double, double> clopper_pearson(int k, int n, double level);

/// Two-sided Fisher exact p for the 2x2 table [[a,b],[c,d]]: sum of
/// hypergeometric tables no more probable than the observed one.
double fisher_exact(int a, int b, int c, int d);

// ---------------------------------------------------------------------------

enum class CellLabel { A, B, C };
const char* cell_label_name(CellLabel c);

enum class BasinLabel { Reactive, Other };
const char* basin_label_name(BasinLabel b);

struct ConditionFlags {
    std::string mode = "ppo-real";  // ppo-real | dyna-unrestricted | dyna-fixed-share
    bool no_exit = false;
    bool zero_proxy = false;
    double penalty_weight = 0.0;
    double init_bias = 0.0;
};

struct EffortCheckpoints {
    double initial = 0.0;
    double mid = 0.0;
    double late = 0.0;
};

/// One seed's evaluation record; serializes as summary.json.
struct SeedSummary {
    int schema_version = 1;
    std::uint64_t seed = 0;
    std::string preset;
    ConditionFlags condition;
    int eval_episodes = 0;
    double completion_rate = 0.0;
    double exit_age_mean = 0.0;
    double exit_age_sd = 0.0;
    double m_final_mean = 0.0;
    double m_final_sd = 0.0;
    double d_final_mean = 0.0;
    // Present only when every eval episode completes.
    std::optional<EffortCheckpoints> effort_checkpoints;
    std::optional<std::vector<double>> effort_profile;  // mean dominant effort per age
    std::optional<BasinLabel> basin;
    std::int64_t training_steps = 0;
    std::string config_hash;
};

std::string seed_summary_to_json(const SeedSummary& s);
SeedSummary seed_summary_from_json(const std::string& text);

/// Completion/optimality cell. epsilon is the Cell-C tolerance on the
/// M_final gap to the DP reference. The DP reference is consulted only for
/// completing policies; passing std::nullopt for one is an error then.
CellLabel classify_cell(const SeedSummary& summary, std::optional<double> dp_m_final,
                        double epsilon = 0.02);

struct BasinThresholds {
    double initial_effort_above = 0.80;
    double mid_effort_above = 0.40;
    double late_effort_below = 0.30;
    double monotone_tolerance = 0.02;
};

/// Reactive-decline classification: high initial effort, elevated
/// mid-horizon effort, low late effort, and monotone decline (no
/// year-over-year increase beyond the tolerance).
BasinLabel classify_basin(const std::vector<double>& effort_profile,
                          const EffortCheckpoints& checkpoints,
                          const BasinThresholds& thresholds = {});

struct EvalEpisode {
    int length = 0;
    double exit_age = 0.0;
    bool completed = false;
    double m_final = 0.0;
    double d_final = 0.0;
    std::vector<double> dominant_effort;  // per step
};

struct SummarizeOptions {
    std::string preset;
    ConditionFlags condition;
    std::uint64_t seed = 0;
    std::int64_t training_steps = 0;
    std::string config_hash;
    double start_age = 0.0;
    int horizon = 0;
    // Checkpoint ages; defaults are filled per preset by the trainer.
    double checkpoint_initial_age = 0.0;
    double checkpoint_mid_age = 0.0;
    double checkpoint_late_age = 0.0;
};

/// Aggregates evaluation episodes into a SeedSummary. Requires at least
/// one episode.
SeedSummary summarize_seed(const std::vector<EvalEpisode>& episodes,
                           const SummarizeOptions& options);

double mean_of(const std::vector<double>& xs);
double sample_sd(const std::vector<double>& xs);

}  // namespace careerlab
