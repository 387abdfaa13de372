#include "careerlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "careerlab/mathfun.hpp"
#include "careerlab/rng.hpp"

using nlohmann::json;

namespace careerlab {

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean_of: empty input");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

WelchResult welch_t(double mean1, double sd1, int n1, double mean2, double sd2, int n2) {
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("welch_t: need n >= 2 per group");
    if (sd1 < 0.0 || sd2 < 0.0) throw std::invalid_argument("welch_t: negative sd");
    if (sd1 == 0.0 && sd2 == 0.0) {
        throw std::invalid_argument("welch_t: both standard deviations are zero");
    }
    const double v1 = sd1 * sd1 / n1;
    const double v2 = sd2 * sd2 / n2;
    WelchResult r;
    r.t = (mean1 - mean2) / std::sqrt(v1 + v2);
    r.df = (v1 + v2) * (v1 + v2) / (v1 * v1 / (n1 - 1) + v2 * v2 / (n2 - 1));
    r.p = student_t_two_sided_p(r.t, r.df);
    return r;
}

namespace {

// Midranks with ties; returns (U of xs, tie correction term sum t^3 - t).
std::pair<double, double> u_statistic(const std::vector<double>& xs,
                                      const std::vector<double>& ys) {
    struct Entry {
        double value;
        bool from_x;
    };
    std::vector<Entry> all;
    all.reserve(xs.size() + ys.size());
    for (double x : xs) all.push_back({x, true});
    for (double y : ys) all.push_back({y, false});
    std::sort(all.begin(), all.end(),
              [](const Entry& a, const Entry& b) { return a.value < b.value; });

    double rank_sum_x = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].value == all[i].value) ++j;
        const double tied = static_cast<double>(j - i);
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) {
            if (all[k].from_x) rank_sum_x += midrank;
        }
        tie_term += tied * tied * tied - tied;
        i = j;
    }
    const double n = static_cast<double>(xs.size());
    const double u = rank_sum_x - n * (n + 1.0) / 2.0;
    return {u, tie_term};
}

}  // namespace

MannWhitneyResult mann_whitney_u(const std::vector<double>& xs,
                                 const std::vector<double>& ys) {
    if (xs.empty() || ys.empty()) {
        throw std::invalid_argument("mann_whitney_u: both samples must be non-empty");
    }
    const auto n = xs.size();
    const auto m = ys.size();
    MannWhitneyResult r;
    const auto [u_obs, tie_term] = u_statistic(xs, ys);
    r.u = u_obs;

    if (n + m <= 12) {
        // Exact: enumerate every way to assign the pooled values to the
        // first group and count U statistics at least as extreme.
        r.exact = true;
        std::vector<double> pooled(xs.begin(), xs.end());
        pooled.insert(pooled.end(), ys.begin(), ys.end());
        std::vector<bool> pick(pooled.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(n), true);
        std::sort(pick.begin(), pick.end());
        long total = 0, le = 0, ge = 0;
        do {
            std::vector<double> gx, gy;
            for (std::size_t i = 0; i < pooled.size(); ++i) {
                (pick[i] ? gx : gy).push_back(pooled[i]);
            }
            const double u = u_statistic(gx, gy).first;
            ++total;
            if (u <= u_obs + 1e-12) ++le;
            if (u >= u_obs - 1e-12) ++ge;
        } while (std::next_permutation(pick.begin(), pick.end()));
        const double p_le = static_cast<double>(le) / total;
        const double p_ge = static_cast<double>(ge) / total;
        r.p = std::min(1.0, 2.0 * std::min(p_le, p_ge));
        return r;
    }

    const double nm = static_cast<double>(n) * static_cast<double>(m);
    const double total = static_cast<double>(n + m);
    const double mean_u = nm / 2.0;
    const double var_u =
        nm / 12.0 * (total + 1.0 - tie_term / (total * (total - 1.0)));
    if (var_u <= 0.0) {
        r.p = 1.0;
        return r;
    }
    const double z = std::max(0.0, std::fabs(u_obs - mean_u) - 0.5) / std::sqrt(var_u);
    r.p = 2.0 * (1.0 - norm_cdf(z));
    return r;
}

std::pair<double, double> bootstrap_ci(
    const std::vector<double>& values,
    const std::function<double(const std::vector<double>&)>& statistic,
    int resamples, double level, std::uint64_t seed) {
    if (values.empty()) throw std::invalid_argument("bootstrap_ci: empty input");
    if (resamples < 1000) throw std::invalid_argument("bootstrap_ci: need >= 1000 resamples");
    Rng rng(seed);
    std::vector<double> stats(static_cast<std::size_t>(resamples));
    std::vector<double> draw(values.size());
    for (int r = 0; r < resamples; ++r) {
        for (auto& d : draw) d = values[rng.uniform_index(values.size())];
        stats[static_cast<std::size_t>(r)] = statistic(draw);
    }
    std::sort(stats.begin(), stats.end());
    const double tail = 0.5 * (1.0 - level);
    auto quantile = [&](double q) {
        const double pos = q * (static_cast<double>(stats.size()) - 1.0);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, stats.size() - 1);
        const double frac = pos - std::floor(pos);
        return stats[lo] + frac * (stats[hi] - stats[lo]);
    };
    return {quantile(tail), quantile(1.0 - tail)};
}

std::pair<double, double> clopper_pearson(int k, int n, double level) {
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("clopper_pearson: bad counts");
    const double tail = 0.5 * (1.0 - level);
    const double lo = k == 0 ? 0.0 : reg_inc_beta_inv(tail, k, n - k + 1);
    const double hi = k == n ? 1.0 : reg_inc_beta_inv(1.0 - tail, k + 1, n - k);
    return {lo, hi};
}

double fisher_exact(int a, int b, int c, int d) {
    if (a < 0 || b < 0 || c < 0 || d < 0) {
        throw std::invalid_argument("fisher_exact: negative count");
    }
    const int row1 = a + b, col1 = a + c, n = a + b + c + d;
    if (n == 0) return 1.0;
    auto log_p = [&](int x) {
        // Hypergeometric P(X = x) for cell (1,1) with the observed margins.
        return log_choose(col1, x) + log_choose(n - col1, row1 - x) - log_choose(n, row1);
    };
    const int x_min = std::max(0, row1 - (n - col1));
    const int x_max = std::min(row1, col1);
    const double log_p_obs = log_p(a);
    // Sum every table no more probable than the observed one; the epsilon
    // admits tables tied with it up to rounding.
    double p = 0.0;
    for (int x = x_min; x <= x_max; ++x) {
        const double lp = log_p(x);
        if (lp <= log_p_obs + 1e-9) p += std::exp(lp);
    }
    return std::min(1.0, p);
}

// ---------------------------------------------------------------------------

const char* cell_label_name(CellLabel c) {
    switch (c) {
        case CellLabel::A: return "A";
        case CellLabel::B: return "B";
        case CellLabel::C: return "C";
    }
    return "A";
}

const char* basin_label_name(BasinLabel b) {
    return b == BasinLabel::Reactive ? "reactive" : "other";
}

CellLabel classify_cell(const SeedSummary& summary, std::optional<double> dp_m_final,
                        double epsilon) {
    if (summary.completion_rate < 1.0) return CellLabel::A;
    if (!dp_m_final.has_value()) {
        throw std::invalid_argument(
            "classify_cell: completing policy needs a DP reference M_final");
    }
    const double gap = *dp_m_final - summary.m_final_mean;
    return gap <= epsilon ? CellLabel::C : CellLabel::B;
}

BasinLabel classify_basin(const std::vector<double>& effort_profile,
                          const EffortCheckpoints& checkpoints,
                          const BasinThresholds& th) {
    if (effort_profile.size() < 2) {
        throw std::invalid_argument("classify_basin: profile too short");
    }
    bool monotone = true;
    for (std::size_t i = 1; i < effort_profile.size(); ++i) {
        if (effort_profile[i] - effort_profile[i - 1] > th.monotone_tolerance) {
            monotone = false;
            break;
        }
    }
    const bool reactive = checkpoints.initial > th.initial_effort_above &&
                          checkpoints.mid > th.mid_effort_above &&
                          checkpoints.late < th.late_effort_below && monotone;
    return reactive ? BasinLabel::Reactive : BasinLabel::Other;
}

// ---------------------------------------------------------------------------

namespace {

json condition_to_json(const ConditionFlags& c) {
    return json{{"mode", c.mode},
                {"no_exit", c.no_exit},
                {"zero_proxy", c.zero_proxy},
                {"penalty_weight", c.penalty_weight},
                {"init_bias", c.init_bias}};
}

ConditionFlags condition_from_json(const json& j) {
    ConditionFlags c;
    c.mode = j.at("mode").get<std::string>();
    c.no_exit = j.at("no_exit").get<bool>();
    c.zero_proxy = j.at("zero_proxy").get<bool>();
    c.penalty_weight = j.at("penalty_weight").get<double>();
    c.init_bias = j.at("init_bias").get<double>();
    return c;
}

}  // namespace

std::string seed_summary_to_json(const SeedSummary& s) {
    json j;
    j["schema_version"] = s.schema_version;
    j["seed"] = s.seed;
    j["preset"] = s.preset;
    j["condition"] = condition_to_json(s.condition);
    j["eval_episodes"] = s.eval_episodes;
    j["completion_rate"] = s.completion_rate;
    j["exit_age_mean"] = s.exit_age_mean;
    j["exit_age_sd"] = s.exit_age_sd;
    j["m_final_mean"] = s.m_final_mean;
    j["m_final_sd"] = s.m_final_sd;
    j["d_final_mean"] = s.d_final_mean;
    if (s.effort_checkpoints) {
        j["effort_checkpoints"] = json{{"initial", s.effort_checkpoints->initial},
                                       {"mid", s.effort_checkpoints->mid},
                                       {"late", s.effort_checkpoints->late}};
    } else {
        j["effort_checkpoints"] = nullptr;
    }
    if (s.effort_profile) {
        j["effort_profile"] = *s.effort_profile;
    } else {
        j["effort_profile"] = nullptr;
    }
    if (s.basin) {
        j["basin"] = basin_label_name(*s.basin);
    } else {
        j["basin"] = nullptr;
    }
    j["training_steps"] = s.training_steps;
    j["config_hash"] = s.config_hash;
    return j.dump(2);
}

SeedSummary seed_summary_from_json(const std::string& text) {
    const json j = json::parse(text);
    SeedSummary s;
    s.schema_version = j.at("schema_version").get<int>();
    if (s.schema_version != 1) {
        throw std::runtime_error("summary.json: unsupported schema_version");
    }
    s.seed = j.at("seed").get<std::uint64_t>();
    s.preset = j.at("preset").get<std::string>();
    s.condition = condition_from_json(j.at("condition"));
    s.eval_episodes = j.at("eval_episodes").get<int>();
    s.completion_rate = j.at("completion_rate").get<double>();
    s.exit_age_mean = j.at("exit_age_mean").get<double>();
    s.exit_age_sd = j.at("exit_age_sd").get<double>();
    s.m_final_mean = j.at("m_final_mean").get<double>();
    s.m_final_sd = j.at("m_final_sd").get<double>();
    s.d_final_mean = j.at("d_final_mean").get<double>();
    if (!j.at("effort_checkpoints").is_null()) {
        const auto& cj = j.at("effort_checkpoints");
        s.effort_checkpoints = EffortCheckpoints{cj.at("initial").get<double>(),
                                                 cj.at("mid").get<double>(),
                                                 cj.at("late").get<double>()};
    }
    if (!j.at("effort_profile").is_null()) {
        s.effort_profile = j.at("effort_profile").get<std::vector<double>>();
    }
    if (!j.at("basin").is_null()) {
        const auto name = j.at("basin").get<std::string>();
        s.basin = name == "reactive" ? BasinLabel::Reactive : BasinLabel::Other;
    }
    s.training_steps = j.at("training_steps").get<std::int64_t>();
    s.config_hash = j.at("config_hash").get<std::string>();
    return s;
}

SeedSummary summarize_seed(const std::vector<EvalEpisode>& episodes,
                           const SummarizeOptions& opt) {
    if (episodes.empty()) throw std::invalid_argument("summarize_seed: no episodes");
    SeedSummary s;
    s.seed = opt.seed;
    s.preset = opt.preset;
    s.condition = opt.condition;
    s.eval_episodes = static_cast<int>(episodes.size());
    s.training_steps = opt.training_steps;
    s.config_hash = opt.config_hash;

    std::vector<double> exit_ages, m_finals, d_finals;
    int completed = 0;
    for (const auto& e : episodes) {
        exit_ages.push_back(e.exit_age);
        m_finals.push_back(e.m_final);
        d_finals.push_back(e.d_final);
        if (e.completed) ++completed;
    }
    s.completion_rate = static_cast<double>(completed) / static_cast<double>(episodes.size());
    s.exit_age_mean = mean_of(exit_ages);
    s.exit_age_sd = sample_sd(exit_ages);
    s.m_final_mean = mean_of(m_finals);
    s.m_final_sd = sample_sd(m_finals);
    s.d_final_mean = mean_of(d_finals);

    if (s.completion_rate == 1.0 && opt.horizon > 0) {
        std::vector<double> profile(static_cast<std::size_t>(opt.horizon), 0.0);
        for (const auto& e : episodes) {
            for (int t = 0; t < opt.horizon; ++t) {
                profile[static_cast<std::size_t>(t)] +=
                    e.dominant_effort[static_cast<std::size_t>(t)];
            }
        }
        for (auto& v : profile) v /= static_cast<double>(episodes.size());

        auto at_age = [&](double age) {
            int t = static_cast<int>(std::lround(age - opt.start_age));
            t = std::clamp(t, 0, opt.horizon - 1);
            return profile[static_cast<std::size_t>(t)];
        };
        EffortCheckpoints cp{at_age(opt.checkpoint_initial_age),
                             at_age(opt.checkpoint_mid_age),
                             at_age(opt.checkpoint_late_age)};
        s.effort_profile = profile;
        s.effort_checkpoints = cp;
        s.basin = classify_basin(profile, cp);
    }
    return s;
}

}  // namespace careerlab
