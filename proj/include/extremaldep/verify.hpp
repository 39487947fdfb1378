// SPDX-License-Identifier: MIT
#pragma once

// Reproduction suite: every numeric claim the toolkit is built around,
// grouped into six criteria (closed-form coefficients, verdicts, theta closed
// forms, Monte Carlo reproduction, structural properties, simulator laws).
// Shared by the `verify` CLI command and the acceptance test binary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "extremaldep/dependence.hpp"
#include "extremaldep/estimate.hpp"
#include "extremaldep/io.hpp"
#include "extremaldep/margins.hpp"
#include "extremaldep/model.hpp"
#include "extremaldep/models.hpp"
#include "extremaldep/rng.hpp"
#include "extremaldep/simulate.hpp"

namespace extremaldep {

struct SuiteOptions {
    std::uint64_t seed = 42;
    std::string suite = "all";  // all|closed|verdicts|theta|mc|props|sim
    double theta_bias = 0.0;    // sensitivity hook: shifts every known theta value
};

struct SuiteRow {
    int criterion = 0;
    std::string id;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::vector<SuiteRow> rows;

    [[nodiscard]] bool all_pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
    }

    [[nodiscard]] bool criterion_pass(int c) const {
        bool any = false;
        for (const auto& r : rows)
            if (r.criterion == c) {
                any = true;
                if (!r.pass) return false;
            }
        return any;
    }
};

// Shift every known theta value by delta (clamped into [0,1]); used to prove
// the suite actually notices a wrong cluster index.
[[nodiscard]] inline MevModel with_theta_bias(const MevModel& m, double delta) {
    if (delta == 0.0) return m;
    if (m.has_total_theta()) {
        TauFn biased = [inner = m.theta_total_fn(), delta](std::span<const double> t) {
            return std::clamp(inner(t) + delta, 0.0, 1.0);
        };
        return MevModel(m.label(), m.dim(), m.gamma_fn(), std::move(biased));
    }
    std::vector<ThetaRay> rays = m.theta_rays();
    for (auto& r : rays) r.value = std::clamp(r.value + delta, 0.0, 1.0);
    return MevModel(m.label(), m.dim(), m.gamma_fn(), std::move(rays));
}

namespace detail {

class Stopwatch {
public:
    [[nodiscard]] double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

[[nodiscard]] inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

[[nodiscard]] inline std::string fmt_ci(const EstimateResult& r) {
    std::ostringstream os;
    os.precision(6);
    os << "est=" << r.estimate << " ci95=[" << r.ci_lo << "," << r.ci_hi << "]";
    return os.str();
}

inline void add_row(std::vector<SuiteRow>& rows, int criterion, std::string id, bool pass,
                    std::string detail) {
    rows.push_back({criterion, std::move(id), pass, std::move(detail)});
}

inline void add_value_row(std::vector<SuiteRow>& rows, int criterion, std::string id, double got,
                          double want, double tol) {
    bool ok = close_rel(got, want, tol);
    add_row(rows, criterion, std::move(id), ok, "got " + fmt(got) + ", want " + fmt(want));
}

[[nodiscard]] inline bool ci_contains(const EstimateResult& r, double target) {
    return r.ci_lo <= target && target <= r.ci_hi;
}

[[nodiscard]] inline TauVector random_tau(SplitMix64& rng, std::size_t d) {
    std::vector<double> t(d);
    for (double& x : t) x = 0.05 + 3.95 * rng.next_unit();
    return TauVector(t);
}

// ---- criterion 1: closed-form coefficient table -------------------

inline void suite_closed(std::vector<SuiteRow>& rows, const SuiteOptions& opt) {
    Stopwatch sw;
    const double tol = 1e-10;
    MevModel m = with_theta_bias(three_dependent_model(), opt.theta_bias);
    MevModel mh = m.associated();
    PartitionSpec part = PartitionSpec::parse("1,2|3");

    add_value_row(rows, 1, "closed/eps_hat_Y", extremal_coefficient(mh), 2.5, tol);
    add_value_row(rows, 1, "closed/eps_Y", extremal_coefficient(m), 0.75, tol);
    add_value_row(rows, 1, "closed/eps_hat_block12", extremal_coefficient(mh.marginalize({1, 2})),
                  2.0, tol);
    add_value_row(rows, 1, "closed/eps_hat_block3", extremal_coefficient(mh.marginalize({3})), 1.0,
                  tol);
    add_value_row(rows, 1, "closed/eps_block3", extremal_coefficient(m.marginalize({3})), 0.75,
                  tol);
    add_value_row(rows, 1, "closed/eps_block12", extremal_coefficient(m.marginalize({1, 2})), 0.75,
                  tol);
    add_value_row(rows, 1, "closed/pair", pair_coefficient(m, part), 0.5, tol);
    add_value_row(rows, 1, "closed/pair_hat", pair_coefficient(mh, part), 5.0 / 6.0, tol);
    double elapsed = sw.ms();
    add_row(rows, 1, "closed/time_under_1s", elapsed < 1000.0, fmt(elapsed) + " ms");
}

// ---- criterion 2: verdicts ----------------------------------------

inline void suite_verdicts(std::vector<SuiteRow>& rows, const SuiteOptions& opt) {
    const double tol = 1e-9;
    MevModel m = with_theta_bias(three_dependent_model(), opt.theta_bias);
    PartitionSpec part = PartitionSpec::parse("1,2|3");

    add_row(rows, 2, "verdicts/three_dependent_not_independent",
            test_independence(m, part, tol) == Verdict::no, "expect verdict no");

    auto td = test_total_dependence(m, part, tol);
    bool total_ok = td.verdict == Verdict::yes && td.witness_d &&
                    std::fabs(*td.witness_d - 0.75) <= 1e-9 && td.witness_tau;
    if (total_ok)
        for (std::size_t j = 0; j < td.witness_tau->dim(); ++j)
            total_ok = total_ok && std::fabs((*td.witness_tau)[j] - 1.0) <= 1e-9;
    std::string d_str = td.witness_d ? fmt(*td.witness_d) : std::string("none");
    add_row(rows, 2, "verdicts/three_dependent_totally_dependent", total_ok,
            "verdict " + verdict_name(td.verdict) + ", witness d=" + d_str);

    bool grid_ok = true;
    std::string first_bad;
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
            MevModel ma = with_theta_bias(max_ar_model(p, q), opt.theta_bias);
            PartitionSpec split = PartitionSpec::leading(p, p + q);
            bool ok = test_independence(ma, split, tol) == Verdict::yes &&
                      test_total_dependence(ma, split, tol).verdict == Verdict::no;
            if (!ok && first_bad.empty())
                first_bad = "(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
            grid_ok = grid_ok && ok;
        }
    add_row(rows, 2, "verdicts/max_ar_grid_independent", grid_ok,
            grid_ok ? "all 16 (p,q) pairs" : "first failure at " + first_bad);

    bool iid_ok = true;
    for (int d = 2; d <= 4; ++d) {
        MevModel mi = iid_product_model(d);
        PartitionSpec split = PartitionSpec::leading(1, d);
        iid_ok = iid_ok && test_independence(mi, split, tol) == Verdict::yes &&
                 test_total_dependence(mi, split, tol).verdict == Verdict::no;
    }
    add_row(rows, 2, "verdicts/iid_product_independent", iid_ok, "d in 2..4");
}

// ---- criterion 3: theta closed forms ------------------------------

inline void suite_theta(std::vector<SuiteRow>& rows, const SuiteOptions& opt) {
    const double tol = 1e-10;
    MevModel m = with_theta_bias(three_dependent_model(), opt.theta_bias);

    add_value_row(rows, 3, "theta/three_dependent_diagonal", m.theta(TauVector{1, 1, 1}), 0.3,
                  tol);

    auto grid_rng = stream_rng(opt.seed, 301);
    const std::vector<std::pair<int, int>> shapes{{1, 1}, {2, 1}, {2, 2}, {3, 2}};
    bool grid_ok = true;
    std::string bad;
    for (auto [p, q] : shapes) {
        MevModel ma = with_theta_bias(max_ar_model(p, q), opt.theta_bias);
        PartitionSpec split = PartitionSpec::leading(p, p + q);
        for (int i = 0; i < 100; ++i) {
            TauVector tau = random_tau(grid_rng, static_cast<std::size_t>(p + q));
            double mp = 0.0, mq = 0.0;
            for (int j = 0; j < p; ++j) mp = std::max(mp, tau[static_cast<std::size_t>(j)]);
            for (int j = p; j < p + q; ++j) mq = std::max(mq, tau[static_cast<std::size_t>(j)]);
            double closed = (0.5 * mp + mq) / (mp + mq);
            double got = ma.theta(tau);
            double upper = theta_bounds(ma, split, tau).upper;
            if (!close_rel(got, closed, tol) || !close_rel(got, upper, tol)) {
                grid_ok = false;
                if (bad.empty())
                    bad = "(p=" + std::to_string(p) + ",q=" + std::to_string(q) +
                          ") tau=" + tau.str();
            }
        }
    }
    add_row(rows, 3, "theta/max_ar_formula_and_upper_bound", grid_ok,
            grid_ok ? "4 shapes x 100 random tau" : "first failure at " + bad);

    Bounds b = theta_bounds(m, PartitionSpec::parse("1,2|3"), TauVector{1, 1, 1});
    bool lower_ok = close_rel(b.lower, 0.3, tol) && close_rel(m.theta(TauVector{1, 1, 1}), b.lower, tol);
    add_row(rows, 3, "theta/three_dependent_attains_lower_bound", lower_ok,
            "lower=" + fmt(b.lower) + " upper=" + fmt(b.upper));
}

// ---- criterion 4: Monte Carlo reproduction ------------------------

inline void suite_mc(std::vector<SuiteRow>& rows, const SuiteOptions& opt) {
    Stopwatch sw;
    ModelSpec ar{ModelKind::max_ar, 1, 1, 0};

    SeriesConfig cfg_x{ar, MarginKind::unit_frechet, 1000, mix_seed(opt.seed, 401)};
    auto r_x = estimate_theta_blocks(ar, cfg_x, TauVector{1, 0}, 1000, 10000);
    add_row(rows, 4, "mc/blocks_max_ar_X_half", ci_contains(r_x, 0.5), fmt_ci(r_x));

    SeriesConfig cfg_nx{ar, MarginKind::unit_frechet, 1000, mix_seed(opt.seed, 402)};
    auto r_nx = estimate_theta_blocks(ar, cfg_nx, TauVector{0, 1}, 1000, 10000);
    add_row(rows, 4, "mc/blocks_max_ar_negX_one", ci_contains(r_nx, 1.0), fmt_ci(r_nx));

    ModelSpec td{ModelKind::three_dependent, 0, 0, 0};
    SeriesConfig cfg_w{td, MarginKind::unit_frechet, 1000000, mix_seed(opt.seed, 403)};
    SampleMatrix w = row_max(gen_three_dependent_series(cfg_w));
    Margin w_margin = switching_rowmax(unit_frechet());
    LevelSet w_levels = normalized_levels(w_margin, 1000, 1.0);
    auto r_runs = estimate_theta_runs(w, w_levels.levels[0], 2);
    add_row(rows, 4, "mc/runs_three_dependent_rowmax", ci_contains(r_runs, 0.3),
            fmt_ci(r_runs));

    SeriesConfig cfg_g{td, MarginKind::unit_frechet, 0, mix_seed(opt.seed, 404)};
    SampleMatrix sample = gen_iid_associated(td, 100000, cfg_g);
    auto margins = series_margins(td, MarginKind::unit_frechet);
    LevelSet g_levels =
        normalized_levels(std::span<const Margin>(margins), 200, TauVector{1, 1, 1});
    auto r_gamma = estimate_gamma(sample, g_levels);
    add_row(rows, 4, "mc/gamma_three_dependent_iid", ci_contains(r_gamma, 2.5),
            fmt_ci(r_gamma));

    add_row(rows, 4, "mc/duration_note", true, fmt(sw.ms()) + " ms");
}

// ---- criterion 5: structural properties ---------------------------

struct NamedModel {
    MevModel model;
    PartitionSpec part;
};

[[nodiscard]] inline std::vector<NamedModel> props_models(double bias) {
    std::vector<NamedModel> out;
    out.push_back({with_theta_bias(max_ar_model(1, 1), bias), PartitionSpec::leading(1, 2)});
    out.push_back({with_theta_bias(max_ar_model(2, 1), bias), PartitionSpec::leading(2, 3)});
    out.push_back({with_theta_bias(max_ar_model(2, 2), bias), PartitionSpec::leading(2, 4)});
    out.push_back({with_theta_bias(three_dependent_model(), bias), PartitionSpec::parse("1,2|3")});
    out.push_back({with_theta_bias(three_dependent_model(), bias).associated(),
                   PartitionSpec::parse("1,2|3")});
    out.push_back({iid_product_model(3), PartitionSpec::leading(1, 3)});
    return out;
}

// theta-known tau points for a model: anywhere for total domains, scaled ray
// representatives otherwise.
[[nodiscard]] inline std::vector<TauVector> theta_probe_points(const MevModel& m, SplitMix64& rng,
                                                               int count) {
    std::vector<TauVector> out;
    if (m.has_total_theta()) {
        for (int i = 0; i < count; ++i) out.push_back(random_tau(rng, m.dim()));
        return out;
    }
    for (const auto& ray : m.theta_rays())
        for (int i = 0; i < std::max(1, count / static_cast<int>(m.theta_rays().size())); ++i) {
            double s = 0.1 + 9.9 * rng.next_unit();
            std::vector<double> t(ray.direction);
            for (double& x : t) x *= s;
            out.push_back(TauVector(t));
        }
    return out;
}

inline void suite_props(std::vector<SuiteRow>& rows, const SuiteOptions& opt) {
    auto models = props_models(opt.theta_bias);

    {
        Stopwatch sw;
        auto rng = stream_rng(opt.seed, 501);
        bool ok = true;
        std::string bad;
        for (const auto& nm : models)
            for (int i = 0; i < 1000; ++i) {
                double t = std::exp(-3.0 + 6.0 * rng.next_unit());
                std::vector<double> y(nm.model.dim());
                for (double& v : y) v = std::exp(-(0.01 + 2.99 * rng.next_unit()));
                auto chk = check_stability(nm.model, t, y, 1e-10);
                if (!chk.pass) {
                    ok = false;
                    if (bad.empty()) bad = nm.model.label();
                }
            }
        add_row(rows, 5, "props/stability_1000_random", ok && sw.ms() < 30000.0,
                ok ? "6 models x 1000 (t,y), " + fmt(sw.ms()) + " ms" : "failed for " + bad);
    }

    {
        Stopwatch sw;
        auto rng = stream_rng(opt.seed, 502);
        bool ok = true;
        std::string bad;
        const double cs[] = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
        for (const auto& nm : models) {
            auto probes = theta_probe_points(nm.model, rng, 20);
            for (double c : cs)
                for (const auto& tau : probes) {
                    auto chk = check_homogeneity(nm.model, c, tau, 1e-12);
                    bool here = chk.gamma_order1 && chk.theta_order0.has_value() &&
                                *chk.theta_order0;
                    if (!here) {
                        ok = false;
                        if (bad.empty()) bad = nm.model.label() + " c=" + fmt(c);
                    }
                }
        }
        add_row(rows, 5, "props/homogeneity_gamma1_theta0", ok && sw.ms() < 30000.0,
                ok ? "c in 1e-3..1e3, " + fmt(sw.ms()) + " ms" : "failed for " + bad);
    }

    {
        Stopwatch sw;
        auto rng = stream_rng(opt.seed, 503);
        bool ok = true;
        std::string bad;
        const double slack = 1e-12;
        for (const auto& nm : models) {
            auto probes = theta_probe_points(nm.model, rng, 60);
            for (const auto& tau : probes) {
                double g = nm.model.gamma(tau);
                double mx = 0.0, sum = 0.0;
                for (double v : tau.values()) {
                    mx = std::max(mx, v);
                    sum += v;
                }
                bool here = g >= mx * (1.0 - slack) - slack && g <= sum * (1.0 + slack) + slack;
                double ldf = nm.model.limit_df(tau);
                Bounds db = df_bounds(nm.model, nm.part, tau);
                here = here && db.lower <= ldf * (1.0 + 1e-12) + 1e-12 &&
                       ldf <= db.upper * (1.0 + 1e-12) + 1e-12;
                double th = nm.model.theta(tau);
                Bounds tb = theta_bounds(nm.model, nm.part, tau);
                here = here && tb.lower <= th + 1e-12 && th <= tb.upper + 1e-12;
                if (!here) {
                    ok = false;
                    if (bad.empty()) bad = nm.model.label() + " tau=" + tau.str();
                }
            }
        }
        add_row(rows, 5, "props/sandwich_bounds", ok && sw.ms() < 30000.0,
                ok ? "gamma + df + theta bounds, " + fmt(sw.ms()) + " ms" : "failed at " + bad);
    }

    {
        Stopwatch sw;
        bool ok = true;
        std::string bad;
        for (const auto& nm : models) {
            Verdict v = test_independence(nm.model, nm.part, 1e-9);
            if (v == Verdict::undetermined) continue;
            double pc = pair_coefficient(nm.model, nm.part);
            bool iff = (std::fabs(pc - 1.0) <= 1e-9) == (v == Verdict::yes);
            if (!iff) {
                ok = false;
                if (bad.empty()) bad = nm.model.label();
            }
        }
        add_row(rows, 5, "props/pair_coefficient_iff_independence", ok && sw.ms() < 30000.0,
                ok ? "all built-ins" : "failed for " + bad);
    }

    {
        Stopwatch sw;
        MevModel m = with_theta_bias(three_dependent_model(), opt.theta_bias);
        PartitionSpec part = PartitionSpec::parse("1,2|3");
        auto td = test_total_dependence(m, part, 1e-9);
        bool ok = true;
        std::string note = "total dependence verdict " + verdict_name(td.verdict);
        if (td.verdict == Verdict::yes) {
            TauVector u = TauVector::unit(3);
            double ep = *block_product_at(m, part.first(), u);
            double eq = *block_product_at(m, part.second(), u);
            double pc = pair_coefficient(m, part);
            ok = close_rel(pc, std::max(ep, eq) / (ep + eq), 1e-10);
            note += ", pair=" + fmt(pc);
        }
        add_row(rows, 5, "props/total_dependence_pair_identity", ok && sw.ms() < 30000.0, note);
    }
}

// ---- criterion 6: simulator laws ----------------------------------

inline void suite_sim(std::vector<SuiteRow>& rows, const SuiteOptions& opt) {
    Stopwatch sw;
    Margin f = unit_frechet();

    {
        ModelSpec td{ModelKind::three_dependent, 0, 0, 0};
        SeriesConfig cfg{td, MarginKind::unit_frechet, 0, mix_seed(opt.seed, 601)};
        const long n = 100000;
        SampleMatrix sample = gen_iid_associated(td, n, cfg);
        double x = f.quantile(0.9);
        long hit = 0;
        for (long r = 0; r < n; ++r)
            if (sample.at(r, 0) <= x && sample.at(r, 1) <= x && sample.at(r, 2) <= x) ++hit;
        double emp = static_cast<double>(hit) / static_cast<double>(n);
        double h = 0.9;
        double target = 0.5 * h * h * h + 0.5 * h * h;
        double sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(n));
        add_row(rows, 6, "sim/three_dependent_df_probe",
                std::fabs(emp - target) <= 3.0 * sigma,
                "emp=" + fmt(emp) + " target=" + fmt(target) + " 3sigma=" + fmt(3.0 * sigma));
    }

    {
        ModelSpec ar{ModelKind::max_ar, 1, 1, 0};
        const long block_n = 2000, reps = 3000;
        auto margins = series_margins(ar, MarginKind::unit_frechet);
        LevelSet levels =
            normalized_levels(std::span<const Margin>(margins), block_n, TauVector{1, 1});
        std::uint64_t seed = mix_seed(opt.seed, 602);
        long below = parallel_count(reps, [&](long r) {
            SeriesConfig cfg{ar, MarginKind::unit_frechet, block_n, mix_seed(seed, static_cast<std::uint64_t>(r))};
            SampleMatrix block = gen_vector_series_ex31(1, 1, cfg);
            for (long t = 0; t < block.rows; ++t)
                for (int c = 0; c < block.cols; ++c)
                    if (block.at(t, c) > levels.levels[static_cast<std::size_t>(c)]) return false;
            return true;
        });
        double emp = static_cast<double>(below) / static_cast<double>(reps);
        double target = std::exp(-(0.5 * 1.0 + 1.0));
        double sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(reps));
        add_row(rows, 6, "sim/max_ar_block_extreme_law", std::fabs(emp - target) <= 3.0 * sigma,
                "emp=" + fmt(emp) + " target=" + fmt(target) + " 3sigma=" + fmt(3.0 * sigma));
    }

    {
        ModelSpec td{ModelKind::three_dependent, 0, 0, 0};
        const long n = 200000;
        SeriesConfig cfg{td, MarginKind::unit_frechet, n, mix_seed(opt.seed, 603)};
        SampleMatrix w = row_max(gen_three_dependent_series(cfg));
        double level = f.quantile(0.9);
        std::vector<char> exc(static_cast<std::size_t>(n));
        double pbar = 0.0;
        for (long t = 0; t < n; ++t) {
            exc[static_cast<std::size_t>(t)] = w.at(t, 0) > level ? 1 : 0;
            pbar += exc[static_cast<std::size_t>(t)];
        }
        pbar /= static_cast<double>(n);
        auto lag_corr = [&](int lag) {
            double cov = 0.0;
            long m = n - lag;
            for (long t = 0; t < m; ++t)
                cov += (exc[static_cast<std::size_t>(t)] - pbar) *
                       (exc[static_cast<std::size_t>(t + lag)] - pbar);
            return cov / (static_cast<double>(m) * pbar * (1.0 - pbar));
        };
        double bartlett = 1.0;
        for (int lag = 1; lag <= 3; ++lag) {
            double r = lag_corr(lag);
            bartlett += 2.0 * r * r;
        }
        double band = 3.0 * std::sqrt(bartlett / static_cast<double>(n));
        bool ok = true;
        double worst = 0.0;
        for (int lag = 4; lag <= 8; ++lag) {
            double r = lag_corr(lag);
            worst = std::max(worst, std::fabs(r));
            ok = ok && std::fabs(r) <= band;
        }
        add_row(rows, 6, "sim/three_dependent_lag_decorrelation", ok,
                "max |corr| at lag 4..8 = " + fmt(worst) + ", band=" + fmt(band));
    }

    double elapsed = sw.ms();
    add_row(rows, 6, "sim/time_under_1min", elapsed < 60000.0, fmt(elapsed) + " ms");
}

}  // namespace detail

[[nodiscard]] inline SuiteReport run_verification(const SuiteOptions& opt) {
    const std::vector<std::string> known{"all", "closed", "verdicts", "theta", "mc", "props", "sim"};
    if (std::find(known.begin(), known.end(), opt.suite) == known.end())
        throw validation_error("verify: unknown suite '" + opt.suite + "'");
    auto want = [&](const char* g) { return opt.suite == "all" || opt.suite == g; };
    SuiteReport report;
    if (want("closed")) detail::suite_closed(report.rows, opt);
    if (want("verdicts")) detail::suite_verdicts(report.rows, opt);
    if (want("theta")) detail::suite_theta(report.rows, opt);
    if (want("mc")) detail::suite_mc(report.rows, opt);
    if (want("props")) detail::suite_props(report.rows, opt);
    if (want("sim")) detail::suite_sim(report.rows, opt);
    return report;
}

[[nodiscard]] inline nlohmann::json to_json(const SuiteReport& report, const SuiteOptions& opt) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"criterion", r.criterion},
                        {"id", r.id},
                        {"pass", r.pass},
                        {"detail", r.detail}});
    nlohmann::json criteria;
    for (int c = 1; c <= 6; ++c) {
        bool any = std::any_of(report.rows.begin(), report.rows.end(),
                               [c](const SuiteRow& r) { return r.criterion == c; });
        if (any) criteria[std::to_string(c)] = report.criterion_pass(c);
    }
    nlohmann::json j{{"seed", opt.seed},
                     {"suite", opt.suite},
                     {"rows", rows},
                     {"criteria", criteria},
                     {"all_pass", report.all_pass()}};
    if (opt.theta_bias != 0.0) j["theta_bias"] = opt.theta_bias;
    return j;
}

}  // namespace extremaldep
