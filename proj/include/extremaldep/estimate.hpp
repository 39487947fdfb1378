// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "extremaldep/errors.hpp"
#include "extremaldep/margins.hpp"
#include "extremaldep/parallel.hpp"
#include "extremaldep/rng.hpp"
#include "extremaldep/simulate.hpp"
#include "extremaldep/tau.hpp"

namespace extremaldep {

// Thresholds u with n P(X_j > u_j) = tau_j per component; tau_j = 0 drops the
// coordinate (level +inf).
struct LevelSet {
    std::vector<double> levels;
    long block_n = 0;
    TauVector tau;
};

[[nodiscard]] inline LevelSet normalized_levels(std::span<const Margin> margins, long n,
                                                const TauVector& tau) {
    if (n < 1) throw validation_error("levels: n must be >= 1");
    if (margins.size() != tau.dim()) throw validation_error("levels: margin/tau dimension mismatch");
    LevelSet out;
    out.block_n = n;
    out.tau = tau;
    out.levels.reserve(tau.dim());
    for (std::size_t j = 0; j < tau.dim(); ++j) {
        if (tau[j] >= static_cast<double>(n))
            throw validation_error("levels: tau_" + std::to_string(j + 1) + " = " +
                                   std::to_string(tau[j]) + " must be < n = " + std::to_string(n));
        if (tau[j] == 0.0) {
            out.levels.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        out.levels.push_back(margins[j].quantile(1.0 - tau[j] / static_cast<double>(n)));
    }
    return out;
}

[[nodiscard]] inline LevelSet normalized_levels(const Margin& margin, long n, double tau) {
    std::vector<Margin> ms{margin};
    return normalized_levels(std::span<const Margin>(ms), n, TauVector{tau});
}

struct EstimateResult {
    double estimate = 0.0;
    double se = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    long reps = 0;
    long block_n = 0;
    std::string method;
    std::string notes;
};

namespace detail {

inline constexpr double kZ95 = 1.959963984540054;

[[nodiscard]] inline EstimateResult wrap(double est, double se, long reps, long block_n,
                                         std::string method, std::string notes = "") {
    EstimateResult r;
    r.estimate = est;
    r.se = se;
    r.ci_lo = est - kZ95 * se;
    r.ci_hi = est + kZ95 * se;
    r.reps = reps;
    r.block_n = block_n;
    r.method = std::move(method);
    r.notes = std::move(notes);
    return r;
}

[[nodiscard]] inline bool row_leq(const SampleMatrix& m, long r, std::span<const double> levels) {
    for (int c = 0; c < m.cols; ++c)
        if (m.at(r, c) > levels[static_cast<std::size_t>(c)]) return false;
    return true;
}

}  // namespace detail

// Empirical tail function: n * P(vector not componentwise <= levels) over an
// i.i.d. sample, with binomial standard error.
[[nodiscard]] inline EstimateResult estimate_gamma(const SampleMatrix& iid_sample,
                                                   const LevelSet& levels) {
    if (static_cast<std::size_t>(iid_sample.cols) != levels.levels.size())
        throw validation_error("gamma estimate: sample/levels dimension mismatch");
    if (iid_sample.rows < 1) throw validation_error("gamma estimate: empty sample");
    long exceed = 0;
    for (long r = 0; r < iid_sample.rows; ++r)
        if (!detail::row_leq(iid_sample, r, levels.levels)) ++exceed;
    double phat = static_cast<double>(exceed) / static_cast<double>(iid_sample.rows);
    double n = static_cast<double>(levels.block_n);
    double se = n * std::sqrt(phat * (1.0 - phat) / static_cast<double>(iid_sample.rows));
    return detail::wrap(n * phat, se, iid_sample.rows, levels.block_n, "gamma_empirical",
                        "exceedances=" + std::to_string(exceed));
}

// Log-ratio block estimator core: Monte Carlo numerator over stationary
// blocks, exact analytic denominator log P(iid block below levels).
[[nodiscard]] inline EstimateResult theta_blocks_from_sampler(
    const std::function<SampleMatrix(std::uint64_t)>& make_block, std::span<const double> levels,
    double log_p_iid, long block_n, long reps, std::uint64_t seed) {
    if (reps < 100) throw validation_error("theta blocks: reps must be >= 100");
    if (!(log_p_iid < 0.0) || !std::isfinite(log_p_iid))
        throw calibration_error("theta blocks: degenerate analytic block probability");
    long below = parallel_count(reps, [&](long r) {
        SampleMatrix block = make_block(mix_seed(seed, static_cast<std::uint64_t>(r)));
        for (long t = 0; t < block.rows; ++t)
            if (!detail::row_leq(block, t, levels)) return false;
        return true;
    });
    if (below == 0 || below == reps)
        throw calibration_error("theta blocks: block probability estimate hit " +
                                std::string(below == 0 ? "0" : "1") +
                                " (levels too extreme or too lax for block_n)");
    double phat = static_cast<double>(below) / static_cast<double>(reps);
    double est = std::log(phat) / log_p_iid;
    double se_p = std::sqrt(phat * (1.0 - phat) / static_cast<double>(reps));
    double se = se_p / (phat * std::fabs(log_p_iid));
    return detail::wrap(est, se, reps, block_n, "theta_blocks",
                        "p_dep=" + std::to_string(phat) + " log_p_iid=" + std::to_string(log_p_iid));
}

// Blocks estimator for a built-in construction: levels from the analytic
// stationary margins, denominator from the exact one-observation df.
[[nodiscard]] inline EstimateResult estimate_theta_blocks(const ModelSpec& spec,
                                                          const SeriesConfig& cfg,
                                                          const TauVector& tau, long block_n,
                                                          long reps) {
    spec.validate();
    if (tau.dim() != spec.dim()) throw validation_error("theta blocks: tau dimension mismatch");
    if (tau.all_zero()) throw validation_error("theta blocks: tau must have a positive entry");
    auto margins = series_margins(spec, cfg.margin);
    LevelSet levels = normalized_levels(std::span<const Margin>(margins), block_n, tau);
    double q1 = vector_df(spec, cfg.margin, levels.levels);
    if (!(q1 > 0.0 && q1 < 1.0))
        throw calibration_error("theta blocks: analytic block df is degenerate at the levels");
    double log_p_iid = static_cast<double>(block_n) * std::log(q1);
    SeriesConfig block_cfg = cfg;
    block_cfg.n = block_n;
    auto make_block = [spec, block_cfg](std::uint64_t sub_seed) {
        SeriesConfig c = block_cfg;
        c.seed = sub_seed;
        return gen_series(spec, c);
    };
    return theta_blocks_from_sampler(make_block, levels.levels, log_p_iid, block_n, reps, cfg.seed);
}

// Runs (declustering) estimator on a univariate series: fraction of
// exceedances followed by k non-exceedances.
[[nodiscard]] inline EstimateResult estimate_theta_runs(const SampleMatrix& series, double level,
                                                        int k) {
    if (series.cols != 1) throw validation_error("theta runs: series must be univariate");
    if (k < 1) throw validation_error("theta runs: k must be >= 1");
    if (series.rows < k + 1) throw validation_error("theta runs: series shorter than k+1");
    long exceed = 0, cluster_ends = 0;
    for (long t = 0; t + k < series.rows; ++t) {
        if (!(series.at(t, 0) > level)) continue;
        ++exceed;
        bool quiet = true;
        for (int s = 1; s <= k; ++s)
            if (series.at(t + s, 0) > level) {
                quiet = false;
                break;
            }
        if (quiet) ++cluster_ends;
    }
    if (exceed == 0) throw calibration_error("theta runs: no exceedances of the level");
    double est = static_cast<double>(cluster_ends) / static_cast<double>(exceed);
    double se = std::sqrt(est * (1.0 - est) / static_cast<double>(exceed));
    return detail::wrap(est, se, series.rows, 0, "theta_runs",
                        "exceedances=" + std::to_string(exceed) + " k=" + std::to_string(k));
}

}  // namespace extremaldep
