// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "extremaldep/errors.hpp"
#include "extremaldep/margins.hpp"
#include "extremaldep/models.hpp"
#include "extremaldep/rng.hpp"

namespace extremaldep {

enum class MarginKind { unit_frechet, standard_uniform };

[[nodiscard]] inline std::string margin_name(MarginKind k) {
    return k == MarginKind::unit_frechet ? "frechet" : "uniform";
}

[[nodiscard]] inline MarginKind margin_from_name(const std::string& s) {
    if (s == "frechet") return MarginKind::unit_frechet;
    if (s == "uniform") return MarginKind::standard_uniform;
    throw validation_error("margin: unknown kind '" + s + "' (expected frechet|uniform)");
}

[[nodiscard]] inline Margin base_margin(MarginKind k) {
    return k == MarginKind::unit_frechet ? unit_frechet() : standard_uniform();
}

struct SeriesConfig {
    ModelSpec model{};
    MarginKind margin = MarginKind::unit_frechet;
    long n = 0;
    std::uint64_t seed = 0;

    void validate() const {
        model.validate();
        if (n < 1) throw validation_error("series config: n must be >= 1");
    }
};

// Row-major n x d array of observations in time order.
struct SampleMatrix {
    long rows = 0;
    int cols = 0;
    std::vector<double> data;
    std::vector<std::string> labels;

    static SampleMatrix make(long rows, int cols) {
        SampleMatrix m;
        m.rows = rows;
        m.cols = cols;
        m.data.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
        m.labels.reserve(static_cast<std::size_t>(cols));
        for (int c = 1; c <= cols; ++c) m.labels.push_back("c" + std::to_string(c));
        return m;
    }

    [[nodiscard]] double at(long r, int c) const {
        return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                    static_cast<std::size_t>(c)];
    }
    double& at(long r, int c) {
        return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                    static_cast<std::size_t>(c)];
    }
};

namespace detail {

// Per-generator RNG stream ids; keeps U draws and coin flips independent.
inline constexpr std::uint64_t kStreamDriver = 0;
inline constexpr std::uint64_t kStreamCoins = 1;

[[nodiscard]] inline std::vector<double> iid_margin_draws(const Margin& m, long count,
                                                          SplitMix64& rng) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (double& x : out) x = m.quantile(rng.next_unit());
    return out;
}

}  // namespace detail

// ------------------------------------------------------------------
// stationary series generators
// ------------------------------------------------------------------

// Univariate moving maximum X_t = max{Y_t, Y_{t+1}} from n+1 i.i.d. driver
// draws; each X_t has df F^2.
[[nodiscard]] inline SampleMatrix gen_max_ar_series(const SeriesConfig& cfg) {
    cfg.validate();
    Margin f = base_margin(cfg.margin);
    auto rng = stream_rng(cfg.seed, detail::kStreamDriver);
    auto y = detail::iid_margin_draws(f, cfg.n + 1, rng);
    SampleMatrix out = SampleMatrix::make(cfg.n, 1);
    for (long t = 0; t < cfg.n; ++t)
        out.at(t, 0) = std::max(y[static_cast<std::size_t>(t)], y[static_cast<std::size_t>(t) + 1]);
    return out;
}

// The (p+q)-vector view of the same series: row t is (X_t, ..., X_t, -X_t,
// ..., -X_t). Maxima of the first block and minima of the second block are
// coupled through one driver stream.
[[nodiscard]] inline SampleMatrix gen_vector_series_ex31(int p, int q, const SeriesConfig& cfg) {
    if (p < 1 || q < 1) throw validation_error("vector series: p and q must be >= 1");
    SampleMatrix x = gen_max_ar_series(cfg);
    SampleMatrix out = SampleMatrix::make(cfg.n, p + q);
    for (long t = 0; t < cfg.n; ++t) {
        for (int j = 0; j < p; ++j) out.at(t, j) = x.at(t, 0);
        for (int j = p; j < p + q; ++j) out.at(t, j) = -x.at(t, 0);
    }
    return out;
}

// Switching construction: Z_m = U_{m + J_m} with J_m a fair coin, row t is
// (Z_t, Z_{t+2}, Z_{t+1}). 3-dependent and stationary.
[[nodiscard]] inline SampleMatrix gen_three_dependent_series(const SeriesConfig& cfg) {
    cfg.validate();
    Margin h = base_margin(cfg.margin);
    auto rng_u = stream_rng(cfg.seed, detail::kStreamDriver);
    auto rng_j = stream_rng(cfg.seed, detail::kStreamCoins);
    auto u = detail::iid_margin_draws(h, cfg.n + 3, rng_u);
    std::vector<double> z(static_cast<std::size_t>(cfg.n) + 2);
    for (long m = 0; m < cfg.n + 2; ++m) {
        std::size_t shift = rng_j.next_coin() ? 1 : 0;
        z[static_cast<std::size_t>(m)] = u[static_cast<std::size_t>(m) + shift];
    }
    SampleMatrix out = SampleMatrix::make(cfg.n, 3);
    for (long t = 0; t < cfg.n; ++t) {
        out.at(t, 0) = z[static_cast<std::size_t>(t)];
        out.at(t, 1) = z[static_cast<std::size_t>(t) + 2];
        out.at(t, 2) = z[static_cast<std::size_t>(t) + 1];
    }
    return out;
}

// i.i.d. vectors with the one-observation df of the given construction, fresh
// underlying randomness per vector. Vector v depends only on (seed, v), so
// prefixes agree across different counts.
[[nodiscard]] inline SampleMatrix gen_iid_associated(const ModelSpec& spec, long count,
                                                     const SeriesConfig& cfg) {
    spec.validate();
    if (count < 0) throw validation_error("iid associated: count must be >= 0");
    Margin f = base_margin(cfg.margin);
    const int d = static_cast<int>(spec.dim());
    SampleMatrix out = SampleMatrix::make(count, d);
    for (long v = 0; v < count; ++v) {
        auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(v));
        switch (spec.kind) {
            case ModelKind::max_ar: {
                double x = std::max(f.quantile(rng.next_unit()), f.quantile(rng.next_unit()));
                for (int j = 0; j < spec.p; ++j) out.at(v, j) = x;
                for (int j = spec.p; j < d; ++j) out.at(v, j) = -x;
                break;
            }
            case ModelKind::three_dependent: {
                double u[4];
                for (double& x : u) x = f.quantile(rng.next_unit());
                std::size_t j1 = rng.next_coin() ? 1 : 0;
                std::size_t j2 = rng.next_coin() ? 1 : 0;
                std::size_t j3 = rng.next_coin() ? 1 : 0;
                double z1 = u[0 + j1], z2 = u[1 + j2], z3 = u[2 + j3];
                out.at(v, 0) = z1;
                out.at(v, 1) = z3;
                out.at(v, 2) = z2;
                break;
            }
            case ModelKind::iid_product: {
                for (int j = 0; j < d; ++j) out.at(v, j) = f.quantile(rng.next_unit());
                break;
            }
        }
    }
    return out;
}

// Dispatch used by the block estimator and the CLI: the stationary series
// whose limiting dependence structure is spec.build().
[[nodiscard]] inline SampleMatrix gen_series(const ModelSpec& spec, const SeriesConfig& cfg) {
    spec.validate();
    switch (spec.kind) {
        case ModelKind::max_ar: return gen_vector_series_ex31(spec.p, spec.q, cfg);
        case ModelKind::three_dependent: return gen_three_dependent_series(cfg);
        case ModelKind::iid_product: return gen_iid_associated(spec, cfg.n, cfg);
    }
    throw validation_error("series: unknown model kind");
}

// ------------------------------------------------------------------
// derived views and analytic laws
// ------------------------------------------------------------------

[[nodiscard]] inline SampleMatrix row_max(const SampleMatrix& in) {
    if (in.cols < 1) throw validation_error("row_max: matrix has no columns");
    SampleMatrix out = SampleMatrix::make(in.rows, 1);
    out.labels[0] = "rowmax";
    for (long t = 0; t < in.rows; ++t) {
        double m = in.at(t, 0);
        for (int c = 1; c < in.cols; ++c) m = std::max(m, in.at(t, c));
        out.at(t, 0) = m;
    }
    return out;
}

// Stationary marginal df of each component of the generated series.
[[nodiscard]] inline std::vector<Margin> series_margins(const ModelSpec& spec, MarginKind kind) {
    spec.validate();
    Margin f = base_margin(kind);
    std::vector<Margin> out;
    switch (spec.kind) {
        case ModelKind::max_ar: {
            Margin x = power(f, 2.0);
            for (int j = 0; j < spec.p; ++j) out.push_back(x);
            for (int j = 0; j < spec.q; ++j) out.push_back(negated(x));
            break;
        }
        case ModelKind::three_dependent:
            out.assign(3, f);
            break;
        case ModelKind::iid_product:
            out.assign(static_cast<std::size_t>(spec.d), f);
            break;
    }
    return out;
}

// Exact one-observation df Q(x) = P(X_1 <= x) of the construction; +inf
// entries drop the coordinate.
[[nodiscard]] inline double vector_df(const ModelSpec& spec, MarginKind kind,
                                      std::span<const double> x) {
    spec.validate();
    if (x.size() != spec.dim()) throw validation_error("vector_df: dimension mismatch");
    Margin f = base_margin(kind);
    switch (spec.kind) {
        case ModelKind::max_ar: {
            double a = x[0];
            for (int j = 1; j < spec.p; ++j) a = std::min(a, x[static_cast<std::size_t>(j)]);
            double b = x[static_cast<std::size_t>(spec.p)];
            for (int j = spec.p + 1; j < spec.p + spec.q; ++j)
                b = std::min(b, x[static_cast<std::size_t>(j)]);
            double hi = f.cdf(a), lo = f.cdf(-b);
            return std::max(0.0, hi * hi - lo * lo);
        }
        case ModelKind::three_dependent: {
            double h1 = f.cdf(x[0]), h2 = f.cdf(x[1]), h3 = f.cdf(x[2]);
            double h23 = std::min(h2, h3), h13 = std::min(h1, h3);
            return 0.5 * h1 * h2 * h3 + 0.25 * h1 * h23 + 0.25 * h2 * h13;
        }
        case ModelKind::iid_product: {
            double prod = 1.0;
            for (double xi : x) prod *= f.cdf(xi);
            return prod;
        }
    }
    throw validation_error("vector_df: unknown model kind");
}

}  // namespace extremaldep
