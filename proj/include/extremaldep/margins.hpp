// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "extremaldep/errors.hpp"

namespace extremaldep {

// A continuous univariate distribution function, with an analytic quantile
// when one exists and guarded bisection otherwise.
class Margin {
public:
    using Fn = std::function<double(double)>;

    Margin(std::string name, Fn cdf, Fn quantile, double support_lo, double support_hi)
        : name_(std::move(name)),
          cdf_(std::move(cdf)),
          quantile_(std::move(quantile)),
          lo_(support_lo),
          hi_(support_hi) {}

    Margin(std::string name, Fn cdf, double support_lo, double support_hi)
        : Margin(std::move(name), std::move(cdf), Fn{}, support_lo, support_hi) {}

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] double support_lo() const { return lo_; }
    [[nodiscard]] double support_hi() const { return hi_; }
    [[nodiscard]] bool has_analytic_quantile() const { return static_cast<bool>(quantile_); }

    [[nodiscard]] double cdf(double x) const { return cdf_(x); }

    [[nodiscard]] double quantile(double p) const {
        if (!(p > 0.0 && p < 1.0))
            throw validation_error("quantile: probability must lie in (0,1)");
        if (quantile_) return quantile_(p);
        return bisect_quantile(p);
    }

private:
    // Bracket the root, then bisect to relative tolerance 1e-12. Every probe
    // is checked against the previous bracket so a non-monotone cdf is
    // reported instead of silently returning garbage.
    [[nodiscard]] double bisect_quantile(double p) const {
        auto [a, b] = initial_bracket(p);
        double fa = cdf_(a), fb = cdf_(b);
        if (!(fa <= p && p <= fb))
            throw calibration_error("quantile: failed to bracket probability " + std::to_string(p) +
                                    " for margin " + name_);
        for (int it = 0; it < 400; ++it) {
            double m = 0.5 * (a + b);
            if (m <= a || m >= b) break;
            double fm = cdf_(m);
            if (!std::isfinite(fm) || fm < fa - kSlack || fm > fb + kSlack)
                throw calibration_error("quantile: non-monotone cdf detected for margin " + name_);
            if (fm < p) { a = m; fa = fm; }
            else        { b = m; fb = fm; }
            if (b - a <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)})) break;
        }
        return 0.5 * (a + b);
    }

    [[nodiscard]] std::pair<double, double> initial_bracket(double p) const {
        double a = lo_, b = hi_;
        if (!std::isfinite(a)) {
            a = std::isfinite(b) ? b - 1.0 : -1.0;
            for (int it = 0; it < 200 && cdf_(a) > p; ++it) a = (a < 0 ? a * 2.0 : a - 1.0) - 1.0;
        }
        if (!std::isfinite(b)) {
            b = std::isfinite(lo_) ? lo_ + 1.0 : 1.0;
            for (int it = 0; it < 200 && cdf_(b) < p; ++it) b = (b > 0 ? b * 2.0 : b + 1.0) + 1.0;
        }
        return {a, b};
    }

    static constexpr double kSlack = 1e-14;

    std::string name_;
    Fn cdf_;
    Fn quantile_;
    double lo_, hi_;
};

// ------------------------------------------------------------------
// stock margins
// ------------------------------------------------------------------

[[nodiscard]] inline Margin standard_uniform() {
    return Margin(
        "uniform",
        [](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); },
        [](double p) { return p; }, 0.0, 1.0);
}

[[nodiscard]] inline Margin unit_frechet() {
    return Margin(
        "frechet",
        [](double x) { return x <= 0.0 ? 0.0 : std::exp(-1.0 / x); },
        [](double p) { return -1.0 / std::log(p); }, 0.0,
        std::numeric_limits<double>::infinity());
}

// Distribution of the max of k independent copies: F^k.
[[nodiscard]] inline Margin power(const Margin& base, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw validation_error("power margin: k must be positive finite");
    Margin::Fn q;
    if (base.has_analytic_quantile())
        q = [base, k](double p) { return base.quantile(std::pow(p, 1.0 / k)); };
    return Margin(base.name() + "^" + std::to_string(k),
                  [base, k](double x) { return std::pow(base.cdf(x), k); }, std::move(q),
                  base.support_lo(), base.support_hi());
}

// Distribution of -X when X has df `base`: P(-X <= x) = 1 - F(-x)
// (continuous margins, so the boundary atom is immaterial).
[[nodiscard]] inline Margin negated(const Margin& base) {
    Margin::Fn q;
    if (base.has_analytic_quantile())
        q = [base](double p) { return -base.quantile(1.0 - p); };
    return Margin("neg[" + base.name() + "]",
                  [base](double x) { return 1.0 - base.cdf(-x); }, std::move(q),
                  -base.support_hi(), -base.support_lo());
}

// Row-maximum margin for the three-coordinate switching construction:
// P(max(Z_n, Z_{n+2}, Z_{n+1}) <= x) = H(x)^2 (H(x) + 1) / 2.
// No closed-form inverse, so quantiles go through bisection.
[[nodiscard]] inline Margin switching_rowmax(const Margin& h) {
    return Margin("rowmax[" + h.name() + "]",
                  [h](double x) {
                      double v = h.cdf(x);
                      return 0.5 * v * v * (v + 1.0);
                  },
                  h.support_lo(), h.support_hi());
}

}  // namespace extremaldep
