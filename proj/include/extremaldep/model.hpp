// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extremaldep/errors.hpp"
#include "extremaldep/tau.hpp"

namespace extremaldep {

using TauFn = std::function<double(std::span<const double>)>;

// One ray on which the cluster-size index theta is known: theta is constant
// along {c * direction : c > 0} by order-0 homogeneity.
struct ThetaRay {
    std::vector<double> direction;
    double value = 1.0;
};

// A limiting multivariate extreme value dependence structure on the
// exponential-intensity scale: the stable tail function gamma (defined
// everywhere), and the extremal index function theta (defined either
// everywhere or only on declared rays).
class MevModel {
public:
    MevModel(std::string label, std::size_t dim, TauFn gamma, TauFn theta_total)
        : label_(std::move(label)),
          dim_(dim),
          gamma_(std::move(gamma)),
          theta_total_(std::move(theta_total)) {
        if (dim_ == 0) throw validation_error("model: dimension must be >= 1");
    }

    MevModel(std::string label, std::size_t dim, TauFn gamma, std::vector<ThetaRay> theta_rays)
        : label_(std::move(label)), dim_(dim), gamma_(std::move(gamma)), rays_(std::move(theta_rays)) {
        if (dim_ == 0) throw validation_error("model: dimension must be >= 1");
        for (const auto& r : rays_)
            if (r.direction.size() != dim_)
                throw validation_error("model: theta ray dimension mismatch");
    }

    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] bool has_total_theta() const { return static_cast<bool>(theta_total_); }
    [[nodiscard]] const std::vector<ThetaRay>& theta_rays() const { return rays_; }
    [[nodiscard]] const TauFn& gamma_fn() const { return gamma_; }
    [[nodiscard]] const TauFn& theta_total_fn() const { return theta_total_; }

    [[nodiscard]] double gamma(const TauVector& tau) const {
        require_dim(tau);
        if (tau.all_zero()) return 0.0;
        double g = gamma_(tau.values());
        if (!std::isfinite(g) || g < 0.0)
            throw validation_error("model '" + label_ + "': gamma evaluator returned " + std::to_string(g));
        return g;
    }

    // Throws insufficient_model_data off the declared theta domain.
    [[nodiscard]] double theta(const TauVector& tau) const {
        require_dim(tau);
        if (tau.all_zero())
            throw validation_error("theta: tau must have a positive entry");
        auto t = theta_at(tau);
        if (!t)
            throw insufficient_model_data("model '" + label_ + "': theta is not known at tau=" + tau.str());
        return *t;
    }

    // nullopt when theta is unknown (or tau is degenerate all-zero).
    [[nodiscard]] std::optional<double> theta_at(const TauVector& tau) const {
        require_dim(tau);
        if (tau.all_zero()) return std::nullopt;
        if (theta_total_) return checked_theta(theta_total_(tau.values()));
        for (const auto& r : rays_)
            if (on_ray(tau, r.direction)) return checked_theta(r.value);
        return std::nullopt;
    }

    [[nodiscard]] double attractor_df(const TauVector& tau) const { return std::exp(-gamma(tau)); }

    [[nodiscard]] double limit_df(const TauVector& tau) const {
        return std::exp(-theta(tau) * gamma(tau));
    }

    // Sub-model over the kept coordinates (1-based, strictly increasing):
    // evaluation of the parent with zeros in the dropped slots, which is the
    // exact marginal limit for intensity-scale models.
    [[nodiscard]] MevModel marginalize(const std::vector<int>& keep) const {
        validate_keep(keep);
        const std::size_t sub_d = keep.size();
        auto lift = [keep, d = dim_](std::span<const double> sub) {
            std::vector<double> full(d, 0.0);
            for (std::size_t i = 0; i < keep.size(); ++i)
                full[static_cast<std::size_t>(keep[i] - 1)] = sub[i];
            return full;
        };
        TauFn sub_gamma = [g = gamma_, lift](std::span<const double> sub) {
            auto full = lift(sub);
            return g(full);
        };
        std::string sub_label = label_ + "|" + index_list(keep);
        if (theta_total_) {
            TauFn sub_theta = [t = theta_total_, lift](std::span<const double> sub) {
                auto full = lift(sub);
                return t(full);
            };
            return MevModel(std::move(sub_label), sub_d, std::move(sub_gamma), std::move(sub_theta));
        }
        std::vector<ThetaRay> sub_rays;
        for (const auto& r : rays_) {
            bool supported_outside = false;
            for (std::size_t j = 0; j < dim_; ++j)
                if (r.direction[j] > 0.0 &&
                    std::find(keep.begin(), keep.end(), static_cast<int>(j) + 1) == keep.end())
                    supported_outside = true;
            if (supported_outside) continue;
            ThetaRay pr;
            pr.value = r.value;
            pr.direction.reserve(sub_d);
            for (int j : keep) pr.direction.push_back(r.direction[static_cast<std::size_t>(j - 1)]);
            sub_rays.push_back(std::move(pr));
        }
        return MevModel(std::move(sub_label), sub_d, std::move(sub_gamma), std::move(sub_rays));
    }

    // Same attractor, clustering removed: the model of the associated i.i.d.
    // vector sequence, with theta identically 1.
    [[nodiscard]] MevModel associated() const {
        return MevModel(label_ + "^", dim_, gamma_,
                        TauFn([](std::span<const double>) { return 1.0; }));
    }

private:
    void require_dim(const TauVector& tau) const {
        if (tau.dim() != dim_)
            throw validation_error("model '" + label_ + "': tau dimension " +
                                   std::to_string(tau.dim()) + " != " + std::to_string(dim_));
    }

    [[nodiscard]] static double checked_theta(double t) {
        if (!std::isfinite(t) || t < -1e-12 || t > 1.0 + 1e-12)
            throw validation_error("model: theta evaluator returned " + std::to_string(t) +
                                   ", outside [0,1]");
        return std::clamp(t, 0.0, 1.0);
    }

    // tau lies on the ray iff supports coincide and all ratios tau_j / dir_j
    // agree to relative tolerance 1e-9.
    [[nodiscard]] static bool on_ray(const TauVector& tau, const std::vector<double>& dir) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t j = 0; j < dir.size(); ++j) {
            bool tz = tau[j] == 0.0, dz = dir[j] == 0.0;
            if (tz != dz) return false;
            if (tz) continue;
            double r = tau[j] / dir[j];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        return hi > 0.0 && (hi - lo) <= 1e-9 * hi;
    }

    void validate_keep(const std::vector<int>& keep) const {
        if (keep.empty()) throw validation_error("marginalize: keep set is empty");
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if (keep[i] < 1 || static_cast<std::size_t>(keep[i]) > dim_)
                throw validation_error("marginalize: index " + std::to_string(keep[i]) +
                                       " out of 1.." + std::to_string(dim_));
            if (i && keep[i] <= keep[i - 1])
                throw validation_error("marginalize: keep indices must be strictly increasing");
        }
    }

    [[nodiscard]] static std::string index_list(const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    }

    std::string label_;
    std::size_t dim_;
    TauFn gamma_;
    TauFn theta_total_;
    std::vector<ThetaRay> rays_;
};

// ------------------------------------------------------------------
// structural checks
// ------------------------------------------------------------------

struct StabilityCheck {
    double lhs = 0.0, rhs = 0.0;
    bool pass = false;
};

// Max-stability of the attractor copula D(y) = exp(-gamma(-log y)):
// D^t(y) must equal D(y^t).
[[nodiscard]] inline StabilityCheck check_stability(const MevModel& m, double t,
                                                    std::span<const double> y, double tol) {
    if (!(t > 0.0) || !std::isfinite(t)) throw validation_error("check_stability: t must be positive finite");
    if (y.size() != m.dim()) throw validation_error("check_stability: y dimension mismatch");
    std::vector<double> tau(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (!(y[j] > 0.0 && y[j] <= 1.0))
            throw validation_error("check_stability: y entries must lie in (0,1]");
        tau[j] = -std::log(y[j]);
    }
    TauVector tv(tau);
    StabilityCheck out;
    out.lhs = std::exp(-t * m.gamma(tv));
    out.rhs = std::exp(-m.gamma(tv.scaled(t)));
    out.pass = std::fabs(out.lhs - out.rhs) <= tol;
    return out;
}

struct HomogeneityCheck {
    bool gamma_order1 = false;
    std::optional<bool> theta_order0;  // empty when theta is unknown at a test point
};

// gamma must scale linearly (gamma(c tau) = c gamma(tau)) and theta must not
// scale at all; the theta half degrades to "unknown" off the declared domain.
[[nodiscard]] inline HomogeneityCheck check_homogeneity(const MevModel& m, double c,
                                                        const TauVector& tau, double tol) {
    if (!(c > 0.0) || !std::isfinite(c)) throw validation_error("check_homogeneity: c must be positive finite");
    HomogeneityCheck out;
    double base = m.gamma(tau);
    double scaled = m.gamma(tau.scaled(c));
    out.gamma_order1 = std::fabs(scaled - c * base) <= tol * std::max(1.0, std::fabs(c * base));
    auto t0 = m.theta_at(tau);
    auto t1 = m.theta_at(tau.scaled(c));
    if (t0 && t1) out.theta_order0 = std::fabs(*t0 - *t1) <= tol;
    return out;
}

}  // namespace extremaldep
