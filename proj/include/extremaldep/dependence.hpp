// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "extremaldep/errors.hpp"
#include "extremaldep/model.hpp"
#include "extremaldep/tau.hpp"

namespace extremaldep {

enum class Verdict { yes, no, undetermined };

[[nodiscard]] inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

namespace detail {

[[nodiscard]] inline bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// theta * gamma of one block at the given tau, with the other block's
// coordinates zeroed (the marginal limit). An all-zero block contributes 0.
// nullopt when theta is unknown there.
[[nodiscard]] inline std::optional<double> block_product_at(const MevModel& m,
                                                            const std::vector<int>& block,
                                                            const TauVector& tau) {
    TauVector embedded = tau.restrict_to(block).embed(block, m.dim());
    if (embedded.all_zero()) return 0.0;
    auto th = m.theta_at(embedded);
    if (!th) return std::nullopt;
    return *th * m.gamma(embedded);
}

[[nodiscard]] inline double block_product(const MevModel& m, const std::vector<int>& block,
                                          const TauVector& tau) {
    auto v = block_product_at(m, block, tau);
    if (!v)
        throw insufficient_model_data("model '" + m.label() +
                                      "': theta unknown on block restriction of tau=" + tau.str());
    return *v;
}

}  // namespace detail

// theta(1) * gamma(1): the effective number of independent components in the
// limit law. Classical extremal coefficient when theta == 1.
[[nodiscard]] inline double extremal_coefficient(const MevModel& m) {
    TauVector u = TauVector::unit(m.dim());
    return m.theta(u) * m.gamma(u);
}

// eps of the whole vector over the sum of the two block eps values; equals 1
// exactly when the blocks are independent.
[[nodiscard]] inline double pair_coefficient(const MevModel& m, const PartitionSpec& part) {
    part.validate_for(m.dim());
    TauVector u = TauVector::unit(m.dim());
    double eY = m.theta(u) * m.gamma(u);
    double ep = detail::block_product(m, part.first(), u);
    double eq = detail::block_product(m, part.second(), u);
    return eY / (ep + eq);
}

struct Bounds {
    double lower = 0.0, upper = 0.0;
};

// Joint-limit df sandwich: product of the block limit dfs from below (the
// independent case), minimum of them from above (the totally dependent case).
[[nodiscard]] inline Bounds df_bounds(const MevModel& m, const PartitionSpec& part,
                                      const TauVector& tau) {
    part.validate_for(m.dim());
    double ap = detail::block_product(m, part.first(), tau);
    double aq = detail::block_product(m, part.second(), tau);
    return {std::exp(-(ap + aq)), std::exp(-std::max(ap, aq))};
}

// The same sandwich on the cluster index scale, normalized by gamma(tau).
[[nodiscard]] inline Bounds theta_bounds(const MevModel& m, const PartitionSpec& part,
                                         const TauVector& tau) {
    part.validate_for(m.dim());
    if (tau.all_zero()) throw validation_error("theta_bounds: tau must have a positive entry");
    double ap = detail::block_product(m, part.first(), tau);
    double aq = detail::block_product(m, part.second(), tau);
    double g = m.gamma(tau);
    return {std::max(ap, aq) / g, (ap + aq) / g};
}

// Independence of the two blocks holds iff the unit-vector products are
// additive: theta(1) gamma(1) = block_p + block_q (equivalently pair
// coefficient 1).
[[nodiscard]] inline Verdict test_independence(const MevModel& m, const PartitionSpec& part,
                                               double tol) {
    part.validate_for(m.dim());
    TauVector u = TauVector::unit(m.dim());
    auto th = m.theta_at(u);
    auto ap = detail::block_product_at(m, part.first(), u);
    auto aq = detail::block_product_at(m, part.second(), u);
    if (!th || !ap || !aq) return Verdict::undetermined;
    double whole = *th * m.gamma(u);
    return detail::close_rel(whole, *ap + *aq, tol) ? Verdict::yes : Verdict::no;
}

struct TotalDependenceResult {
    Verdict verdict = Verdict::undetermined;
    std::optional<TauVector> witness_tau;  // set on yes
    std::optional<double> witness_d;       // common value theta_j tau_j at the witness
    std::optional<bool> necessary_ok;      // cross-block product equality at the candidate
    std::optional<bool> consistency_ok;    // theta(tau*) == 1/gamma(tau*/d)
};

// Total dependence test. The defining equalities theta_j tau_j = d pin tau to
// the single ray (1/theta_1, ..., 1/theta_d) up to scale, so testing one
// normalized point on that ray is exhaustive. The candidate is scaled so
// max_j tau_j = 1, making d = min_j theta_j.
[[nodiscard]] inline TotalDependenceResult test_total_dependence(const MevModel& m,
                                                                 const PartitionSpec& part,
                                                                 double tol) {
    part.validate_for(m.dim());
    const std::size_t d = m.dim();
    TotalDependenceResult out;

    std::vector<double> axis_theta(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<double> e(d, 0.0);
        e[j] = 1.0;
        auto tj = m.theta_at(TauVector(e));
        if (!tj || *tj <= tol) return out;  // undetermined: no usable marginal index
        axis_theta[j] = *tj;
    }

    double min_theta = *std::min_element(axis_theta.begin(), axis_theta.end());
    std::vector<double> cand(d);
    for (std::size_t j = 0; j < d; ++j) cand[j] = min_theta / axis_theta[j];
    TauVector tau_star(cand);
    double d_val = min_theta;

    auto ap = detail::block_product_at(m, part.first(), tau_star);
    auto aq = detail::block_product_at(m, part.second(), tau_star);
    if (ap && aq) {
        out.necessary_ok = detail::close_rel(*ap, *aq, tol);
        if (!*out.necessary_ok) {
            out.verdict = Verdict::no;
            return out;
        }
    }

    auto th = m.theta_at(tau_star);
    if (!th) return out;  // undetermined: candidate off the theta domain

    double g = m.gamma(tau_star);
    out.consistency_ok = detail::close_rel(*th, 1.0 / m.gamma(tau_star.scaled(1.0 / d_val)), tol);
    if (detail::close_rel(g * *th, d_val, tol)) {
        out.verdict = Verdict::yes;
        out.witness_tau = tau_star;
        out.witness_d = d_val;
    } else {
        out.verdict = Verdict::no;
    }
    return out;
}

// Everything about one model + partition in one bundle: coefficient table,
// bounds at a reference tau, and both verdicts.
struct CoefficientReport {
    std::string model_label;
    std::string partition;
    std::vector<double> reference_tau;
    double tol = 1e-9;
    std::optional<double> epsilon_Y;
    std::optional<double> epsilon_p;
    std::optional<double> epsilon_q;
    std::optional<double> pair_epsilon;
    std::optional<double> theta_reference;
    std::optional<double> theta_lower;
    std::optional<double> theta_upper;
    Verdict verdict_independent = Verdict::undetermined;
    Verdict verdict_total_dep = Verdict::undetermined;
    std::optional<std::vector<double>> witness_tau;
    std::optional<double> witness_d;

    [[nodiscard]] bool undetermined() const {
        return verdict_independent == Verdict::undetermined ||
               verdict_total_dep == Verdict::undetermined;
    }
};

[[nodiscard]] inline CoefficientReport make_report(const MevModel& m, const PartitionSpec& part,
                                                   const TauVector& tau, double tol) {
    part.validate_for(m.dim());
    if (tau.dim() != m.dim()) throw validation_error("report: tau dimension mismatch");
    CoefficientReport r;
    r.model_label = m.label();
    r.partition = part.str();
    r.reference_tau.assign(tau.values().begin(), tau.values().end());
    r.tol = tol;

    TauVector u = TauVector::unit(m.dim());
    if (auto th = m.theta_at(u)) r.epsilon_Y = *th * m.gamma(u);
    if (auto ap = detail::block_product_at(m, part.first(), u)) r.epsilon_p = *ap;
    if (auto aq = detail::block_product_at(m, part.second(), u)) r.epsilon_q = *aq;
    if (r.epsilon_Y && r.epsilon_p && r.epsilon_q)
        r.pair_epsilon = *r.epsilon_Y / (*r.epsilon_p + *r.epsilon_q);

    if (!tau.all_zero()) {
        if (auto th = m.theta_at(tau)) r.theta_reference = *th;
        auto bp = detail::block_product_at(m, part.first(), tau);
        auto bq = detail::block_product_at(m, part.second(), tau);
        if (bp && bq) {
            double g = m.gamma(tau);
            r.theta_lower = std::max(*bp, *bq) / g;
            r.theta_upper = (*bp + *bq) / g;
        }
    }

    r.verdict_independent = test_independence(m, part, tol);
    auto td = test_total_dependence(m, part, tol);
    r.verdict_total_dep = td.verdict;
    if (td.witness_tau)
        r.witness_tau = std::vector<double>(td.witness_tau->values().begin(),
                                            td.witness_tau->values().end());
    r.witness_d = td.witness_d;
    return r;
}

}  // namespace extremaldep
