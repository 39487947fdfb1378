// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "extremaldep/errors.hpp"
#include "extremaldep/model.hpp"

namespace extremaldep {

// ------------------------------------------------------------------
// built-in dependence structures
// ------------------------------------------------------------------

// Max-autoregressive construction: X_n = max{Y_n, Y_{n+1}} observed as a
// (p+q)-vector (X repeated p times, -X repeated q times). Maxima of X cluster
// in pairs (index 1/2); minima of X do not cluster (index 1). The tail
// function splits additively across the two blocks.
[[nodiscard]] inline MevModel max_ar_model(int p, int q) {
    if (p < 1 || q < 1) throw validation_error("max_ar_model: p and q must be >= 1");
    auto d = static_cast<std::size_t>(p + q);
    auto block_maxes = [p](std::span<const double> t) {
        double mp = 0.0, mq = 0.0;
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j < static_cast<std::size_t>(p)) mp = std::max(mp, t[j]);
            else mq = std::max(mq, t[j]);
        }
        return std::pair{mp, mq};
    };
    TauFn gamma = [block_maxes](std::span<const double> t) {
        auto [mp, mq] = block_maxes(t);
        return mp + mq;
    };
    TauFn theta = [block_maxes](std::span<const double> t) {
        auto [mp, mq] = block_maxes(t);
        return (0.5 * mp + mq) / (mp + mq);
    };
    return MevModel("max_ar(" + std::to_string(p) + "," + std::to_string(q) + ")", d,
                    std::move(gamma), std::move(theta));
}

// Three-coordinate switching construction: Z_n picks U_n or U_{n+1} by a fair
// coin, observed as (Z_n, Z_{n+2}, Z_{n+1}). gamma is the four-branch
// piecewise-linear function read off -log of the attractor; theta is known on
// the diagonal, the axes, and the {1,2} face diagonal.
[[nodiscard]] inline MevModel three_dependent_model() {
    TauFn gamma = [](std::span<const double> t) {
        double t1 = t[0], t2 = t[1], t3 = t[2];
        if (t1 > t3 && t2 > t3) return t1 + t2 + 0.5 * t3;
        if (t1 > t3 && t3 >= t2) return t1 + 0.75 * t2 + 0.75 * t3;
        if (t3 >= t1 && t2 > t3) return 0.75 * t1 + t2 + 0.75 * t3;
        return 0.75 * t1 + 0.75 * t2 + t3;
    };
    std::vector<ThetaRay> rays = {
        {{1.0, 1.0, 1.0}, 3.0 / 10.0},
        {{1.0, 0.0, 0.0}, 3.0 / 4.0},
        {{0.0, 1.0, 0.0}, 3.0 / 4.0},
        {{0.0, 0.0, 1.0}, 3.0 / 4.0},
        {{1.0, 1.0, 0.0}, 3.0 / 8.0},
    };
    return MevModel("three_dependent", 3, std::move(gamma), std::move(rays));
}

// Independent components baseline: product attractor, no clustering.
[[nodiscard]] inline MevModel iid_product_model(int d) {
    if (d < 1) throw validation_error("iid_product_model: d must be >= 1");
    TauFn gamma = [](std::span<const double> t) {
        double s = 0.0;
        for (double x : t) s += x;
        return s;
    };
    TauFn theta = [](std::span<const double>) { return 1.0; };
    return MevModel("iid_product(" + std::to_string(d) + ")", static_cast<std::size_t>(d),
                    std::move(gamma), std::move(theta));
}

// ------------------------------------------------------------------
// serializable model descriptions
// ------------------------------------------------------------------

enum class ModelKind { max_ar, three_dependent, iid_product };

[[nodiscard]] inline std::string kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::max_ar: return "max_ar";
        case ModelKind::three_dependent: return "three_dependent";
        case ModelKind::iid_product: return "iid_product";
    }
    throw validation_error("model spec: unknown kind");
}

[[nodiscard]] inline ModelKind kind_from_name(const std::string& s) {
    if (s == "max_ar") return ModelKind::max_ar;
    if (s == "three_dependent") return ModelKind::three_dependent;
    if (s == "iid_product") return ModelKind::iid_product;
    throw validation_error("model spec: unknown kind '" + s + "'");
}

struct ModelSpec {
    ModelKind kind = ModelKind::three_dependent;
    int p = 1;  // max_ar only
    int q = 1;  // max_ar only
    int d = 3;  // iid_product only

    void validate() const {
        switch (kind) {
            case ModelKind::max_ar:
                if (p < 1 || q < 1) throw validation_error("model spec: max_ar needs p,q >= 1");
                return;
            case ModelKind::three_dependent:
                return;
            case ModelKind::iid_product:
                if (d < 1) throw validation_error("model spec: iid_product needs d >= 1");
                return;
        }
        throw validation_error("model spec: unknown kind");
    }

    [[nodiscard]] std::size_t dim() const {
        validate();
        switch (kind) {
            case ModelKind::max_ar: return static_cast<std::size_t>(p + q);
            case ModelKind::three_dependent: return 3;
            case ModelKind::iid_product: return static_cast<std::size_t>(d);
        }
        return 0;
    }

    [[nodiscard]] MevModel build() const {
        validate();
        switch (kind) {
            case ModelKind::max_ar: return max_ar_model(p, q);
            case ModelKind::three_dependent: return three_dependent_model();
            case ModelKind::iid_product: return iid_product_model(d);
        }
        throw validation_error("model spec: unknown kind");
    }
};

}  // namespace extremaldep
