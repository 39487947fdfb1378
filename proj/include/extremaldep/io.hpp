// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "extremaldep/dependence.hpp"
#include "extremaldep/errors.hpp"
#include "extremaldep/estimate.hpp"
#include "extremaldep/models.hpp"
#include "extremaldep/simulate.hpp"
#include "extremaldep/version.hpp"

namespace extremaldep {

// ------------------------------------------------------------------
// CSV, format: header "t,c1,...,cd", values at 17 significant digits
// ------------------------------------------------------------------

inline void write_csv(const std::string& path, const SampleMatrix& m) {
    std::ofstream out(path);
    if (!out) throw validation_error("csv: cannot open '" + path + "' for writing");
    out << 't';
    for (const auto& label : m.labels) out << ',' << label;
    out << '\n';
    char buf[40];
    for (long r = 0; r < m.rows; ++r) {
        out << (r + 1);
        for (int c = 0; c < m.cols; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", m.at(r, c));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw validation_error("csv: write failed for '" + path + "'");
}

[[nodiscard]] inline SampleMatrix read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw validation_error("csv: '" + path + "' is empty");
    SampleMatrix m;
    {
        std::stringstream header(line);
        std::string cell;
        bool first = true;
        while (std::getline(header, cell, ',')) {
            if (first) {
                if (cell != "t") throw validation_error("csv: expected leading 't' column");
                first = false;
                continue;
            }
            m.labels.push_back(cell);
        }
    }
    m.cols = static_cast<int>(m.labels.size());
    if (m.cols == 0) throw validation_error("csv: no data columns in '" + path + "'");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        int col = -1;  // -1 = time index column
        while (std::getline(row, cell, ',')) {
            if (col >= 0) {
                char* end = nullptr;
                double v = std::strtod(cell.c_str(), &end);
                if (end == cell.c_str()) throw validation_error("csv: bad number '" + cell + "'");
                m.data.push_back(v);
            }
            ++col;
        }
        if (col != m.cols)
            throw validation_error("csv: row has " + std::to_string(col) + " values, expected " +
                                   std::to_string(m.cols));
        ++m.rows;
    }
    return m;
}

// ------------------------------------------------------------------
// JSON
// ------------------------------------------------------------------

[[nodiscard]] inline nlohmann::json to_json(const ModelSpec& spec) {
    nlohmann::json j{{"kind", kind_name(spec.kind)}};
    switch (spec.kind) {
        case ModelKind::max_ar:
            j["p"] = spec.p;
            j["q"] = spec.q;
            break;
        case ModelKind::iid_product:
            j["d"] = spec.d;
            break;
        case ModelKind::three_dependent:
            break;
    }
    return j;
}

[[nodiscard]] inline ModelSpec model_spec_from_json(const nlohmann::json& j) {
    ModelSpec spec;
    spec.kind = kind_from_name(j.at("kind").get<std::string>());
    if (spec.kind == ModelKind::max_ar) {
        spec.p = j.at("p").get<int>();
        spec.q = j.at("q").get<int>();
    } else if (spec.kind == ModelKind::iid_product) {
        spec.d = j.at("d").get<int>();
    }
    spec.validate();
    return spec;
}

[[nodiscard]] inline nlohmann::json to_json(const EstimateResult& r) {
    return nlohmann::json{{"estimate", r.estimate},
                          {"se", r.se},
                          {"ci95", {r.ci_lo, r.ci_hi}},
                          {"reps", r.reps},
                          {"block_n", r.block_n},
                          {"method", r.method},
                          {"notes", r.notes}};
}

namespace detail {

template <class T>
[[nodiscard]] nlohmann::json opt_json(const std::optional<T>& v) {
    if (v) return *v;
    return nullptr;
}

}  // namespace detail

[[nodiscard]] inline nlohmann::json to_json(const CoefficientReport& r) {
    return nlohmann::json{{"model", r.model_label},
                          {"partition", r.partition},
                          {"tau", r.reference_tau},
                          {"tol", r.tol},
                          {"epsilon_Y", detail::opt_json(r.epsilon_Y)},
                          {"epsilon_p", detail::opt_json(r.epsilon_p)},
                          {"epsilon_q", detail::opt_json(r.epsilon_q)},
                          {"pair_epsilon", detail::opt_json(r.pair_epsilon)},
                          {"theta", detail::opt_json(r.theta_reference)},
                          {"theta_lower", detail::opt_json(r.theta_lower)},
                          {"theta_upper", detail::opt_json(r.theta_upper)},
                          {"verdict_independent", verdict_name(r.verdict_independent)},
                          {"verdict_total_dep", verdict_name(r.verdict_total_dep)},
                          {"witness_tau", detail::opt_json(r.witness_tau)},
                          {"witness_d", detail::opt_json(r.witness_d)}};
}

// ------------------------------------------------------------------
// run manifests
// ------------------------------------------------------------------

struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::uint64_t seed = 0;
    double duration_ms = 0.0;
};

[[nodiscard]] inline nlohmann::json to_json(const RunManifest& m) {
    return nlohmann::json{{"command", m.command},
                          {"config", m.config},
                          {"seed", m.seed},
                          {"version", kVersion},
                          {"duration_ms", m.duration_ms}};
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw validation_error("json: cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw validation_error("json: write failed for '" + path + "'");
}

}  // namespace extremaldep
