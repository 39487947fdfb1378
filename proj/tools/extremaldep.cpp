// SPDX-License-Identifier: MIT
//
// extremaldep: batch front end for the dependence toolkit.
//   model-report  coefficient table, bounds, verdicts for one model+partition
//   simulate      seeded series / i.i.d. sample generation to CSV
//   estimate      Monte Carlo estimators (blocks, runs, gamma) to JSON
//   verify        full reproduction suite, exit 0 iff every row passes
//
// Exit codes: 0 ok, 1 suite/calibration failure, 2 usage or validation error,
// 3 undetermined (the model does not pin down the requested quantity).

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "extremaldep/dependence.hpp"
#include "extremaldep/errors.hpp"
#include "extremaldep/estimate.hpp"
#include "extremaldep/io.hpp"
#include "extremaldep/models.hpp"
#include "extremaldep/simulate.hpp"
#include "extremaldep/verify.hpp"
#include "extremaldep/version.hpp"

namespace ed = extremaldep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUndetermined = 3;

struct ModelFlags {
    std::string name;
    int p = 1, q = 1, d = 3;
};

void add_model_flags(CLI::App* cmd, ModelFlags& mf, bool required) {
    auto* opt = cmd->add_option("--model", mf.name,
                                "Model kind: max_ar (alias ex31), three_dependent (alias ex32), "
                                "iid_product");
    if (required) opt->required();
    cmd->add_option("--p", mf.p, "max_ar maxima-block width");
    cmd->add_option("--q", mf.q, "max_ar minima-block width");
    cmd->add_option("--d", mf.d, "iid_product dimension");
}

ed::ModelSpec resolve_model(const ModelFlags& mf) {
    if (mf.name.empty()) throw ed::validation_error("--model is required here");
    std::string name = mf.name;
    if (name == "ex31") name = "max_ar";
    if (name == "ex32") name = "three_dependent";
    ed::ModelSpec spec;
    spec.kind = ed::kind_from_name(name);
    spec.p = mf.p;
    spec.q = mf.q;
    spec.d = mf.d;
    spec.validate();
    return spec;
}

ed::TauVector parse_tau(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t pos = 0;
            vals.push_back(std::stod(cell, &pos));
            if (pos != cell.size()) throw ed::validation_error("tau: bad entry '" + cell + "'");
        } catch (const std::invalid_argument&) {
            throw ed::validation_error("tau: bad entry '" + cell + "'");
        } catch (const std::out_of_range&) {
            throw ed::validation_error("tau: entry out of range '" + cell + "'");
        }
    }
    return ed::TauVector(vals);
}

class Timer {
public:
    [[nodiscard]] double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void emit_json(const nlohmann::json& j, const std::string& out_path) {
    std::cout << j.dump(2) << '\n';
    if (!out_path.empty()) ed::write_json(out_path, j);
}

// ---- model-report -------------------------------------------------

int run_model_report(const ModelFlags& mf, const std::string& partition,
                     const std::string& tau_text, double tol, const std::string& out_path) {
    Timer timer;
    ed::ModelSpec spec = resolve_model(mf);
    ed::MevModel model = spec.build();
    ed::PartitionSpec part = ed::PartitionSpec::parse(partition);
    ed::TauVector tau =
        tau_text.empty() ? ed::TauVector::unit(model.dim()) : parse_tau(tau_text);
    ed::CoefficientReport report = ed::make_report(model, part, tau, tol);

    nlohmann::json j = ed::to_json(report);
    ed::RunManifest manifest{"model-report",
                             {{"model", ed::to_json(spec)},
                              {"partition", part.str()},
                              {"tau", report.reference_tau},
                              {"tol", tol}},
                             0,
                             timer.ms()};
    j["manifest"] = ed::to_json(manifest);
    emit_json(j, out_path);
    return report.undetermined() ? kExitUndetermined : kExitOk;
}

// ---- simulate -----------------------------------------------------

int run_simulate(const ModelFlags& mf, long n, const std::string& margin, std::uint64_t seed,
                 bool iid, const std::string& out_path) {
    Timer timer;
    ed::ModelSpec spec = resolve_model(mf);
    ed::SeriesConfig cfg{spec, ed::margin_from_name(margin), n, seed};
    ed::SampleMatrix m = iid ? ed::gen_iid_associated(spec, n, cfg) : ed::gen_series(spec, cfg);
    ed::write_csv(out_path, m);
    ed::RunManifest manifest{"simulate",
                             {{"model", ed::to_json(spec)},
                              {"margin", margin},
                              {"n", n},
                              {"iid", iid},
                              {"out", out_path}},
                             seed,
                             timer.ms()};
    ed::write_json(out_path + ".manifest.json", ed::to_json(manifest));
    std::cout << "wrote " << m.rows << "x" << m.cols << " series to " << out_path << '\n';
    return kExitOk;
}

// ---- estimate -----------------------------------------------------

ed::Margin runs_margin(const ed::ModelSpec& spec, ed::MarginKind kind) {
    ed::Margin f = ed::base_margin(kind);
    switch (spec.kind) {
        case ed::ModelKind::max_ar: return ed::power(f, 2.0);
        case ed::ModelKind::three_dependent: return ed::switching_rowmax(f);
        case ed::ModelKind::iid_product: return ed::power(f, static_cast<double>(spec.d));
    }
    throw ed::validation_error("runs: unknown model kind");
}

ed::SampleMatrix runs_series(const ed::ModelSpec& spec, const ed::SeriesConfig& cfg) {
    switch (spec.kind) {
        case ed::ModelKind::max_ar: return ed::gen_max_ar_series(cfg);
        case ed::ModelKind::three_dependent:
            return ed::row_max(ed::gen_three_dependent_series(cfg));
        case ed::ModelKind::iid_product:
            return ed::row_max(ed::gen_iid_associated(spec, cfg.n, cfg));
    }
    throw ed::validation_error("runs: unknown model kind");
}

double empirical_level(const ed::SampleMatrix& series, long block_n, double tau) {
    if (tau <= 0.0 || tau >= static_cast<double>(block_n))
        throw ed::validation_error("runs: need 0 < tau < block_n for the level");
    std::vector<double> sorted(series.data);
    std::sort(sorted.begin(), sorted.end());
    double p = 1.0 - tau / static_cast<double>(block_n);
    auto idx = static_cast<std::size_t>(p * static_cast<double>(sorted.size() - 1));
    return sorted[idx];
}

int run_estimate(const std::string& mode, const ModelFlags& mf, const std::string& in_path,
                 const std::string& tau_text, long n, long block_n, long reps, int k,
                 const std::string& margin, std::uint64_t seed, const std::string& out_path) {
    Timer timer;
    ed::MarginKind mk = ed::margin_from_name(margin);
    nlohmann::json meta{{"mode", mode}, {"margin", margin}};
    ed::EstimateResult result;

    if (mode == "blocks") {
        ed::ModelSpec spec = resolve_model(mf);
        ed::TauVector tau = tau_text.empty() ? ed::TauVector::unit(spec.dim()) : parse_tau(tau_text);
        ed::SeriesConfig cfg{spec, mk, block_n, seed};
        result = ed::estimate_theta_blocks(spec, cfg, tau, block_n, reps);
        meta["model"] = ed::to_json(spec);
        meta["tau"] = std::vector<double>(tau.values().begin(), tau.values().end());
    } else if (mode == "gamma") {
        ed::ModelSpec spec = resolve_model(mf);
        ed::TauVector tau = tau_text.empty() ? ed::TauVector::unit(spec.dim()) : parse_tau(tau_text);
        ed::SeriesConfig cfg{spec, mk, 1, seed};
        ed::SampleMatrix sample =
            in_path.empty() ? ed::gen_iid_associated(spec, reps, cfg) : ed::read_csv(in_path);
        auto margins = ed::series_margins(spec, mk);
        ed::LevelSet levels =
            ed::normalized_levels(std::span<const ed::Margin>(margins), block_n, tau);
        result = ed::estimate_gamma(sample, levels);
        meta["model"] = ed::to_json(spec);
        meta["tau"] = std::vector<double>(tau.values().begin(), tau.values().end());
        meta["levels"] = levels.levels;
    } else if (mode == "runs") {
        double tau = tau_text.empty() ? 1.0 : parse_tau(tau_text)[0];
        double level = 0.0;
        ed::SampleMatrix series;
        if (!in_path.empty()) {
            series = ed::read_csv(in_path);
            if (series.cols > 1) {
                series = ed::row_max(series);
                meta["reduced"] = "rowmax";
            }
            level = empirical_level(series, block_n, tau);
            meta["level_source"] = "empirical_quantile";
        } else {
            ed::ModelSpec spec = resolve_model(mf);
            ed::SeriesConfig cfg{spec, mk, n, seed};
            series = runs_series(spec, cfg);
            ed::Margin m = runs_margin(spec, mk);
            level = ed::normalized_levels(m, block_n, tau).levels[0];
            meta["model"] = ed::to_json(spec);
            meta["level_source"] = "analytic_margin:" + m.name();
        }
        result = ed::estimate_theta_runs(series, level, k);
        result.block_n = block_n;
        meta["tau"] = tau;
        meta["level"] = level;
        meta["k"] = k;
    } else {
        throw ed::validation_error("estimate: unknown mode '" + mode +
                                   "' (expected blocks|runs|gamma)");
    }

    nlohmann::json j = ed::to_json(result);
    j["meta"] = meta;
    ed::RunManifest manifest{"estimate", meta, seed, timer.ms()};
    j["manifest"] = ed::to_json(manifest);
    emit_json(j, out_path);
    return kExitOk;
}

// ---- verify -------------------------------------------------------

int run_verify(std::uint64_t seed, const std::string& suite, double theta_bias,
               const std::string& out_path) {
    ed::SuiteOptions opt;
    opt.seed = seed;
    opt.suite = suite;
    opt.theta_bias = theta_bias;
    ed::SuiteReport report = ed::run_verification(opt);
    for (const auto& row : report.rows)
        std::cout << (row.pass ? "[PASS] " : "[FAIL] ") << row.criterion << " " << row.id << " — "
                  << row.detail << '\n';
    std::cout << (report.all_pass() ? "VERIFY PASS" : "VERIFY FAIL") << " ("
              << report.rows.size() << " rows, suite=" << suite << ", seed=" << seed << ")\n";
    if (!out_path.empty()) ed::write_json(out_path, ed::to_json(report, opt));
    return report.all_pass() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate extreme value dependence toolkit"};
    app.set_version_flag("--version", ed::kVersion);
    app.require_subcommand(1);

    // model-report
    auto* report_cmd =
        app.add_subcommand("model-report", "Coefficients, bounds, and verdicts as JSON");
    ModelFlags report_mf;
    std::string report_partition, report_tau, report_out;
    double report_tol = 1e-9;
    add_model_flags(report_cmd, report_mf, true);
    report_cmd->add_option("--partition", report_partition, "Two-block split, e.g. 1,2|3")
        ->required();
    report_cmd->add_option("--tau", report_tau, "Reference tau, e.g. 1,1,1 (default all ones)");
    report_cmd->add_option("--tol", report_tol, "Verdict equality tolerance");
    report_cmd->add_option("--out", report_out, "Also write the JSON to this path");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a series or i.i.d. sample as CSV");
    ModelFlags sim_mf;
    long sim_n = 0;
    std::string sim_margin = "frechet", sim_out;
    std::uint64_t sim_seed = 0;
    bool sim_iid = false;
    add_model_flags(sim_cmd, sim_mf, true);
    sim_cmd->add_option("--n", sim_n, "Series length (or vector count with --iid)")->required();
    sim_cmd->add_option("--margin", sim_margin, "frechet|uniform");
    sim_cmd->add_option("--seed", sim_seed, "RNG seed");
    sim_cmd->add_flag("--iid", sim_iid, "Emit i.i.d. vectors with the one-observation df");
    sim_cmd->add_option("--out", sim_out, "Output CSV path")->required();

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Monte Carlo estimators as JSON");
    ModelFlags est_mf;
    std::string est_mode, est_in, est_tau, est_margin = "frechet", est_out;
    long est_n = 100000, est_block = 1000, est_reps = 10000;
    int est_k = 2;
    std::uint64_t est_seed = 0;
    est_cmd->add_option("--mode", est_mode, "blocks|runs|gamma")->required();
    add_model_flags(est_cmd, est_mf, false);
    est_cmd->add_option("--in", est_in, "Input series CSV (runs/gamma; otherwise simulated)");
    est_cmd->add_option("--tau", est_tau, "Target tau (vector for blocks/gamma, scalar for runs)");
    est_cmd->add_option("--n", est_n, "Series length for simulated runs input");
    est_cmd->add_option("--block-n", est_block, "Level-normalization block size n");
    est_cmd->add_option("--reps", est_reps, "Replications (blocks) or sample vectors (gamma)");
    est_cmd->add_option("--k", est_k, "Runs estimator lookahead");
    est_cmd->add_option("--margin", est_margin, "frechet|uniform");
    est_cmd->add_option("--seed", est_seed, "RNG seed");
    est_cmd->add_option("--out", est_out, "Also write the JSON to this path");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run the reproduction suite");
    std::uint64_t verify_seed = 42;
    std::string verify_suite = "all", verify_out;
    double verify_bias = 0.0;
    verify_cmd->add_option("--seed", verify_seed, "Suite seed");
    verify_cmd->add_option("--suite", verify_suite, "all|closed|verdicts|theta|mc|props|sim");
    verify_cmd->add_option("--out", verify_out, "Write the suite report JSON to this path");
    verify_cmd->add_option("--inject-theta-bias", verify_bias, "")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (report_cmd->parsed())
            return run_model_report(report_mf, report_partition, report_tau, report_tol,
                                    report_out);
        if (sim_cmd->parsed())
            return run_simulate(sim_mf, sim_n, sim_margin, sim_seed, sim_iid, sim_out);
        if (est_cmd->parsed())
            return run_estimate(est_mode, est_mf, est_in, est_tau, est_n, est_block, est_reps,
                                est_k, est_margin, est_seed, est_out);
        if (verify_cmd->parsed())
            return run_verify(verify_seed, verify_suite, verify_bias, verify_out);
    } catch (const ed::insufficient_model_data& e) {
        std::cerr << "undetermined: " << e.what() << '\n';
        return kExitUndetermined;
    } catch (const ed::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ed::calibration_error& e) {
        std::cerr << "calibration error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
