// Command-line front end: fits learning curves to score tables, inverts
// them into data-requirement estimates, simulates multi-round collection,
// calibrates correction factors, and scores extrapolation quality.
//
// Exit codes: 0 success, 2 input error, 3 estimation impossible,
// 4 calibration failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "datareq/estimator.hpp"
#include "datareq/fit.hpp"
#include "datareq/groundtruth.hpp"
#include "datareq/io.hpp"
#include "datareq/metrics.hpp"
#include "datareq/simulate.hpp"
#include "datareq/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoEstimate = 3;
constexpr int kExitCalibration = 4;

using datareq::Json;

void emit(const Json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        datareq::atomic_write_file(out_path, text);
    }
}

datareq::FitConfig load_fit_config(const std::string& path) {
    if (path.empty()) return {};
    return datareq::fit_config_from_json(datareq::read_json_file(path));
}

std::vector<datareq::CurveFamily> parse_families(
    const std::vector<std::string>& names) {
    std::vector<datareq::CurveFamily> families;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
        families.assign(datareq::kAllFamilies.begin(), datareq::kAllFamilies.end());
        return families;
    }
    for (const std::string& name : names) {
        families.push_back(datareq::family_from_name(name));
    }
    return families;
}

// Per-family correction factors from --tau / --tau-profile. A profile entry
// is looked up under (family, T); families without an entry fall back to
// --tau when given, otherwise the lookup is an input error.
std::map<datareq::CurveFamily, double> resolve_taus(
    const std::vector<datareq::CurveFamily>& families,
    std::optional<double> tau_flag, const std::string& profile_path, int T) {
    std::map<datareq::CurveFamily, double> taus;
    if (profile_path.empty()) {
        const double tau = tau_flag.value_or(0.0);
        for (datareq::CurveFamily family : families) taus[family] = tau;
        return taus;
    }
    const datareq::TauProfile profile =
        datareq::read_tau_profile_file(profile_path);
    for (datareq::CurveFamily family : families) {
        const auto entry = profile.lookup(family, T);
        if (entry.has_value()) {
            taus[family] = *entry;
        } else if (tau_flag.has_value()) {
            taus[family] = *tau_flag;
        } else {
            throw datareq::InvalidDataError(
                "profile has no (" + datareq::family_name(family) + ", T=" +
                std::to_string(T) + ") entry and no --tau fallback was given");
        }
    }
    return taus;
}

int cmd_fit(const std::string& csv_path, const std::string& config_path,
            const std::string& out_path) {
    const datareq::RegressionSet set = datareq::read_regression_csv_file(csv_path);
    const datareq::FitAllResult result =
        datareq::fit_all(set, load_fit_config(config_path));
    emit(datareq::models_to_json(result), out_path);
    return kExitOk;
}

int cmd_estimate(const std::string& models_path, std::int64_t n0, double target,
                 std::optional<double> tau, const std::string& profile_path,
                 int T, std::int64_t cap, const std::string& out_path) {
    const auto models =
        datareq::models_from_json(datareq::read_json_file(models_path));
    std::vector<datareq::CurveFamily> families;
    for (const auto& [family, model] : models) families.push_back(family);
    const auto taus = resolve_taus(families, tau, profile_path, T);
    const datareq::EstimateBundle bundle =
        datareq::bounds(models, n0, target, taus, cap);
    emit(datareq::bundle_to_json(bundle, n0, target, taus), out_path);
    return kExitOk;
}

int cmd_simulate(const std::string& curve_path, std::int64_t n0, int r, int T,
                 const std::vector<std::string>& family_names,
                 std::optional<double> tau, const std::string& profile_path,
                 const std::string& targets_spec,
                 std::vector<double> explicit_targets, std::int64_t cap,
                 const std::string& plot_path, const std::string& out_path) {
    const datareq::GroundTruthCurve curve =
        datareq::read_curve_csv_file(curve_path);
    const auto families = parse_families(family_names);
    const auto taus = resolve_taus(families, tau, profile_path, T);

    std::vector<double> targets = std::move(explicit_targets);
    if (!targets_spec.empty()) {
        if (!targets.empty()) {
            throw datareq::InvalidDataError("--targets and --target are exclusive");
        }
        targets = datareq::parse_target_grid(targets_spec);
    }
    if (targets.empty()) targets = datareq::default_target_grid(curve, n0);

    Json doc;
    doc["version"] = datareq::kSchemaVersion;
    doc["kind"] = "simulation";
    doc["n0"] = n0;
    doc["r"] = r;
    doc["T"] = T;
    doc["targets"] = targets;
    doc["families"] = Json::array();

    std::vector<datareq::ChartSeries> series;
    int traces_run = 0;
    for (datareq::CurveFamily family : families) {
        datareq::SimConfig config;
        config.n0 = n0;
        config.r = r;
        config.max_rounds = T;
        config.family = family;
        config.tau = taus.at(family);
        config.n_cap = cap;

        Json block;
        block["family"] = datareq::family_name(family);
        block["tau"] = config.tau;
        block["traces"] = Json::array();
        block["errors"] = Json::array();
        datareq::ChartSeries line;
        line.label = datareq::family_name(family);
        for (const datareq::SweepEntry& entry :
             datareq::sweep(curve, config, targets)) {
            if (entry.trace.has_value()) {
                block["traces"].push_back(datareq::trace_to_json(*entry.trace));
                line.points.push_back({entry.target, entry.trace->ratio});
                ++traces_run;
            } else {
                Json err;
                err["target"] = entry.target;
                err["error"] = entry.error;
                block["errors"].push_back(err);
            }
        }
        doc["families"].push_back(block);
        series.push_back(std::move(line));
    }

    if (traces_run == 0) {
        std::cerr << "datareq: no target could be simulated\n";
        return kExitNoEstimate;
    }

    if (!plot_path.empty()) {
        datareq::ChartSpec spec;
        spec.title = "collected vs required data";
        spec.x_label = "target score";
        spec.y_label = "(n0 + n_hat) / (n0 + n*)";
        spec.guide_y = 1.0;
        std::ostringstream svg;
        datareq::write_line_chart(svg, spec, series);
        datareq::atomic_write_file(plot_path, svg.str());
    }

    emit(doc, out_path);
    return kExitOk;
}

int cmd_calibrate(const std::string& curve_path, const std::string& family_name,
                  int T, std::int64_t n0, int r, const std::string& targets_spec,
                  double tau_max, double tau_step, const std::string& config_path,
                  const std::string& profile_path) {
    const datareq::GroundTruthCurve curve =
        datareq::read_curve_csv_file(curve_path);
    const datareq::CurveFamily family = datareq::family_from_name(family_name);
    if (n0 <= 0) {
        // Default initial pool: 10% of the reference curve (rounded half-up),
        // but at least r.
        n0 = std::max<std::int64_t>(
            std::llround(static_cast<double>(curve.full_size()) * 0.1), r);
    }

    datareq::SimConfig config;
    config.n0 = n0;
    config.r = r;
    config.max_rounds = T;
    config.family = family;
    config.fit_config = load_fit_config(config_path);

    std::vector<double> targets = targets_spec.empty()
                                      ? datareq::default_target_grid(curve, n0)
                                      : datareq::parse_target_grid(targets_spec);

    const double tau =
        datareq::calibrate_tau(curve, config, targets, tau_max, tau_step);

    // Re-run the sweep at the calibrated tau to report the verifying ratio.
    config.tau = tau;
    std::vector<datareq::SimulationTrace> traces;
    for (const datareq::SweepEntry& entry : datareq::sweep(curve, config, targets)) {
        if (entry.trace.has_value()) traces.push_back(*entry.trace);
    }
    const double verified = datareq::min_ratio(traces);

    datareq::TauProfile profile;
    if (std::filesystem::exists(profile_path)) {
        profile = datareq::read_tau_profile_file(profile_path);
    }
    profile.set(family, T, tau);
    profile.provenance = "calibrated on " +
                         std::filesystem::path(curve_path).filename().string();
    datareq::atomic_write_file(profile_path,
                               datareq::tau_profile_to_json(profile).dump(2) + "\n");

    std::cout << "family=" << datareq::family_name(family) << " T=" << T
              << " tau=" << tau << " min_ratio=" << verified << "\n";
    return kExitOk;
}

int cmd_evaluate(const std::string& fit_csv, const std::string& holdout_csv,
                 const std::string& config_path, const std::string& out_path) {
    const datareq::RegressionSet set = datareq::read_regression_csv_file(fit_csv);
    const std::vector<datareq::Observation> holdout_points =
        datareq::read_observations_csv_file(holdout_csv);
    const datareq::HoldoutSet holdout{holdout_points, set.max_n()};

    const datareq::FitAllResult result =
        datareq::fit_all(set, load_fit_config(config_path));

    Json doc;
    doc["version"] = datareq::kSchemaVersion;
    doc["kind"] = "evaluation";
    doc["fit_max_n"] = set.max_n();
    doc["families"] = Json::array();
    for (const auto& [family, model] : result.models) {
        Json j;
        j["family"] = datareq::family_name(family);
        j["rmse"] = datareq::rmse(model, holdout);
        try {
            j["mean_log_ratio"] = datareq::mean_log_ratio(model, holdout);
        } catch (const datareq::DomainError& e) {
            j["mean_log_ratio"] = nullptr;
            j["mean_log_ratio_error"] = e.what();
        }
        j["converged"] = model.converged;
        doc["families"].push_back(j);
    }
    emit(doc, out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"learning-curve data-requirement estimation toolkit"};
    app.require_subcommand(1);

    // fit ---------------------------------------------------------------
    std::string fit_csv, fit_config, fit_out;
    CLI::App* fit = app.add_subcommand("fit", "fit all curve families to a CSV");
    fit->add_option("csv", fit_csv, "regression CSV (header n,score)")->required();
    fit->add_option("--config", fit_config, "fit config JSON");
    fit->add_option("--out", fit_out, "output path (default stdout)");

    // estimate ------------------------------------------------------------
    std::string est_models, est_profile, est_out;
    std::int64_t est_n0 = 0;
    double est_target = 0.0;
    std::optional<double> est_tau;
    int est_T = 1;
    std::int64_t est_cap = 1000000000000LL;
    CLI::App* estimate =
        app.add_subcommand("estimate", "data-requirement bounds from fitted models");
    estimate->add_option("models", est_models, "models JSON from 'fit'")->required();
    estimate->add_option("--n0", est_n0, "current data-set size")->required();
    estimate->add_option("--target", est_target, "target score")->required();
    estimate->add_option("--tau", est_tau, "correction factor (all families)");
    estimate->add_option("--tau-profile", est_profile, "tau profile JSON");
    estimate->add_option("--T", est_T, "profile row to use (default 1)");
    estimate->add_option("--cap", est_cap, "search cap on additional points");
    estimate->add_option("--out", est_out, "output path (default stdout)");

    // simulate ------------------------------------------------------------
    std::string sim_curve, sim_profile, sim_targets, sim_plot, sim_out;
    std::vector<std::string> sim_families;
    std::vector<double> sim_explicit;
    std::optional<double> sim_tau;
    std::int64_t sim_n0 = 0, sim_cap = 0;
    int sim_r = 5, sim_T = 1;
    CLI::App* simulate =
        app.add_subcommand("simulate", "multi-round collection simulation");
    simulate->add_option("curve", sim_curve, "ground-truth curve CSV")->required();
    simulate->add_option("--n0", sim_n0, "initial data-set size")->required();
    simulate->add_option("--r", sim_r, "regression subsets (default 5)");
    simulate->add_option("--T", sim_T, "max rounds (default 1)");
    simulate->add_option("--family", sim_families,
                         "family to simulate (repeatable; default all)");
    simulate->add_option("--tau", sim_tau, "correction factor");
    simulate->add_option("--tau-profile", sim_profile, "tau profile JSON");
    simulate->add_option("--targets", sim_targets, "target grid 'lo:hi:k'");
    simulate->add_option("--target", sim_explicit, "explicit target (repeatable)");
    simulate->add_option("--cap", sim_cap, "request cap (default 1000x full size)");
    simulate->add_option("--plot", sim_plot, "write ratio-vs-target SVG here");
    simulate->add_option("--out", sim_out, "output path (default stdout)");

    // calibrate ----------------------------------------------------------
    std::string cal_curve, cal_family, cal_targets, cal_config, cal_out;
    int cal_T = 5, cal_r = 5;
    std::int64_t cal_n0 = 0;
    double cal_tau_max = 20.0, cal_tau_step = 0.25;
    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "fit a correction factor on a reference curve");
    calibrate->add_option("curve", cal_curve, "reference curve CSV")->required();
    calibrate->add_option("--family", cal_family, "curve family")->required();
    calibrate->add_option("--T", cal_T, "max rounds the factor is tuned for");
    calibrate->add_option("--n0", cal_n0, "initial size (default 10% of curve)");
    calibrate->add_option("--r", cal_r, "regression subsets (default 5)");
    calibrate->add_option("--targets", cal_targets, "target grid 'lo:hi:k'");
    calibrate->add_option("--tau-max", cal_tau_max, "largest tau to try");
    calibrate->add_option("--tau-step", cal_tau_step, "tau grid step");
    calibrate->add_option("--config", cal_config, "fit config JSON");
    calibrate->add_option("--out", cal_out, "tau profile to write/update")
        ->required();

    // evaluate -----------------------------------------------------------
    std::string eval_fit, eval_holdout, eval_config, eval_out;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "extrapolation metrics on a holdout CSV");
    evaluate->add_option("fit_csv", eval_fit, "fitting CSV")->required();
    evaluate->add_option("holdout_csv", eval_holdout, "holdout CSV")->required();
    evaluate->add_option("--config", eval_config, "fit config JSON");
    evaluate->add_option("--out", eval_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (fit->parsed()) return cmd_fit(fit_csv, fit_config, fit_out);
        if (estimate->parsed()) {
            return cmd_estimate(est_models, est_n0, est_target, est_tau,
                                est_profile, est_T, est_cap, est_out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim_curve, sim_n0, sim_r, sim_T, sim_families,
                                sim_tau, sim_profile, sim_targets, sim_explicit,
                                sim_cap, sim_plot, sim_out);
        }
        if (calibrate->parsed()) {
            return cmd_calibrate(cal_curve, cal_family, cal_T, cal_n0, cal_r,
                                 cal_targets, cal_tau_max, cal_tau_step,
                                 cal_config, cal_out);
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(eval_fit, eval_holdout, eval_config, eval_out);
        }
    } catch (const datareq::ParseError& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return kExitInput;
    } catch (const datareq::InvalidDataError& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return kExitInput;
    } catch (const datareq::InvalidScheduleError& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return kExitInput;
    } catch (const datareq::InvalidTargetError& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return kExitInput;
    } catch (const datareq::CalibrationError& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return kExitCalibration;
    } catch (const datareq::NoEstimatesError& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return kExitNoEstimate;
    } catch (const datareq::AllFitsFailedError& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return kExitNoEstimate;
    } catch (const datareq::UnreachableError& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return kExitNoEstimate;
    } catch (const datareq::Error& e) {
        std::cerr << "datareq: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
