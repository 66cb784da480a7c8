#include "datareq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace datareq {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::int64_t parse_int(const std::string& text, int line) {
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("expected an integer, got '" + text + "'", line);
    }
    return value;
}

double parse_double(const std::string& text, int line) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + text + "'", line);
    }
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return in;
}

} // namespace

std::optional<double> TauProfile::lookup(CurveFamily family,
                                         int max_rounds) const {
    const auto it = entries.find({family, max_rounds});
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

void TauProfile::set(CurveFamily family, int max_rounds, double tau) {
    entries[{family, max_rounds}] = tau;
}

std::vector<Observation> read_observations_csv(std::istream& in) {
    std::vector<Observation> points;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (!saw_header) {
            if (text != "n,score") {
                throw ParseError("expected header 'n,score', got '" + text + "'",
                                 line_no);
            }
            saw_header = true;
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string::npos) {
            throw ParseError("expected 'n,score' row, got '" + text + "'", line_no);
        }
        Observation pt;
        pt.n = parse_int(trim(text.substr(0, comma)), line_no);
        pt.score = parse_double(trim(text.substr(comma + 1)), line_no);
        if (pt.n < 1) throw ParseError("size must be >= 1", line_no);
        if (!std::isfinite(pt.score) || pt.score < 0.0 || pt.score > 100.0) {
            throw ParseError("score must lie in [0, 100]", line_no);
        }
        if (!points.empty() && pt.n <= points.back().n) {
            throw ParseError("sizes must be strictly increasing", line_no);
        }
        points.push_back(pt);
    }
    if (!saw_header) throw ParseError("empty file", 0);
    if (points.empty()) throw ParseError("no data rows", line_no);
    return points;
}

std::vector<Observation> read_observations_csv_file(
    const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    try {
        return read_observations_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

RegressionSet read_regression_csv_file(const std::filesystem::path& path) {
    return RegressionSet{read_observations_csv_file(path)};
}

GroundTruthCurve read_curve_csv_file(const std::filesystem::path& path,
                                     CurveMode mode) {
    const std::vector<Observation> points = read_observations_csv_file(path);
    std::vector<Anchor> anchors(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        anchors[i] = Anchor{points[i].n, points[i].score};
    }
    return GroundTruthCurve{std::move(anchors), mode};
}

void write_observations_csv(std::ostream& out,
                            const std::vector<Observation>& points) {
    out << "n,score\n";
    for (const Observation& pt : points) {
        Json score = pt.score; // reuse the JSON float formatter for stability
        out << pt.n << ',' << score.dump() << '\n';
    }
}

namespace {

Json model_to_json(const FittedModel& model) {
    Json j;
    j["family"] = family_name(model.family);
    j["theta"] = {model.params.theta1, model.params.theta2, model.params.theta3};
    j["residual_sse"] = model.residual_sse;
    j["converged"] = model.converged;
    j["iterations"] = model.iterations;
    return j;
}

FittedModel model_from_json(const Json& j) {
    FittedModel model;
    model.family = family_from_name(j.at("family").get<std::string>());
    const auto& theta = j.at("theta");
    if (!theta.is_array() || theta.size() != 3) {
        throw InvalidDataError("model theta must be an array of 3 numbers");
    }
    model.params = Params{theta[0].get<double>(), theta[1].get<double>(),
                          theta[2].get<double>()};
    model.residual_sse = j.at("residual_sse").get<double>();
    model.converged = j.at("converged").get<bool>();
    model.iterations = j.at("iterations").get<int>();
    return model;
}

} // namespace

Json models_to_json(const FitAllResult& result) {
    Json doc;
    doc["version"] = kSchemaVersion;
    doc["kind"] = "models";
    doc["models"] = Json::array();
    for (const auto& [family, model] : result.models) {
        doc["models"].push_back(model_to_json(model));
    }
    doc["failures"] = Json::array();
    for (const auto& [family, message] : result.failures) {
        Json f;
        f["family"] = family_name(family);
        f["error"] = message;
        doc["failures"].push_back(f);
    }
    return doc;
}

std::map<CurveFamily, FittedModel> models_from_json(const Json& doc) {
    if (doc.value("kind", "") != "models") {
        throw InvalidDataError("expected a 'models' document");
    }
    std::map<CurveFamily, FittedModel> models;
    for (const Json& j : doc.at("models")) {
        const FittedModel model = model_from_json(j);
        models[model.family] = model;
    }
    return models;
}

Json bundle_to_json(const EstimateBundle& bundle, std::int64_t n0, double target,
                    const std::map<CurveFamily, double>& taus) {
    Json doc;
    doc["version"] = kSchemaVersion;
    doc["kind"] = "estimate";
    doc["n0"] = n0;
    doc["target"] = target;
    doc["per_family"] = Json::array();
    for (const auto& [family, estimate] : bundle.per_family) {
        Json j;
        j["family"] = family_name(family);
        if (estimate.has_value()) {
            j["estimate"] = *estimate;
        } else {
            j["estimate"] = "unreachable";
        }
        const auto tau_it = taus.find(family);
        j["tau"] = tau_it == taus.end() ? 0.0 : tau_it->second;
        doc["per_family"].push_back(j);
    }
    doc["lower"] = bundle.lower;
    if (bundle.upper.has_value()) {
        doc["upper"] = *bundle.upper;
    } else {
        doc["upper"] = "unbounded";
    }
    doc["diagnostics"] = bundle.diagnostics;
    return doc;
}

Json trace_to_json(const SimulationTrace& trace) {
    Json doc;
    Json config;
    config["n0"] = trace.config.n0;
    config["r"] = trace.config.r;
    config["T"] = trace.config.max_rounds;
    config["target"] = trace.config.target;
    config["tau"] = trace.config.tau;
    config["family"] = family_name(trace.config.family);
    config["n_cap"] = trace.config.n_cap;
    config["clamp_unreachable"] = trace.config.clamp_unreachable;
    config["fit_config"] = fit_config_to_json(trace.config.fit_config);
    doc["config"] = config;

    doc["rounds"] = Json::array();
    for (const RoundRecord& r : trace.rounds) {
        Json j;
        j["round"] = r.round_index;
        if (r.fitted.has_value()) {
            j["fitted"] = model_to_json(*r.fitted);
        } else {
            j["fitted"] = nullptr;
        }
        j["fit_error"] = r.fit_error;
        j["requested_total"] = r.requested_total;
        j["achieved_score"] = r.achieved_score;
        j["met_target"] = r.met_target;
        j["clamped"] = r.clamped;
        doc["rounds"].push_back(j);
    }
    doc["skipped_rounds"] = Json::array();
    for (const RoundError& e : trace.skipped_rounds) {
        Json j;
        j["round"] = e.round_index;
        j["error"] = e.message;
        doc["skipped_rounds"].push_back(j);
    }
    doc["final_total"] = trace.final_total;
    doc["true_minimum"] = trace.true_minimum;
    doc["ratio"] = trace.ratio;
    doc["success"] = trace.success;
    return doc;
}

Json tau_profile_to_json(const TauProfile& profile) {
    Json doc;
    doc["version"] = kSchemaVersion;
    doc["kind"] = "tau_profile";
    doc["provenance"] = profile.provenance;
    doc["entries"] = Json::array();
    for (const auto& [key, tau] : profile.entries) {
        Json j;
        j["family"] = family_name(key.first);
        j["T"] = key.second;
        j["tau"] = tau;
        doc["entries"].push_back(j);
    }
    return doc;
}

TauProfile tau_profile_from_json(const Json& doc) {
    if (doc.value("kind", "") != "tau_profile") {
        throw InvalidDataError("expected a 'tau_profile' document");
    }
    TauProfile profile;
    profile.provenance = doc.value("provenance", "");
    for (const Json& j : doc.at("entries")) {
        const double tau = j.at("tau").get<double>();
        if (!std::isfinite(tau) || tau < 0.0) {
            throw InvalidDataError("profile tau must be finite and >= 0");
        }
        profile.set(family_from_name(j.at("family").get<std::string>()),
                    j.at("T").get<int>(), tau);
    }
    return profile;
}

TauProfile read_tau_profile_file(const std::filesystem::path& path) {
    return tau_profile_from_json(read_json_file(path));
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

FitConfig fit_config_from_json(const Json& doc) {
    FitConfig config;
    config.max_iterations = doc.value("max_iterations", config.max_iterations);
    config.initial_damping = doc.value("initial_damping", config.initial_damping);
    config.damping_up = doc.value("damping_up", config.damping_up);
    config.damping_down = doc.value("damping_down", config.damping_down);
    config.convergence_tol = doc.value("convergence_tol", config.convergence_tol);
    config.weight_base = doc.value("weight_base", config.weight_base);
    return config;
}

Json fit_config_to_json(const FitConfig& config) {
    Json doc;
    doc["max_iterations"] = config.max_iterations;
    doc["initial_damping"] = config.initial_damping;
    doc["damping_up"] = config.damping_up;
    doc["damping_down"] = config.damping_down;
    doc["convergence_tol"] = config.convergence_tol;
    doc["weight_base"] = config.weight_base;
    return doc;
}

std::vector<double> parse_target_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) {
        throw ParseError("target grid must look like 'lo:hi:k', got '" + spec + "'",
                         0);
    }
    const double lo = parse_double(trim(parts[0]), 0);
    const double hi = parse_double(trim(parts[1]), 0);
    const std::int64_t k = parse_int(trim(parts[2]), 0);
    if (k < 1) throw ParseError("target grid needs k >= 1", 0);
    if (k == 1) {
        if (lo != hi) throw ParseError("k = 1 needs lo == hi", 0);
        return {lo};
    }
    if (hi < lo) throw ParseError("target grid needs hi >= lo", 0);
    std::vector<double> targets(k);
    for (std::int64_t i = 0; i < k; ++i) {
        targets[i] = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(k - 1);
    }
    return targets;
}

} // namespace datareq
