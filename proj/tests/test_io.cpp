#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "datareq/io.hpp"
#include "datareq/svg.hpp"
#include "testutil.hpp"

using namespace datareq;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("observations CSV round-trips") {
    const std::vector<Observation> pts = {
        {1000, 48.52}, {2000, 55.0}, {5000, 63.125}};
    std::ostringstream out;
    write_observations_csv(out, pts);
    std::istringstream in(out.str());
    const std::vector<Observation> back = read_observations_csv(in);
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(back[i].n == pts[i].n);
        CHECK(back[i].score == pts[i].score);
    }
}

TEST_CASE("CSV parse errors carry line numbers") {
    {
        std::istringstream in("n,score\n10,50\n9,60\n");
        try {
            read_observations_csv(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    {
        std::istringstream in("n,score\n10,abc\n");
        try {
            read_observations_csv(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    {
        std::istringstream in("size;value\n");
        CHECK_THROWS_AS(read_observations_csv(in), ParseError);
    }
    {
        std::istringstream empty("");
        CHECK_THROWS_AS(read_observations_csv(empty), ParseError);
    }
    {
        std::istringstream in("n,score\n10,140\n");
        CHECK_THROWS_AS(read_observations_csv(in), ParseError);
    }
}

TEST_CASE("models JSON round-trips through the documented schema") {
    const RegressionSet set = testutil::sample_exact(
        CurveFamily::PowerLaw, {3, 0.4, 2}, testutil::linspace_sizes(10, 10, 10));
    const FitAllResult fitted = fit_all(set);
    const Json doc = models_to_json(fitted);

    CHECK(doc.at("version") == kSchemaVersion);
    CHECK(doc.at("kind") == "models");
    REQUIRE(doc.at("models").size() == 4);
    // Fixed key order inside each record.
    const auto& first = doc.at("models")[0];
    std::vector<std::string> keys;
    for (auto it = first.begin(); it != first.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"family", "theta", "residual_sse",
                                           "converged", "iterations"});

    const auto models = models_from_json(doc);
    REQUIRE(models.size() == 4);
    for (const auto& [family, model] : fitted.models) {
        CHECK(models.at(family).params.theta1 == model.params.theta1);
        CHECK(models.at(family).params.theta2 == model.params.theta2);
        CHECK(models.at(family).params.theta3 == model.params.theta3);
        CHECK(models.at(family).residual_sse == model.residual_sse);
    }
}

TEST_CASE("estimate JSON spells unreachable out explicitly") {
    EstimateBundle bundle;
    bundle.per_family[CurveFamily::PowerLaw] = 120;
    bundle.per_family[CurveFamily::Arctan] = std::nullopt;
    bundle.lower = 120;
    bundle.upper = std::nullopt;
    const Json doc = bundle_to_json(bundle, 100, 55.0, {});
    CHECK(doc.at("upper") == "unbounded");
    bool saw_unreachable = false;
    for (const auto& row : doc.at("per_family")) {
        if (row.at("family") == "arctan") {
            CHECK(row.at("estimate") == "unreachable");
            saw_unreachable = true;
        }
    }
    CHECK(saw_unreachable);
}

TEST_CASE("trace JSON carries the full round structure") {
    const GroundTruthCurve curve = synthesize(
        CurveFamily::PowerLaw, {2, 0.5, 1}, testutil::linspace_sizes(100, 100, 10),
        0.0, 0);
    SimConfig config;
    config.n0 = 500;
    config.r = 5;
    config.max_rounds = 3;
    config.family = CurveFamily::PowerLaw;
    config.target = curve.value(800);
    const SimulationTrace trace = run(curve, config);
    const Json doc = trace_to_json(trace);
    CHECK(doc.at("config").at("n0") == 500);
    CHECK(doc.at("config").at("T") == 3);
    CHECK(doc.at("rounds").size() == trace.rounds.size());
    CHECK(doc.at("final_total") == trace.final_total);
    CHECK(doc.at("true_minimum") == trace.true_minimum);
    CHECK(doc.at("success") == trace.success);
    // Byte-identical serialization across repeated runs.
    CHECK(doc.dump(2) == trace_to_json(run(curve, config)).dump(2));
}

TEST_CASE("tau profile files round-trip and validate") {
    TauProfile profile;
    profile.provenance = "reference: synthetic power law";
    profile.set(CurveFamily::PowerLaw, 5, 1.25);
    profile.set(CurveFamily::Logarithmic, 1, 4.0);

    const auto path = temp_path("datareq_test_profile.json");
    atomic_write_file(path, tau_profile_to_json(profile).dump(2) + "\n");
    const TauProfile back = read_tau_profile_file(path);
    CHECK(back.provenance == profile.provenance);
    REQUIRE(back.lookup(CurveFamily::PowerLaw, 5).has_value());
    CHECK(*back.lookup(CurveFamily::PowerLaw, 5) == 1.25);
    CHECK(*back.lookup(CurveFamily::Logarithmic, 1) == 4.0);
    CHECK_FALSE(back.lookup(CurveFamily::PowerLaw, 1).has_value());
    std::filesystem::remove(path);

    Json bad;
    bad["version"] = kSchemaVersion;
    bad["kind"] = "tau_profile";
    bad["entries"] = Json::array({{{"family", "arctan"}, {"T", 1}, {"tau", -2.0}}});
    CHECK_THROWS_AS(tau_profile_from_json(bad), InvalidDataError);
}

TEST_CASE("atomic write replaces content wholesale") {
    const auto path = temp_path("datareq_test_atomic.txt");
    atomic_write_file(path, "first\n");
    atomic_write_file(path, "second\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "second\n");
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove(path);
}

TEST_CASE("target grid parsing") {
    CHECK(parse_target_grid("50:60:3") == std::vector<double>{50.0, 55.0, 60.0});
    CHECK(parse_target_grid("10:10:1") == std::vector<double>{10.0});
    const auto grid = parse_target_grid("0:1:11");
    REQUIRE(grid.size() == 11);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK_THROWS_AS(parse_target_grid("50:60"), ParseError);
    CHECK_THROWS_AS(parse_target_grid("abc:60:3"), ParseError);
    CHECK_THROWS_AS(parse_target_grid("60:50:3"), ParseError);
    CHECK_THROWS_AS(parse_target_grid("50:60:0"), ParseError);
}

TEST_CASE("SVG chart contains one polyline per series and is well-formed") {
    std::vector<ChartSeries> series(3);
    for (int s = 0; s < 3; ++s) {
        series[s].label = "series " + std::to_string(s);
        for (int i = 0; i <= 10; ++i) {
            series[s].points.push_back({50.0 + i, 0.5 + 0.1 * s + 0.02 * i});
        }
    }
    ChartSpec spec;
    spec.title = "ratio vs target";
    spec.x_label = "target score";
    spec.y_label = "collected / required";
    std::ostringstream out;
    write_line_chart(out, spec, series);
    const std::string svg = out.str();

    CHECK(svg.rfind("<?xml", 0) == 0);
    std::size_t count = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
        ++count;
    }
    CHECK(count == 3);
    CHECK(svg.find("stroke-dasharray") != std::string::npos); // guide at 1.0
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<script") == std::string::npos);

    // Crude well-formedness: every '<' has a matching '>' before the next '<'.
    int depth = 0;
    for (char c : svg) {
        if (c == '<') { CHECK(depth == 0); ++depth; }
        if (c == '>') { CHECK(depth == 1); --depth; }
    }
    CHECK(depth == 0);
}
