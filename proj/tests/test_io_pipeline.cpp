#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fput/io.hpp"
#include "fput/pipeline.hpp"

using namespace fput;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("fput_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("field CSV round trip is bit exact") {
    auto grid = make_grid(8.0, 64);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N;
    Vec a(64), b(64);
    for (int j = 0; j < 64; ++j) a[j] = N(rng) * 1e-7, b[j] = N(rng) * 1e5;
    auto path = scratch("csv") / "f.csv";
    write_fields_csv(path, grid, {{"a", &a}, {"b", &b}}, {{"c", 1.1}});
    ColumnTable t = read_table_csv(path);
    CHECK(t.header.at("c").get<double>() == 1.1);
    CHECK(t.header.at("format") == kFormatVersion);
    CHECK(t.column("a") == a);
    CHECK(t.column("b") == b);
    GridPtr g = grid_from_table(t);
    CHECK(g->N == 64);
    CHECK_THROWS(t.column("missing"));
}

TEST_CASE("config validation") {
    RunConfig rc;
    rc.c = 0.9;
    CHECK_THROWS_WITH_AS(rc.validate(), doctest::Contains("requires |c| > 1"), ConfigError);
    rc.epsilon = 0.2;
    CHECK_THROWS_AS(rc.validate(), ConfigError);  // both c and epsilon
    RunConfig ok;
    ok.epsilon = 0.2;
    CHECK_NOTHROW(ok.validate());
    ok.beale_tol = 0;
    CHECK_THROWS_AS(ok.validate(), ConfigError);
    RunConfig src;
    src.epsilon = 0.3;
    src.mu = 1e-3;
    RunConfig round = RunConfig::from_json(src.to_json());
    CHECK(*round.epsilon == 0.3);
    CHECK(round.mu == 1e-3);
    CHECK_THROWS_AS(RunConfig::from_json({{"epsilon", 0.2}, {"format", "other"}}), ConfigError);
}

TEST_CASE("output root from the environment") {
    ::setenv("FPUT_OUTPUT_ROOT", "/tmp/root_x", 1);
    CHECK(resolve_output("run") == fs::path("/tmp/root_x/run"));
    CHECK(resolve_output("/abs") == fs::path("/abs"));
    ::unsetenv("FPUT_OUTPUT_ROOT");
    CHECK(resolve_output("run") == fs::path("run"));
}

TEST_CASE("pipeline at mu = 0 completes with the trivial micropteron") {
    RunConfig rc;
    rc.epsilon = 0.3;
    rc.output_dir = scratch("mu0").string();
    rc.T = 10.0;
    PipelineArtifacts art;
    DiagnosticsRecord rec = run_pipeline(rc, &art);
    CHECK(rec.exit_code() == 0);
    REQUIRE(rec.stage("micropteron") != nullptr);
    CHECK(rec.stage("micropteron")->status == "ok");
    CHECK(rec.stage("micropteron")->iterations == 1);
    CHECK(art.micropteron->a == 0.0);
    for (const auto& h : rec.hypotheses) CHECK(h.status == "passed");
    CHECK(fs::exists(fs::path(rc.output_dir) / "diagnostics.json"));
    CHECK(fs::exists(fs::path(rc.output_dir) / "simulation_series.csv"));
}

TEST_CASE("pipeline output is deterministic") {
    RunConfig rc;
    rc.epsilon = 0.3;
    rc.mu = 1e-3;
    rc.T = 5.0;
    rc.output_dir = scratch("det1").string();
    run_pipeline(rc);
    RunConfig rc2 = rc;
    rc2.output_dir = scratch("det2").string();
    run_pipeline(rc2);
    for (auto name : {"solitary.csv", "jost.csv", "micropteron.csv", "simulation_series.csv", "periodic.json"})
        CHECK(slurp(fs::path(rc.output_dir) / name) == slurp(fs::path(rc2.output_dir) / name));
    // diagnostics differ only in the recorded output_dir
    auto d1 = read_json(fs::path(rc.output_dir) / "diagnostics.json");
    auto d2 = read_json(fs::path(rc2.output_dir) / "diagnostics.json");
    d1["config"].erase("output_dir");
    d2["config"].erase("output_dir");
    CHECK(d1 == d2);
}

TEST_CASE("subsonic micropteron stage fails with exit code 3") {
    RunConfig rc;
    rc.epsilon = 0.2;
    rc.mu = 0.005;
    rc.output_dir = scratch("sub").string();
    DiagnosticsRecord rec = run_pipeline(rc);
    CHECK(rec.failed_stage == "micropteron");
    CHECK(rec.exit_code() == 3);
    CHECK(rec.stage("simulate")->status == "skipped");
    CHECK(rec.stage("jost")->status == "ok");
}

TEST_CASE("plot data") {
    auto dir = scratch("plots");
    CHECK(emit_plot_data(DiagnosticsRecord{}, PipelineArtifacts{}, dir).empty());

    RunConfig rc;
    rc.epsilon = 0.3;
    rc.mu = 1e-3;
    rc.simulate = false;
    rc.output_dir = scratch("plotrun").string();
    PipelineArtifacts art;
    DiagnosticsRecord rec = run_pipeline(rc, &art);
    auto files = emit_plot_data(rec, art, dir);
    CHECK(files.size() >= 7);

    // one intersection, at the root returned by critical_frequency_mu
    std::ifstream is(dir / "dispersion_intersections.dat");
    std::string line;
    std::vector<std::pair<double, double>> rows;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') {
            std::istringstream ss(line);
            double x, y;
            ss >> x >> y;
            rows.push_back({x, y});
        }
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].first == doctest::Approx(art.omega_mu->omega).epsilon(1e-4));

    std::ifstream prof(dir / "profile_rho1.dat");
    int n = 0;
    bool two_cols = true;
    while (std::getline(prof, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        double x, y, extra;
        two_cols = two_cols && static_cast<bool>(ss >> x >> y) && !(ss >> extra);
        ++n;
    }
    CHECK(two_cols);
    CHECK(n == art.solitary->profile.grid->N);
}
