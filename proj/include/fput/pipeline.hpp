#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fput/dispersion.hpp"
#include "fput/io.hpp"
#include "fput/jost.hpp"
#include "fput/lattice.hpp"
#include "fput/micropteron.hpp"
#include "fput/periodic.hpp"
#include "fput/solitary.hpp"

namespace fput {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::optional<double> c;
    std::optional<double> epsilon;
    double mu = 0.0;
    std::vector<double> mu_sweep;  // extra mu values for the a(mu) plot
    double L = 0.0;                // 0: default for the speed
    int N = 0;
    double solitary_tol = 1e-13;
    double jost_tol = 1e-15;
    double beale_tol = 1e-12;
    double h4_margin = 1e-3;       // required |sin(omega theta)|
    bool simulate = true;
    double T = 50.0;
    double dt = 0.01;
    std::string output_dir = "run";
    std::string format = kFormatVersion;

    void validate() const;  // throws ConfigError
    WaveParameters params() const;
    GridPtr grid() const;

    static RunConfig from_json(const json& j);
    json to_json() const;
};

struct StageRecord {
    std::string name;
    std::string status = "skipped";  // ok, failed, skipped
    double residual = 0.0;
    int iterations = 0;
    double wall_time = 0.0;
    std::string error;
    json details = json::object();
};

struct HypothesisCheck {
    std::string id;
    std::string status = "skipped";  // passed, failed, skipped
    double value = 0.0;
    std::string note;
};

struct DiagnosticsRecord {
    std::string format = kFormatVersion;
    json config;
    std::vector<StageRecord> stages;
    std::array<HypothesisCheck, 4> hypotheses;
    std::string failed_stage;
    double wall_time = 0.0;

    int exit_code() const;  // 0 ok, 3 stage failure, 4 hypothesis failure
    // Timing is left out so that identical configs give identical files.
    json to_json() const;
    json timing_json() const;
    const StageRecord* stage(const std::string& name) const;
};

struct SweepPoint {
    double mu = 0.0;
    double a = 0.0;
    double theta = 0.0;
    double norm_ratio = 0.0;
    std::string status;
};

struct PipelineArtifacts {
    std::optional<WaveParameters> params;
    std::optional<CriticalFrequency> omega_mu;
    std::optional<SolitaryWave> solitary;
    std::optional<PeriodicWave> periodic;
    std::optional<JostSolution> jost;
    std::optional<MicropteronSolution> micropteron;
    std::optional<AssembledProfiles> profiles;
    std::vector<SweepPoint> sweep;
    std::optional<SimulationDiagnostics> simulation;
};

// Runs dispersion -> solitary -> periodic -> jost -> micropteron -> simulate, writes
// every intermediate artifact under config.output_dir and stops at the first failed stage.
DiagnosticsRecord run_pipeline(const RunConfig& config, PipelineArtifacts* artifacts = nullptr);

// gnuplot two-column files; returns the paths written.
std::vector<std::filesystem::path> emit_plot_data(const DiagnosticsRecord& record, const PipelineArtifacts& artifacts,
                                                  const std::filesystem::path& dir);

// FPUT_OUTPUT_ROOT, if set, is prefixed to relative output paths.
std::filesystem::path resolve_output(const std::string& dir);

// Check shared by the pipeline and the CLI: solve_Hc on H_c applied to a Gaussian.
double hc_manufactured_error(const WaveParameters& p, const SolitaryWave& sol);

}  // namespace fput
