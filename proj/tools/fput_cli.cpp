// Command-line driver: one subcommand per solver stage plus the full pipeline.
// Exit codes: 0 success, 2 configuration error, 3 stage non-convergence, 4 hypothesis failure.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "fput/pipeline.hpp"
#include "fput/spectral_ops.hpp"

using namespace fput;

namespace {

struct Common {
    std::optional<double> c;
    std::optional<double> eps;
    double mu = 0.0;
    double L = 0.0;
    int N = 0;
    std::string out = "run";

    RunConfig config() const {
        RunConfig r;
        r.c = c;
        r.epsilon = eps;
        r.mu = mu;
        r.L = L;
        r.N = N;
        r.output_dir = out;
        r.simulate = false;
        r.validate();
        return r;
    }
};

void add_common(CLI::App* sub, Common& o, bool with_mu, bool with_grid) {
    auto* oc = sub->add_option("--c", o.c, "wave speed, |c| > 1");
    auto* oe = sub->add_option("--eps", o.eps, "near-sonic parameter, c = (1 + eps^2/24)^(1/2)");
    oc->excludes(oe);
    if (with_mu) sub->add_option("--mu", o.mu, "mass-ratio perturbation");
    if (with_grid) {
        sub->add_option("--L", o.L, "half length of the periodic box (power of two)");
        sub->add_option("--N", o.N, "grid points (power of two)");
    }
    sub->add_option("--out", o.out, "output directory (relative paths go under $FPUT_OUTPUT_ROOT)");
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

SolitaryWave solitary_for(const RunConfig& rc) {
    SolitaryWave sol = solve_monatomic(rc.params().with_mu(0.0), rc.grid());
    if (!sol.converged) throw std::runtime_error("solitary: Petviashvili did not converge");
    return sol;
}

struct StageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traveling waves in the diatomic FPUT lattice"};
    app.require_subcommand(1);

    Common o;
    double a = 0.0;
    bool adaptive = false;
    std::string profiles;
    double T = 50.0, dt = 0.01;
    int M = 0;
    std::string config_file;
    std::vector<double> sweep;

    auto* s_disp = app.add_subcommand("dispersion", "critical frequencies and kernel coefficient");
    add_common(s_disp, o, true, false);
    auto* s_sol = app.add_subcommand("solitary", "monatomic solitary wave by Petviashvili iteration");
    add_common(s_sol, o, false, true);
    auto* s_per = app.add_subcommand("periodic", "periodic family phi_c^mu[a]");
    add_common(s_per, o, true, false);
    s_per->add_option("--a", a, "ripple amplitude");
    auto* s_jost = app.add_subcommand("jost", "Jost solution and phase shift");
    add_common(s_jost, o, false, true);
    auto* s_mic = app.add_subcommand("micropteron", "Beale fixed point for the diatomic wave");
    add_common(s_mic, o, true, true);
    s_mic->add_flag("--adaptive", adaptive, "halve mu until the iteration converges");
    auto* s_sim = app.add_subcommand("simulate", "integrate the chain from a profile file");
    s_sim->add_option("--profiles", profiles, "CSV with p1, p2 columns (micropteron.csv or solitary.csv)")->required();
    s_sim->add_option("--T", T, "final time");
    s_sim->add_option("--dt", dt, "time step");
    s_sim->add_option("--M", M, "chain length, 0 for 2L");
    s_sim->add_option("--out", o.out, "output directory");
    auto* s_pipe = app.add_subcommand("pipeline", "all stages in order");
    add_common(s_pipe, o, true, true);
    s_pipe->add_option("--config", config_file, "JSON run configuration (overrides flags)");
    s_pipe->add_option("--mu-sweep", sweep, "extra mu values for the a(mu) plot");
    s_pipe->add_option("--T", T, "simulation time");
    s_pipe->add_option("--dt", dt, "simulation step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*s_disp) {
            RunConfig rc = o.config();
            WaveParameters p = rc.params();
            CriticalFrequency w = critical_frequency(p.with_mu(0.0));
            json j{{"c", p.c}, {"omega_c", w.omega}, {"residual", w.residual}, {"derivative", w.derivative},
                   {"mu_threshold", mu_threshold(p.c)}, {"sound_speed_squared", sound_speed_squared(p.mu)}};
            if (p.mu != 0.0) {
                CriticalFrequency wm = critical_frequency_mu(p);
                j["omega_c_mu"] = wm.omega;
                j["upsilon"] = kernel_coefficient(p, wm.omega);
                j["small_mu_regime"] = wm.small_mu_regime;
            }
            write_json(resolve_output(rc.output_dir) / "dispersion.json", j);
            print(j);
        } else if (*s_sol) {
            RunConfig rc = o.config();
            WaveParameters p = rc.params();
            SolitaryWave sol = solve_monatomic(p, rc.grid());
            json j{{"c", p.c},
                   {"residual", sol.residual},
                   {"iterations", sol.iterations},
                   {"stabilizer", sol.stabilizer},
                   {"tail_rate", sol.tail_rate},
                   {"converged", sol.converged}};
            // p1 = p2 = varsigma so the file feeds `simulate` directly
            write_fields_csv(resolve_output(rc.output_dir) / "solitary.csv", sol.profile.grid,
                             {{"varsigma", &sol.profile.values}, {"p1", &sol.profile.values},
                              {"p2", &sol.profile.values}},
                             {{"c", p.c}, {"mu", 0.0}});
            print(j);
            if (!sol.converged) throw StageFailure("solitary: Petviashvili did not converge");
        } else if (*s_per) {
            RunConfig rc = o.config();
            WaveParameters p = rc.params();
            PeriodicWave w = PeriodicFamily(p).solve(a);
            json j{{"a", w.a},
                   {"omega", w.omega},
                   {"omega0", w.omega0},
                   {"upsilon", w.upsilon},
                   {"residual", w.residual},
                   {"iterations", w.iterations},
                   {"converged", w.converged},
                   {"bifurcation_denominator", bifurcation_denominator(p)}};
            json full = j;
            full["psi1"] = to_json(w.psi1);
            full["psi2"] = to_json(w.psi2);
            write_json(resolve_output(rc.output_dir) / "periodic.json", full);
            print(j);
            if (!w.converged) throw StageFailure("periodic: non-contraction");
        } else if (*s_jost) {
            RunConfig rc = o.config();
            WaveParameters p = rc.params().with_mu(0.0);
            SolitaryWave sol = solitary_for(rc);
            JostSolution js = neumann_jost(p, sol);
            json j{{"theta", js.theta},
                   {"omega", js.omega},
                   {"sin_omega_theta", js.sin_omega_theta()},
                   {"lstar_residual", js.lstar_residual},
                   {"tail_misfit", js.tail_misfit},
                   {"contraction", js.contraction},
                   {"iterations", js.iterations}};
            write_fields_csv(resolve_output(rc.output_dir) / "jost.csv", sol.profile.grid,
                             {{"gamma", &js.gamma.values}}, j);
            print(j);
        } else if (*s_mic) {
            RunConfig rc = o.config();
            WaveParameters p = rc.params();
            SolitaryWave sol = solitary_for(rc);
            JostSolution js = neumann_jost(p.with_mu(0.0), sol);
            MicropteronSolution m = adaptive ? beale_iterate_adaptive(p, sol, js) : beale_iterate(p, sol, js);
            json j{{"status", m.status},     {"mu", m.mu},
                   {"a", m.a},               {"iterations", m.iterations},
                   {"residual", m.residual}, {"norm_ratio", m.norm_ratio()},
                   {"tail_eta1", m.tail_eta1}, {"tail_eta2", m.tail_eta2}};
            print(j);
            if (!m.converged) throw StageFailure("micropteron: " + m.status);
            AssembledProfiles prof = assemble_profiles(m, sol, m.ripple);
            write_fields_csv(resolve_output(rc.output_dir) / "micropteron.csv", sol.profile.grid,
                             {{"eta1", &m.eta1.values},
                              {"eta2", &m.eta2.values},
                              {"rho1", &prof.rho.rho1.values},
                              {"rho2", &prof.rho.rho2.values},
                              {"p1", &prof.p1.values},
                              {"p2", &prof.p2.values}},
                             {{"c", p.c}, {"mu", m.mu}, {"a", m.a}});
        } else if (*s_sim) {
            if (!(dt > 0) || !(T >= 0)) throw ConfigError("simulate needs dt > 0 and T >= 0");
            ColumnTable t = read_table_csv(profiles);
            GridPtr g = grid_from_table(t);
            WaveParameters p = WaveParameters::from_speed(t.header.at("c").get<double>(), t.header.value("mu", 0.0));
            GridFunction p1(g, t.column("p1")), p2(g, t.column("p2"));
            LatticeState st = init_from_profiles(p1, p2, p, M);
            SimulationDiagnostics d = run_and_compare(st, p1, p2, p, T, dt);
            const auto dir = resolve_output(o.out);
            ColumnTable series;
            series.header = {{"format", kFormatVersion}, {"T", T}, {"dt", dt}, {"M", st.size()}};
            series.names = {"t", "shift_error", "energy"};
            series.columns.assign(3, {});
            for (const auto& e : d.series) {
                series.columns[0].push_back(e.t);
                series.columns[1].push_back(e.shift_error);
                series.columns[2].push_back(e.energy);
            }
            write_table_csv(dir / "simulation_series.csv", series);
            ColumnTable snap;
            snap.header = {{"format", kFormatVersion}, {"t", d.final_state.t}};
            snap.names = {"n", "r", "v"};
            snap.columns.assign(3, {});
            for (int j = 0; j < d.final_state.size(); ++j) {
                snap.columns[0].push_back(d.final_state.coordinate(j));
                snap.columns[1].push_back(d.final_state.r[j]);
                snap.columns[2].push_back(d.final_state.v[j]);
            }
            write_table_csv(dir / "simulation_final.csv", snap);
            print({{"shift_error", d.shift_error},
                   {"energy_drift", d.energy_drift},
                   {"ripple_before", d.ripple_before},
                   {"ripple_after", d.ripple_after},
                   {"radiated_energy", d.radiated_energy},
                   {"blow_up", d.blow_up}});
            if (d.blow_up) throw StageFailure("simulate: blow-up");
        } else if (*s_pipe) {
            RunConfig rc;
            if (!config_file.empty()) {
                rc = RunConfig::from_json(read_json(config_file));
            } else {
                rc = o.config();
                rc.simulate = true;
                rc.mu_sweep = sweep;
                rc.T = T;
                rc.dt = dt;
            }
            PipelineArtifacts art;
            DiagnosticsRecord rec = run_pipeline(rc, &art);
            emit_plot_data(rec, art, resolve_output(rc.output_dir) / "plots");
            print(rec.to_json());
            return rec.exit_code();
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
