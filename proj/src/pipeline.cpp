#include "fput/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>

#include "fput/spectral_ops.hpp"

namespace fput {
namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double eps_of(const WaveParameters& p) {
    return p.epsilon ? *p.epsilon : std::sqrt(24.0 * p.c2_minus_1());
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

void RunConfig::validate() const {
    if (c.has_value() == epsilon.has_value()) throw ConfigError("exactly one of c and epsilon must be given");
    if (c && !(std::abs(*c) > 1.0)) throw ConfigError("requires |c| > 1");
    if (epsilon && !(*epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(std::abs(mu) < 1.0)) throw ConfigError("requires |mu| < 1");
    for (double m : mu_sweep)
        if (!(std::abs(m) < 1.0)) throw ConfigError("mu_sweep entries need |mu| < 1");
    if (!(solitary_tol > 0) || !(jost_tol > 0) || !(beale_tol > 0) || !(h4_margin > 0))
        throw ConfigError("tolerances must be positive");
    if ((L > 0) != (N > 0)) throw ConfigError("L and N must be given together");
    if (simulate && (!(dt > 0) || !(T >= 0))) throw ConfigError("simulation needs dt > 0 and T >= 0");
    if (output_dir.empty()) throw ConfigError("output directory must not be empty");
}

WaveParameters RunConfig::params() const {
    try {
        return c ? WaveParameters::from_speed(*c, mu) : WaveParameters::from_epsilon(*epsilon, mu);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

GridPtr RunConfig::grid() const {
    if (L > 0) {
        try {
            return make_grid(L, N);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    return default_grid_for_epsilon(eps_of(params()));
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig r;
    if (j.contains("c")) r.c = j.at("c").get<double>();
    if (j.contains("epsilon")) r.epsilon = j.at("epsilon").get<double>();
    r.mu = j.value("mu", r.mu);
    r.mu_sweep = j.value("mu_sweep", r.mu_sweep);
    r.L = j.value("L", r.L);
    r.N = j.value("N", r.N);
    r.solitary_tol = j.value("solitary_tol", r.solitary_tol);
    r.jost_tol = j.value("jost_tol", r.jost_tol);
    r.beale_tol = j.value("beale_tol", r.beale_tol);
    r.h4_margin = j.value("h4_margin", r.h4_margin);
    r.simulate = j.value("simulate", r.simulate);
    r.T = j.value("T", r.T);
    r.dt = j.value("dt", r.dt);
    r.output_dir = j.value("output_dir", r.output_dir);
    r.format = j.value("format", r.format);
    if (r.format != kFormatVersion) throw ConfigError("unsupported config format '" + r.format + "'");
    return r;
}

json RunConfig::to_json() const {
    json j;
    if (c) j["c"] = *c;
    if (epsilon) j["epsilon"] = *epsilon;
    j["mu"] = mu;
    j["mu_sweep"] = mu_sweep;
    j["L"] = L;
    j["N"] = N;
    j["solitary_tol"] = solitary_tol;
    j["jost_tol"] = jost_tol;
    j["beale_tol"] = beale_tol;
    j["h4_margin"] = h4_margin;
    j["simulate"] = simulate;
    j["T"] = T;
    j["dt"] = dt;
    j["output_dir"] = output_dir;
    j["format"] = format;
    return j;
}

int DiagnosticsRecord::exit_code() const {
    if (!failed_stage.empty()) return 3;
    for (const auto& h : hypotheses)
        if (h.status == "failed") return 4;
    return 0;
}

const StageRecord* DiagnosticsRecord::stage(const std::string& name) const {
    for (const auto& s : stages)
        if (s.name == name) return &s;
    return nullptr;
}

json DiagnosticsRecord::to_json() const {
    json j;
    j["format"] = format;
    j["config"] = config;
    j["failed_stage"] = failed_stage.empty() ? json(nullptr) : json(failed_stage);
    j["exit_code"] = exit_code();
    j["stages"] = json::array();
    for (const auto& s : stages) {
        json e{{"name", s.name}, {"status", s.status}, {"residual", s.residual}, {"iterations", s.iterations},
               {"details", s.details}};
        if (!s.error.empty()) e["error"] = s.error;
        j["stages"].push_back(e);
    }
    j["hypotheses"] = json::array();
    for (const auto& h : hypotheses)
        j["hypotheses"].push_back({{"id", h.id}, {"status", h.status}, {"value", h.value}, {"note", h.note}});
    return j;
}

json DiagnosticsRecord::timing_json() const {
    json j;
    j["total"] = wall_time;
    for (const auto& s : stages) j[s.name] = s.wall_time;
    return j;
}

std::filesystem::path resolve_output(const std::string& dir) {
    std::filesystem::path p(dir);
    if (p.is_absolute()) return p;
    if (const char* root = std::getenv("FPUT_OUTPUT_ROOT"); root && *root) return std::filesystem::path(root) / p;
    return p;
}

double hc_manufactured_error(const WaveParameters& p, const SolitaryWave& sol) {
    const GridPtr& grid = sol.profile.grid;
    const Grid& g = *grid;
    Vec f(g.N);
    double w = eps_of(p) / 2.0;
    for (int j = 0; j < g.N; ++j) f[j] = std::exp(-std::pow(w * g.x[j], 2)) * (1.0 + 0.3 * std::cos(0.5 * g.x[j]));
    GridFunction F(grid, f, Parity::even);
    GridFunction h = apply_Hc(p, sol.profile, F);
    GridFunction back = solve_Hc(p, sol.profile, h);
    return sup_diff(back.values, f) / sup_norm(f);
}

DiagnosticsRecord run_pipeline(const RunConfig& config, PipelineArtifacts* artifacts) {
    config.validate();
    const WaveParameters p = config.params();
    const WaveParameters p0 = p.with_mu(0.0);
    const GridPtr grid = config.grid();
    const auto dir = resolve_output(config.output_dir);
    std::filesystem::create_directories(dir);

    PipelineArtifacts local;
    PipelineArtifacts& art = artifacts ? *artifacts : local;
    art.params = p;

    DiagnosticsRecord rec;
    rec.config = config.to_json();
    rec.hypotheses = {HypothesisCheck{"H1", "skipped", 0.0, "solitary wave converged"},
                      HypothesisCheck{"H2", "skipped", 0.0, "H_c solvable (manufactured relative error)"},
                      HypothesisCheck{"H3", "skipped", 0.0, "Jost Neumann series contracted"},
                      HypothesisCheck{"H4", "skipped", 0.0, "|sin(omega theta)| margin"}};
    const auto t_start = clock_type::now();

    auto run_stage = [&](const std::string& name, const std::function<void(StageRecord&)>& body) {
        StageRecord s;
        s.name = name;
        if (!rec.failed_stage.empty()) {
            rec.stages.push_back(s);
            return;
        }
        auto t0 = clock_type::now();
        try {
            body(s);
            if (s.status == "skipped") s.status = "ok";
        } catch (const std::exception& e) {
            s.status = "failed";
            s.error = e.what();
        }
        s.wall_time = seconds_since(t0);
        if (s.status == "failed") rec.failed_stage = name;
        rec.stages.push_back(s);
    };

    run_stage("dispersion", [&](StageRecord& s) {
        CriticalFrequency w = critical_frequency(p0);
        s.residual = w.residual;
        s.details = {{"c", p.c}, {"omega_c", w.omega}, {"derivative", w.derivative}};
        if (p.mu != 0.0) {
            CriticalFrequency wm = critical_frequency_mu(p);
            art.omega_mu = wm;
            s.details["omega_c_mu"] = wm.omega;
            s.details["upsilon"] = kernel_coefficient(p, wm.omega);
            s.details["small_mu_regime"] = wm.small_mu_regime;
        }
        write_json(dir / "dispersion.json", s.details);
    });

    run_stage("solitary", [&](StageRecord& s) {
        SolitaryOptions opt;
        opt.tol = config.solitary_tol;
        SolitaryWave sol = solve_monatomic(p0, grid, opt);
        s.residual = sol.residual;
        s.iterations = sol.iterations;
        s.details = {{"stabilizer", sol.stabilizer}, {"tail_rate", sol.tail_rate}, {"max", sup_norm(sol.profile)}};
        write_fields_csv(dir / "solitary.csv", grid, {{"varsigma", &sol.profile.values}},
                         {{"c", p.c}, {"residual", sol.residual}});
        rec.hypotheses[0].value = sol.residual;
        rec.hypotheses[0].status = sol.converged && sol.residual <= 1e-10 ? "passed" : "failed";
        art.solitary = std::move(sol);
        if (!art.solitary->converged) throw std::runtime_error("solitary: Petviashvili did not converge");
        double herr = hc_manufactured_error(p0, *art.solitary);
        rec.hypotheses[1].value = herr;
        rec.hypotheses[1].status = herr <= 1e-8 ? "passed" : "failed";
    });

    run_stage("periodic", [&](StageRecord& s) {
        PeriodicFamily fam(p);
        PeriodicWave w = fam.solve(0.0);
        if (!w.converged) throw std::runtime_error("periodic: non-contraction at a = 0");
        s.residual = w.residual;
        s.iterations = w.iterations;
        s.details = {{"omega0", w.omega0}, {"upsilon", w.upsilon},
                     {"bifurcation_denominator", bifurcation_denominator(p)}};
        write_json(dir / "periodic.json", {{"a", w.a}, {"omega", w.omega}, {"omega0", w.omega0}, {"upsilon", w.upsilon},
                                           {"psi1", to_json(w.psi1)}, {"psi2", to_json(w.psi2)}});
        art.periodic = std::move(w);
    });

    run_stage("jost", [&](StageRecord& s) {
        JostOptions opt;
        opt.tol = config.jost_tol;
        JostSolution j = neumann_jost(p0, *art.solitary, opt);
        s.residual = j.lstar_residual;
        s.iterations = j.iterations;
        s.details = {{"theta", j.theta},          {"omega", j.omega},
                     {"alpha", cplx_json(j.alpha)}, {"beta", cplx_json(j.beta)},
                     {"q", j.q},                  {"tail_misfit", j.tail_misfit},
                     {"contraction", j.contraction}, {"sin_omega_theta", j.sin_omega_theta()}};
        write_fields_csv(dir / "jost.csv", grid, {{"gamma", &j.gamma.values}}, s.details);
        rec.hypotheses[2].value = j.contraction;
        rec.hypotheses[2].status = j.contraction < 1.0 ? "passed" : "failed";
        rec.hypotheses[3].value = std::abs(j.sin_omega_theta());
        rec.hypotheses[3].status = std::abs(j.sin_omega_theta()) > config.h4_margin ? "passed" : "failed";
        art.jost = std::move(j);
    });

    run_stage("micropteron", [&](StageRecord& s) {
        BealeOptions opt;
        opt.tol = config.beale_tol;
        MicropteronSolution m = beale_iterate(p, *art.solitary, *art.jost, opt);
        s.residual = m.residual;
        s.iterations = m.iterations;
        s.details = {{"status", m.status},       {"a", m.a},
                     {"mu", m.mu},               {"norm_ratio", m.norm_ratio()},
                     {"tail_eta1", m.tail_eta1}, {"tail_eta2", m.tail_eta2},
                     {"last_increment", m.last_increment}};
        if (!m.converged) {
            art.micropteron = std::move(m);
            throw std::runtime_error("micropteron: " + art.micropteron->status);
        }
        AssembledProfiles prof = assemble_profiles(m, *art.solitary, m.ripple);
        write_fields_csv(dir / "micropteron.csv", grid,
                         {{"eta1", &m.eta1.values},
                          {"eta2", &m.eta2.values},
                          {"rho1", &prof.rho.rho1.values},
                          {"rho2", &prof.rho.rho2.values},
                          {"p1", &prof.p1.values},
                          {"p2", &prof.p2.values}},
                         {{"c", p.c}, {"mu", p.mu}, {"a", m.a}, {"omega_a", m.ripple.omega}});
        art.sweep.push_back({m.mu, m.a, art.jost->theta, m.norm_ratio(), m.status});
        for (double mu : config.mu_sweep) {
            MicropteronSolution ms = beale_iterate(p.with_mu(mu), *art.solitary, *art.jost, opt);
            art.sweep.push_back({mu, ms.a, art.jost->theta, ms.norm_ratio(), ms.status});
        }
        art.micropteron = std::move(m);
        art.profiles = std::move(prof);
    });

    if (config.simulate) {
        run_stage("simulate", [&](StageRecord& s) {
            const auto& prof = *art.profiles;
            LatticeState st = init_from_profiles(prof.p1, prof.p2, p);
            SimulationDiagnostics d = run_and_compare(st, prof.p1, prof.p2, p, config.T, config.dt);
            if (d.blow_up) throw std::runtime_error("simulate: blow-up");
            s.residual = d.shift_error;
            s.iterations = d.steps;
            s.details = {{"shift_error", d.shift_error},   {"energy_drift", d.energy_drift},
                         {"ripple_before", d.ripple_before}, {"ripple_after", d.ripple_after},
                         {"radiated_energy", d.radiated_energy}, {"M", st.size()}};
            ColumnTable t;
            t.header = {{"format", kFormatVersion}, {"T", config.T}, {"dt", config.dt}};
            t.names = {"t", "shift_error", "energy"};
            t.columns.assign(3, {});
            for (const auto& e : d.series) {
                t.columns[0].push_back(e.t);
                t.columns[1].push_back(e.shift_error);
                t.columns[2].push_back(e.energy);
            }
            write_table_csv(dir / "simulation_series.csv", t);
            art.simulation = std::move(d);
        });
    }

    rec.wall_time = seconds_since(t_start);
    write_json(dir / "diagnostics.json", rec.to_json());
    write_json(dir / "timing.json", rec.timing_json());
    return rec;
}

std::vector<std::filesystem::path> emit_plot_data(const DiagnosticsRecord& record, const PipelineArtifacts& art,
                                                  const std::filesystem::path& dir) {
    (void)record;
    std::vector<std::filesystem::path> out;
    if (art.params) {
        const WaveParameters& p = *art.params;
        const int n = 400;
        Vec K(n), lm(n), lp(n), ck(n);
        for (int i = 0; i < n; ++i) {
            K[i] = std::numbers::pi * i / (n - 1);
            auto [a, b] = eigencurves(p.mu, K[i]);
            lm[i] = a;
            lp[i] = b;
            ck[i] = p.c2() * K[i] * K[i];
        }
        write_xy_dat(dir / "dispersion_lambda_minus.dat", K, lm, "K lambda_mu^-(K)");
        write_xy_dat(dir / "dispersion_lambda_plus.dat", K, lp, "K lambda_mu^+(K)");
        write_xy_dat(dir / "dispersion_c2K2.dat", K, ck, "K c^2 K^2");
        // sign changes of c^2K^2 - lambda^+ on (0, pi]; matches critical_frequency_mu
        Vec rx, ry;
        for (int i = 1; i < n; ++i) {
            double f0 = ck[i - 1] - lp[i - 1], f1 = ck[i] - lp[i];
            if (i - 1 > 0 && (f0 > 0) != (f1 > 0)) {
                double t = f0 / (f0 - f1);
                rx.push_back(K[i - 1] + t * (K[i] - K[i - 1]));
                ry.push_back(p.c2() * rx.back() * rx.back());
            }
        }
        write_xy_dat(dir / "dispersion_intersections.dat", rx, ry, "K c^2K^2 at c^2K^2 = lambda^+");
        for (auto name : {"dispersion_lambda_minus.dat", "dispersion_lambda_plus.dat", "dispersion_c2K2.dat",
                          "dispersion_intersections.dat"})
            out.push_back(dir / name);
    }
    if (art.solitary) {
        const auto& g = *art.solitary->profile.grid;
        write_xy_dat(dir / "profile_varsigma.dat", g.x, art.solitary->profile.values, "x varsigma_c");
        out.push_back(dir / "profile_varsigma.dat");
    }
    if (art.profiles) {
        const auto& g = *art.profiles->rho.rho1.grid;
        write_xy_dat(dir / "profile_rho1.dat", g.x, art.profiles->rho.rho1.values, "x rho1");
        write_xy_dat(dir / "profile_rho2.dat", g.x, art.profiles->rho.rho2.values, "x rho2");
        out.push_back(dir / "profile_rho1.dat");
        out.push_back(dir / "profile_rho2.dat");
    }
    if (!art.sweep.empty()) {
        Vec mu, a, th;
        for (const auto& s : art.sweep) {
            if (s.status != "converged") continue;
            mu.push_back(s.mu);
            a.push_back(s.a);
            th.push_back(s.theta);
        }
        write_xy_dat(dir / "sweep_a.dat", mu, a, "mu a");
        write_xy_dat(dir / "sweep_theta.dat", mu, th, "mu theta_c");
        out.push_back(dir / "sweep_a.dat");
        out.push_back(dir / "sweep_theta.dat");
    }
    return out;
}

}  // namespace fput
