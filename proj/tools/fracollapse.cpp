// fracollapse — pseudospectral toolkit for the fractional NLS with combined
// power nonlinearities: ground states and sharp constants, blow-up/global
// threshold classification, Strang split-step evolution, and blow-up
// diagnostics (virial decay, L2 concentration, rate fits, limiting profile).

#include <atomic>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "fracollapse/blowup.hpp"
#include "fracollapse/dynamics.hpp"
#include "fracollapse/ini.hpp"
#include "fracollapse/io.hpp"
#include "fracollapse/spectral.hpp"
#include "fracollapse/svg.hpp"
#include "fracollapse/thresholds.hpp"

namespace fs = std::filesystem;
using namespace fracollapse;

namespace {

// Exit-code contract: 0 success, 1 convergence, 2 config, 3 dependency/data,
// 4 numerical integrity.
constexpr int kExitOk = 0;
constexpr int kExitConvergence = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDependency = 3;
constexpr int kExitIntegrity = 4;

const std::map<std::string, std::set<std::string>> kSchema = {
    {"model",
     {"s", "dim", "p1", "p2", "lambda1", "lambda2", "p", "gs_tol", "gs_max_iter", "gs_width",
      "gs_amplitude"}},
    {"grid", {"n", "half_length"}},
    {"sim",
     {"dt", "t_end", "snapshot_every", "diag_every", "stop_gradient_factor", "stop_mass_drift",
      "adapt", "dt_min", "seed", "initial", "amplitude", "width", "gs_path", "c_abs", "c_arg",
      "rho", "ring_radius", "ring_width", "bumps"}},
    {"diagnostics",
     {"virial_R", "conc_delta", "gs_dir", "case3_constant", "svg", "rate_window"}},
};

std::string out_dir_from(const std::string& flag_value) {
    if (const char* env = std::getenv("FRACOLLAPSE_OUT"); env && *env) return env;
    return flag_value;
}

ModelParams model_from(const IniConfig& cfg) {
    cfg.require_section("model");
    ModelParams mp;
    mp.s = cfg.get_double("model", "s");
    mp.dim = cfg.get_int("model", "dim");
    mp.p1 = cfg.get_double_or("model", "p1", mp.p1);
    mp.p2 = cfg.get_double_or("model", "p2", mp.p2);
    mp.lambda1 = cfg.get_double_or("model", "lambda1", 0.0);
    mp.lambda2 = cfg.get_double_or("model", "lambda2", 0.0);
    return mp;
}

Grid grid_from(const IniConfig& cfg) {
    cfg.require_section("grid");
    return Grid(cfg.get_int("model", "dim"), cfg.get_int("grid", "n"),
                cfg.get_double("grid", "half_length"));
}

void echo_config(Manifest& man, const IniConfig& cfg) {
    for (const auto& [sec, keys] : cfg.sections())
        for (const auto& [k, v] : keys) man["config." + sec + "." + k] = v;
}

std::string gs_filename(double s, int dim, double p) {
    std::ostringstream os;
    os << "gs_s" << s << "_N" << dim << "_p" << p << ".gsb";
    return os.str();
}

std::vector<GroundState> load_gs_library(const IniConfig& cfg) {
    std::vector<GroundState> lib;
    if (cfg.has("diagnostics", "gs_dir")) {
        fs::path dir = cfg.get("diagnostics", "gs_dir");
        if (fs::is_directory(dir)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(dir))
                if (e.path().extension() == ".gsb") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) lib.push_back(read_ground_state(f.string()));
        }
    }
    if (cfg.has("sim", "gs_path")) lib.push_back(read_ground_state(cfg.get("sim", "gs_path")));
    return lib;
}

Field initial_data(const IniConfig& cfg, const Grid& grid) {
    const std::string kind = cfg.get_or("sim", "initial", "gaussian");
    if (kind == "gaussian") {
        return gaussian_field(grid, cfg.get_double_or("sim", "amplitude", 1.0),
                              cfg.get_double_or("sim", "width", 1.0));
    }
    if (kind == "ring") {
        return ring_field(grid, cfg.get_double_or("sim", "amplitude", 1.0),
                          cfg.get_double("sim", "ring_radius"),
                          cfg.get_double_or("sim", "ring_width", 1.0));
    }
    if (kind == "scaled_ground_state") {
        GroundState gs = read_ground_state(cfg.get("sim", "gs_path"));
        if (gs.profile.grid() != grid)
            throw dependency_error("initial data: ground-state grid does not match [grid]");
        const double c_abs = cfg.get_double_or("sim", "c_abs", 1.0);
        const double c_arg = cfg.get_double_or("sim", "c_arg", 0.0);
        const double rho = cfg.get_double_or("sim", "rho", 1.0);
        return spectral_rescale(gs.profile, std::polar(c_abs, c_arg), rho);
    }
    if (kind == "random_bumps") {
        const int bumps = cfg.get_int_or("sim", "bumps", 3);
        std::mt19937_64 rng(static_cast<uint64_t>(cfg.get_int_or("sim", "seed", 1)));
        std::uniform_real_distribution<double> uamp(0.3, 1.0), uwid(0.6, 2.0),
            upos(-grid.half_length() / 4.0, grid.half_length() / 4.0);
        Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(grid.size());
        for (int b = 0; b < bumps; ++b) {
            double amp = uamp(rng), wid = uwid(rng);
            std::array<double, 3> c{};
            for (int d = 0; d < grid.dim(); ++d) c[d] = upos(rng);
            for (std::ptrdiff_t i = 0; i < grid.size(); ++i) {
                auto idx = grid.unravel(i);
                double r2 = 0.0;
                for (int d = 0; d < grid.dim(); ++d) {
                    double dx = grid.coord(idx[d]) - c[d];
                    r2 += dx * dx;
                }
                acc[i] += amp * std::exp(-r2 / (wid * wid));
            }
        }
        return Field(grid, std::move(acc));
    }
    throw config_error("unknown [sim] initial kind: " + kind);
}

void write_svgs(const fs::path& out, const std::vector<DiagnosticsRecord>& rows) {
    std::vector<double> t, hs, edrift, vir, tv;
    const double e0 = rows.front().energy;
    for (const auto& r : rows) {
        t.push_back(r.t);
        hs.push_back(r.hs);
        edrift.push_back(std::abs(r.energy - e0));
        if (r.virial) {
            tv.push_back(r.t);
            vir.push_back(*r.virial);
        }
    }
    {
        SvgPlot p("Hs seminorm", "t", "||(-Lap)^{s/2} u||");
        p.add_series("hs", t, hs);
        p.write((out / "hs_vs_t.svg").string());
    }
    {
        SvgPlot p("Energy drift", "t", "|E(t) - E(0)|");
        p.set_log_y(true);
        p.add_series("drift", t, edrift, "#d62728");
        p.write((out / "energy_drift.svg").string());
    }
    if (!tv.empty()) {
        SvgPlot p("Localized virial", "t", "M_phi[u]");
        p.add_series("virial", tv, vir, "#2ca02c");
        p.write((out / "virial_vs_t.svg").string());
    }
}

int cmd_ground_state(const std::string& config_path, const std::string& out_flag) {
    IniConfig cfg = IniConfig::parse_file(config_path);
    cfg.validate_schema(kSchema);
    cfg.require_section("model");
    cfg.require_section("grid");
    ModelParams mp = model_from(cfg);
    Grid grid = grid_from(cfg);
    const double p = cfg.get_double_or("model", "p", mp.p2);
    const double tol = cfg.get_double_or("model", "gs_tol", 1e-10);
    const int max_iter = cfg.get_int_or("model", "gs_max_iter", 5000);
    SolveOptions opts;
    opts.initial_width = cfg.get_double_or("model", "gs_width", 1.0);
    opts.initial_amplitude = cfg.get_double_or("model", "gs_amplitude", 1.0);

    GroundState gs = solve_ground_state(mp.s, mp.dim, p, grid, tol, max_iter, opts);

    const fs::path out = out_dir_from(out_flag);
    fs::create_directories(out);
    const std::string name = gs_filename(mp.s, mp.dim, p);
    write_ground_state((out / name).string(), gs);
    write_certificate_csv((out / "ground_state_certificate.csv").string(), gs);
    write_slice_csv((out / "ground_state_slice.csv").string(), gs.profile);

    const double r23 = std::abs(gs.grad_sq / gs.mass_sq - gs.relation_grad_ratio()) /
                       gs.relation_grad_ratio();
    const double r24 = std::abs(gs.lp_power / gs.mass_sq - gs.relation_lp_ratio()) /
                       gs.relation_lp_ratio();
    std::cout << "ground state (s=" << mp.s << ", N=" << mp.dim << ", p=" << p << ")\n"
              << "  mass_sq  = " << format_g17(gs.mass_sq) << "\n"
              << "  C_opt    = " << format_g17(gs.c_opt) << "\n"
              << "  residual = " << format_g17(gs.residual) << "\n"
              << "  relation (2.3) residual = " << format_g17(r23) << "\n"
              << "  relation (2.4) residual = " << format_g17(r24) << "\n";

    Manifest man;
    echo_config(man, cfg);
    man["artifact.ground_state"] = name;
    man["artifact.certificate_csv"] = "ground_state_certificate.csv";
    man["artifact.slice_csv"] = "ground_state_slice.csv";
    man["format.ground_state_version"] = std::to_string(kGroundStateVersion);
    man["run.timestamp"] = std::to_string(std::time(nullptr));
    write_manifest((out / "manifest.txt").string(), man);
    return kExitOk;
}

int cmd_classify(const std::string& config_path, const std::string& data_path,
                 const std::string& out_flag) {
    IniConfig cfg = IniConfig::parse_file(config_path);
    cfg.validate_schema(kSchema);
    ModelParams mp = model_from(cfg);
    mp.validate();
    LoadedSnapshot snap = read_snapshot(data_path);
    std::vector<GroundState> lib = load_gs_library(cfg);

    ClassifyOptions opts;
    if (auto c3 = cfg.maybe_double("diagnostics", "case3_constant")) opts.case3_constant = c3;
    ThresholdReport rep = classify(snap.field, mp, lib, opts);

    std::cout << rep.to_key_value();
    const fs::path out = out_dir_from(out_flag);
    fs::create_directories(out);
    std::ofstream csv(out / "threshold_report.csv");
    csv << ThresholdReport::csv_header() << "\n" << rep.csv_row() << "\n";
    return kExitOk;
}

int run_one_simulation(const IniConfig& cfg, const fs::path& out) {
    ModelParams mp = model_from(cfg);
    mp.validate();
    Grid grid = grid_from(cfg);
    cfg.require_section("sim");

    SimConfig sim;
    sim.dt = cfg.get_double("sim", "dt");
    sim.t_end = cfg.get_double("sim", "t_end");
    sim.snapshot_every = cfg.get_int_or("sim", "snapshot_every", 0);
    sim.diag_every = cfg.get_int_or("sim", "diag_every", 1);
    sim.stop_gradient_factor = cfg.get_double_or("sim", "stop_gradient_factor",
                                                 std::numeric_limits<double>::infinity());
    sim.stop_mass_drift = cfg.get_double_or("sim", "stop_mass_drift", 1e-8);
    sim.adapt = cfg.get_bool_or("sim", "adapt", false);
    sim.dt_min = cfg.get_double_or("sim", "dt_min", 1e-9);
    if (auto d = cfg.maybe_double("diagnostics", "conc_delta")) sim.conc_delta = d;

    Field u0 = initial_data(cfg, grid);

    std::optional<VirialWeight> weight;
    if (auto R = cfg.maybe_double("diagnostics", "virial_R")) weight = make_weight(*R, grid);

    TrajectoryResult traj = run(u0, mp, sim, weight ? &*weight : nullptr);

    fs::create_directories(out);
    write_diagnostics_csv((out / "diagnostics.csv").string(), traj.diagnostics);
    fs::path snap_dir = out / "snapshots";
    fs::create_directories(snap_dir);
    int snap_idx = 0;
    for (const auto& s : traj.snapshots) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%05d.fns", snap_idx++);
        write_snapshot((snap_dir / name).string(), s.field, s.t);
    }
    if (cfg.get_bool_or("diagnostics", "svg", false)) write_svgs(out, traj.diagnostics);

    Manifest man;
    echo_config(man, cfg);
    man["artifact.diagnostics_csv"] = "diagnostics.csv";
    man["artifact.snapshot_dir"] = "snapshots";
    man["format.snapshot_version"] = std::to_string(kSnapshotVersion);
    man["run.stop_reason"] = to_string(traj.stop_reason);
    man["run.t_stop"] = format_g17(traj.t_stop);
    man["run.timestamp"] = std::to_string(std::time(nullptr));
    write_manifest((out / "manifest.txt").string(), man);

    std::cout << "simulate: " << to_string(traj.stop_reason) << " at t=" << traj.t_stop << " ("
              << traj.diagnostics.size() << " diagnostics rows, " << traj.snapshots.size()
              << " snapshots) -> " << out.string() << "\n";
    return traj.stop_reason == StopReason::MassDriftAbort ? kExitIntegrity : kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_flag,
                 const std::vector<std::string>& overrides, int jobs) {
    IniConfig base = IniConfig::parse_file(config_path);
    base.validate_schema(kSchema);

    // Parse overrides section.key=v1[,v2,...]; multi-value overrides sweep.
    struct Override {
        std::string section, key;
        std::vector<std::string> values;
    };
    std::vector<Override> parsed;
    for (const auto& o : overrides) {
        auto eq = o.find('=');
        auto dot = o.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw config_error("malformed --override (want section.key=value[,value...]): " + o);
        Override ov;
        ov.section = o.substr(0, dot);
        ov.key = o.substr(dot + 1, eq - dot - 1);
        std::string rest = o.substr(eq + 1);
        std::istringstream ss(rest);
        std::string v;
        while (std::getline(ss, v, ',')) ov.values.push_back(v);
        if (ov.values.empty()) throw config_error("empty --override value: " + o);
        if (!kSchema.count(ov.section) || !kSchema.at(ov.section).count(ov.key))
            throw config_error("unknown override target: " + ov.section + "." + ov.key);
        parsed.push_back(std::move(ov));
    }

    std::size_t combos = 1;
    for (const auto& ov : parsed) combos *= ov.values.size();
    const fs::path out = out_dir_from(out_flag);

    if (combos <= 1) {
        IniConfig cfg = base;
        for (const auto& ov : parsed) cfg.set(ov.section, ov.key, ov.values[0]);
        return run_one_simulation(cfg, out);
    }

    std::vector<IniConfig> cfgs;
    for (std::size_t c = 0; c < combos; ++c) {
        IniConfig cfg = base;
        std::size_t rem = c;
        for (const auto& ov : parsed) {
            cfg.set(ov.section, ov.key, ov.values[rem % ov.values.size()]);
            rem /= ov.values.size();
        }
        cfgs.push_back(std::move(cfg));
    }

    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{kExitOk};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cfgs.size()) return;
            char sub[32];
            std::snprintf(sub, sizeof sub, "sweep_%03zu", i);
            int rc = kExitIntegrity;
            try {
                rc = run_one_simulation(cfgs[i], out / sub);
            } catch (const std::exception& e) {
                std::cerr << sub << ": " << e.what() << "\n";
            }
            int cur = worst.load();
            while (rc > cur && !worst.compare_exchange_weak(cur, rc)) {
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(cfgs.size())));
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return worst.load();
}

int cmd_analyze(const std::string& manifest_path, const std::string& out_flag) {
    Manifest man = read_manifest(manifest_path);
    const fs::path base = fs::path(manifest_path).parent_path();

    // Rebuild the configuration echo.
    IniConfig cfg;
    for (const auto& [k, v] : man) {
        if (k.rfind("config.", 0) != 0) continue;
        auto rest = k.substr(7);
        auto dot = rest.find('.');
        if (dot == std::string::npos) continue;
        cfg.set(rest.substr(0, dot), rest.substr(dot + 1), v);
    }
    ModelParams mp = model_from(cfg);
    mp.validate();

    fs::path snap_dir = base / man.at("artifact.snapshot_dir");
    std::vector<fs::path> files;
    if (fs::is_directory(snap_dir))
        for (const auto& e : fs::directory_iterator(snap_dir))
            if (e.path().extension() == ".fns") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw data_error("analyze: no snapshots in " + snap_dir.string());

    TrajectoryResult traj;
    traj.params = mp;
    for (const auto& f : files) {
        LoadedSnapshot s = read_snapshot(f.string());
        traj.snapshots.push_back({s.time, std::move(s.field)});
    }
    traj.diagnostics = read_diagnostics_csv((base / man.at("artifact.diagnostics_csv")).string());
    traj.final_field = traj.snapshots.back().field;
    traj.t_stop = traj.snapshots.back().t;

    const fs::path out = out_dir_from(out_flag.empty() ? base.string() : out_flag);
    fs::create_directories(out);

    const double delta = cfg.get_double_or("diagnostics", "conc_delta", 0.5 / mp.s);
    auto conc = concentration_series(traj, delta);
    write_concentration_csv((out / "concentration.csv").string(), conc, mp.dim);

    // Limiting profile against the critical ground state when one is available.
    std::vector<GroundState> lib = load_gs_library(cfg);
    const GroundState* q = nullptr;
    for (const auto& gs : lib)
        if (gs.dim == mp.dim && std::abs(gs.s - mp.s) <= 1e-9 &&
            std::abs(gs.p - mp.critical_p()) <= 1e-9)
            q = &gs;
    if (q) {
        std::vector<ProfileDistance> profs;
        for (const auto& s : traj.snapshots) {
            ProfileDistance pd = limiting_profile(s.field, *q, mp.s);
            pd.t = s.t;
            profs.push_back(pd);
        }
        write_profile_csv((out / "profile.csv").string(), profs);
        SvgPlot p("Limiting profile distance", "t", "Hs distance to Q");
        std::vector<double> t, d;
        for (const auto& r : profs) {
            t.push_back(r.t);
            d.push_back(r.hs_dist);
        }
        p.add_series("hs_dist", t, d, "#9467bd");
        p.write((out / "profile.svg").string());
    } else {
        std::cout << "analyze: no matching critical ground state; profile series skipped\n";
    }

    // Rate fit over the trailing window of the Hs column.
    const double window = cfg.get_double_or("diagnostics", "rate_window", 0.4);
    std::ofstream rf(out / "ratefit.txt");
    try {
        RateFit fit = blowup_rate_fit(traj, window);
        rf << "t_star=" << format_g17(fit.t_star) << "\n"
           << "kappa=" << format_g17(fit.kappa) << "\n"
           << "r_squared=" << format_g17(fit.r_squared) << "\n"
           << "flag=" << (fit.flag.empty() ? "ok" : fit.flag) << "\n";
    } catch (const fit_error& e) {
        rf << "flag=NotBlowup\nerror=" << e.what() << "\n";
    }

    {
        SvgPlot p("Windowed mass", "t", "concentration mass");
        std::vector<double> t, w;
        for (const auto& r : conc) {
            t.push_back(r.t);
            w.push_back(r.window_mass);
        }
        p.add_series("window_mass", t, w, "#ff7f0e");
        p.write((out / "concentration.svg").string());
    }

    std::cout << "analyze: wrote concentration.csv" << (q ? ", profile.csv" : "")
              << ", ratefit.txt -> " << out.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracollapse: fractional NLS blow-up toolkit"};
    app.require_subcommand(1);

    std::string config_path, data_path, manifest_path, out_dir = "out";
    int jobs = 1;
    std::vector<std::string> overrides;

    auto* gs = app.add_subcommand("ground-state", "solve a ground state and certify it");
    gs->add_option("--config", config_path, "INI config with [model] and [grid]")->required();
    gs->add_option("--out", out_dir, "output directory");

    auto* cl = app.add_subcommand("classify", "classify initial data against the thresholds");
    cl->add_option("--config", config_path, "INI config")->required();
    cl->add_option("--data", data_path, "snapshot file with the initial data")->required();
    cl->add_option("--out", out_dir, "output directory");

    auto* si = app.add_subcommand("simulate", "evolve initial data by Strang splitting");
    si->add_option("--config", config_path, "INI config")->required();
    si->add_option("--out", out_dir, "output directory");
    si->add_option("--jobs", jobs, "worker pool size for sweeps");
    si->add_option("--override", overrides,
                   "section.key=value[,value,...] (multi-value fans out a sweep)");

    auto* an = app.add_subcommand("analyze", "blow-up diagnostics over persisted snapshots");
    an->add_option("--manifest", manifest_path, "manifest of a simulate run")->required();
    an->add_option("--out", out_dir, "output directory (default: next to the manifest)");

    std::string analyze_out;
    try {
        app.parse(argc, argv);
        if (gs->parsed()) return cmd_ground_state(config_path, out_dir);
        if (cl->parsed()) return cmd_classify(config_path, data_path, out_dir);
        if (si->parsed()) return cmd_simulate(config_path, out_dir, overrides, jobs);
        if (an->parsed()) {
            analyze_out = an->count("--out") ? out_dir : "";
            return cmd_analyze(manifest_path, analyze_out);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const convergence_error& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const degenerate_solution_error& e) {
        std::cerr << "degenerate solution: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const dependency_error& e) {
        std::cerr << "dependency error: " << e.what() << "\n";
        return kExitDependency;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDependency;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitDependency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIntegrity;
    }
    return kExitConfig;
}
