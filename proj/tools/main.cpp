#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "darboux/catalog.hpp"
#include "darboux/checks.hpp"
#include "darboux/errors.hpp"
#include "darboux/montecarlo.hpp"
#include "darboux/run_config.hpp"
#include "darboux/transform.hpp"

namespace {

using namespace darboux;

std::vector<double> make_grid(const RunConfig& cfg) {
    std::vector<double> g(cfg.grid_n);
    for (int i = 0; i < cfg.grid_n; ++i) {
        g[i] = cfg.grid_lo + (cfg.grid_hi - cfg.grid_lo) * i / (cfg.grid_n - 1);
    }
    return g;
}

std::ostream& open_output(const RunConfig& cfg, std::ofstream& file) {
    if (cfg.out_path.empty()) return std::cout;
    file.open(cfg.out_path, std::ios::binary);  // '\n' endings everywhere
    if (!file) throw ConfigError("cannot open output file '" + cfg.out_path + "'");
    return file;
}

// Registered non-catalog presets: pY closed form plus the (possibly
// signed) construction output for the preset's seed.
struct Preset {
    TransitionKernel pY;
    SeedFunction seed;
    double m_h;
};

std::optional<Preset> find_preset(const std::string& name) {
    if (name == "reflected-bm") {
        return Preset{reflected_bm_kernel(), linear_seed(), 0.0};
    }
    return std::nullopt;
}

int cmd_density(const RunConfig& cfg) {
    if (cfg.example.empty()) throw ConfigError("density: field example is required");
    std::ofstream file;
    std::ostream& out = open_output(cfg, file);
    const std::vector<double> grid = make_grid(cfg);

    std::function<double(double, double, double)> py, pyt;
    if (const auto preset = find_preset(cfg.example)) {
        py = [p = *preset](double t, double x, double y) { return p.pY(t, x, y); };
        pyt = [p = *preset](double t, double x, double y) {
            return darboux_density(p.pY, p.seed, p.m_h, t, x, y);
        };
    } else {
        const ExampleModel m = make_example(cfg.example, cfg.gamma);
        py = [m](double t, double x, double y) { return pY_eval(m, t, x, y); };
        pyt = [m](double t, double x, double y) { return pYtilde_eval(m, t, x, y); };
    }

    out << "t,x,y,p_Y,p_Ytilde\n";
    for (double t : cfg.t_values) {
        for (double x : grid) {
            for (double y : grid) {
                out << format_double17(t) << ',' << format_double17(x) << ','
                    << format_double17(y) << ',' << format_double17(py(t, x, y)) << ','
                    << format_double17(pyt(t, x, y)) << '\n';
            }
        }
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    if (cfg.suite.empty()) throw ConfigError("verify: field suite is required");
    CheckOptions opts;
    opts.example = cfg.example;
    if (!std::isnan(cfg.gamma)) opts.gamma = cfg.gamma;
    opts.mc_paths = cfg.paths;
    opts.mc_dt = cfg.dt;
    opts.mc_seed = cfg.seed;
    const std::vector<CheckResult> results = run_suite(cfg.suite, opts);

    std::ofstream file;
    std::ostream& out = open_output(cfg, file);
    int failures = 0;
    for (const CheckResult& r : results) {
        if (!r.passed) ++failures;
        out << (r.passed ? "PASS " : "FAIL ") << r.name
            << " residual=" << format_double17(r.residual)
            << " tol=" << format_double17(r.tolerance);
        if (!r.note.empty()) out << "  # " << r.note;
        out << '\n';
    }
    out << "suite=" << cfg.suite << " checks=" << results.size() << " failures=" << failures
        << '\n';
    return failures == 0 ? 0 : 1;
}

int cmd_simulate(const RunConfig& cfg) {
    if (cfg.example.empty()) throw ConfigError("simulate: field example is required");
    if (std::isnan(cfg.x0)) throw ConfigError("simulate: field x0 is required");
    const ExampleModel m = make_example(cfg.example, cfg.gamma);
    const double t = cfg.t_values.front();
    SimConfig sim{cfg.dt, cfg.paths, cfg.seed, 0};
    const SimReport rep = simulate_paths(m.spec_Ytilde, cfg.x0, t, sim);
    const HistogramComparison cmp =
        mc_density_error(rep.outcomes, m.pYtilde, t, cfg.x0, cfg.grid_lo, cfg.grid_hi, cfg.bins);

    std::ofstream file;
    std::ostream& out = open_output(cfg, file);
    out << "bin_lo,bin_hi,mc_mass,kernel_mass,z_score\n";
    for (const HistogramBin& b : cmp.bins) {
        out << format_double17(b.lo) << ',' << format_double17(b.hi) << ','
            << format_double17(b.mc_mass) << ',' << format_double17(b.kernel_mass) << ','
            << format_double17(b.z) << '\n';
    }
    std::cerr << "simulate: " << cfg.paths << " paths, " << cmp.alive
              << " alive, max |z| = " << cmp.max_abs_z << "\n";
    return 0;
}

int cmd_catalog(const RunConfig& cfg) {
    std::ofstream file;
    std::ostream& out = open_output(cfg, file);
    for (const std::string& id : catalog_ids()) {
        const ExampleModel m = make_example(id, id == "e3" ? 0.5 : cfg.gamma);
        out << id << ": " << m.description << "  [lambda=" << format_double(m.seed.lambda)
            << (id == "e3" ? ", takes --gamma" : "") << "]\n";
    }
    out << "presets: reflected-bm (non-invariant linear seed; construction output "
           "goes negative)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Darboux transforms of killed one-dimensional diffusions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string grid_text, t_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--example", cfg.example, "catalog id (e1..e5) or preset");
        sub->add_option("--gamma", cfg.gamma, "elastic parameter for e3");
        sub->add_option("--t", t_text, "time points, comma separated");
        sub->add_option("--grid", grid_text, "grid as lo:hi:n");
        sub->add_option("--tol", cfg.tol, "tolerance");
        sub->add_option("--paths", cfg.paths, "Monte-Carlo path count");
        sub->add_option("--dt", cfg.dt, "Euler step");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--bins", cfg.bins, "histogram bins");
        sub->add_option("--x0", cfg.x0, "start point for simulation");
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    };

    CLI::App* density = app.add_subcommand("density", "tabulate p_Y and p_Ytilde on a grid");
    add_common(density);
    CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("suite", cfg.suite, "one of: invariance theorem48 duality intertwine "
                                           "spectral lemma51 appendixA mc excessive "
                                           "corollary52 negativity");
    add_common(verify);
    CLI::App* simulate = app.add_subcommand("simulate", "Euler-Maruyama histogram vs kernel");
    add_common(simulate);
    CLI::App* catalog = app.add_subcommand("catalog", "list catalog models");
    add_common(catalog);

    CLI11_PARSE(app, argc, argv);

    try {
        // file config first, then explicit flags override
        if (!config_path.empty()) {
            RunConfig file_cfg = load_config_file(config_path);
            const RunConfig defaults;
            if (cfg.example.empty()) cfg.example = file_cfg.example;
            if (cfg.suite.empty()) cfg.suite = file_cfg.suite;
            if (std::isnan(cfg.gamma)) cfg.gamma = file_cfg.gamma;
            if (t_text.empty()) cfg.t_values = file_cfg.t_values;
            if (grid_text.empty()) {
                cfg.grid_lo = file_cfg.grid_lo;
                cfg.grid_hi = file_cfg.grid_hi;
                cfg.grid_n = file_cfg.grid_n;
            }
            if (cfg.tol == defaults.tol) cfg.tol = file_cfg.tol;
            if (cfg.paths == defaults.paths) cfg.paths = file_cfg.paths;
            if (cfg.dt == defaults.dt) cfg.dt = file_cfg.dt;
            if (cfg.seed == defaults.seed) cfg.seed = file_cfg.seed;
            if (cfg.bins == defaults.bins) cfg.bins = file_cfg.bins;
            if (std::isnan(cfg.x0)) cfg.x0 = file_cfg.x0;
            if (cfg.out_path.empty()) cfg.out_path = file_cfg.out_path;
        }
        if (!t_text.empty()) cfg.t_values = parse_double_list(t_text, "t");
        if (!grid_text.empty()) {
            RunConfig g = parse_config("grid=" + grid_text + "\n");
            cfg.grid_lo = g.grid_lo;
            cfg.grid_hi = g.grid_hi;
            cfg.grid_n = g.grid_n;
        }

        if (density->parsed()) cfg.command = "density";
        if (verify->parsed()) cfg.command = "verify";
        if (simulate->parsed()) cfg.command = "simulate";
        if (catalog->parsed()) cfg.command = "catalog";
        cfg.validate();

        if (cfg.command == "density") return cmd_density(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        if (cfg.command == "simulate") return cmd_simulate(cfg);
        return cmd_catalog(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownSuite& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
