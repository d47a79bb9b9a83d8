// Command-line driver: one subcommand per experiment, CSV artifacts plus a
// manifest.json in the output directory.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "sulph/config.hpp"
#include "sulph/csv.hpp"
#include "sulph/ensemble.hpp"
#include "sulph/error.hpp"
#include "sulph/lamperti.hpp"
#include "sulph/lsst.hpp"

namespace fs = std::filesystem;
using namespace sulph;

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::size_t> paths;
    std::string out_dir{"out"};
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::IoError, "SHA-256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

class Run {
public:
    Run(const Options& opt, std::string mode) : opt_(opt), mode_(std::move(mode)) {
        const std::string text = read_file(opt.config_path);
        hash_ = sha256_hex(text);
        cfg_ = parse_config(text);
        if (opt.seed) cfg_.seed = *opt.seed;
        if (opt.threads) cfg_.threads = *opt.threads;
        cfg_.validate();
        out_ = opt.out_dir;
        std::error_code ec;
        fs::create_directories(out_, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_.string() + ": " + ec.message());
    }

    ExperimentConfig& config() { return cfg_; }
    fs::path file(const std::string& name) {
        files_.push_back(name);
        return out_ / name;
    }
    nlohmann::json& extra() { return extra_; }

    void write_manifest() const {
        nlohmann::json m;
        m["mode"] = mode_;
        m["version"] = SULPH_VERSION;
        m["config_sha256"] = hash_;
        m["seed"] = cfg_.seed;
        m["files"] = files_;
        if (!extra_.is_null()) m["summary"] = extra_;
        std::ofstream os(out_ / "manifest.json", std::ios::binary | std::ios::trunc);
        os << m.dump(2) << '\n';
        if (!os) throw Error(ErrorCode::IoError, "cannot write manifest.json");
    }

private:
    Options opt_;
    std::string mode_;
    std::string hash_;
    ExperimentConfig cfg_;
    fs::path out_;
    std::vector<std::string> files_;
    nlohmann::json extra_;
};

nlohmann::json bounds_json(const BoundsMonitor& b) {
    return {{"pairs_checked", b.pairs_checked},
            {"nodes_checked", b.nodes_checked},
            {"s_violations", b.s_violations},
            {"c_violations", b.c_violations},
            {"monotone_violations", b.monotone_violations},
            {"first_violation", b.first_violation}};
}

void write_stat_long(CsvWriter& csv, const std::vector<double>& t, const std::vector<double>& x, const char* stat,
                     const Field2D& f) {
    for (std::size_t r = 0; r < t.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c) {
            const double head[2] = {t[r], x[c]};
            const double value = f(r, c);
            csv.row(head, stat, std::span<const double>(&value, 1));
        }
}

int report_bounds(const BoundsMonitor& b) {
    if (b.violations() == 0) return 0;
    std::cerr << "bounds violated " << b.violations() << " times; first: " << b.first_violation << '\n';
    return 3;
}

int cmd_sde_path(const Options& opt) {
    Run run(opt, "sde-path");
    const ExperimentConfig& cfg = run.config();
    const SimulationSetup setup = cfg.simulation();
    const std::size_t sub = std::max<std::size_t>(1, cfg.sde_substeps);
    const double delta = setup.grid.dt / static_cast<double>(sub);
    const std::size_t n_steps = setup.grid.n_steps * sub;
    const std::size_t n_paths = opt.paths.value_or(1);
    for (std::size_t j = 0; j < n_paths; ++j) {
        SdePath path;
        if (setup.sde.deterministic()) {
            path = deterministic_path(setup.sde, delta, n_steps);
        } else {
            const TruncationSpec spec = make_truncation(lamperti_coefficients(setup.sde), cfg.k, delta);
            path = sample_path(setup.sde, spec, cfg.psi0, n_steps, cfg.seed, j);
        }
        CsvWriter csv(run.file("sde_path_" + std::to_string(j) + ".csv"), {"t", "y", "psi"});
        for (std::size_t n = 0; n <= path.steps(); ++n) csv.row({path.times[n], path.y[n], path.psi[n]});
        csv.close();
    }
    run.write_manifest();
    return 0;
}

int cmd_sde_convergence(const Options& opt) {
    Run run(opt, "sde-convergence");
    ConvergenceConfig conv = run.config().convergence();
    if (opt.paths) conv.n_paths = *opt.paths;
    const ConvergenceStudy st = strong_errors(conv);
    {
        CsvWriter csv(run.file("errors.csv"), {"delta", "ratio", "e_final", "e_uniform"});
        for (std::size_t i = 0; i < st.deltas.size(); ++i)
            csv.row({st.deltas[i], static_cast<double>(st.ratios[i]), st.errors_final[i], st.errors_uniform[i]});
        csv.close();
    }
    {
        CsvWriter csv(run.file("fit.csv"), {"error", "q", "C"});
        csv.row("final", std::vector<double>{st.fit_final.q, st.fit_final.c()});
        csv.row("uniform", std::vector<double>{st.fit_uniform.q, st.fit_uniform.c()});
        csv.close();
    }
    run.extra() = {{"n_paths", st.n_paths}, {"delta_ref", st.delta_ref}};
    run.write_manifest();
    std::cout << "q_final = " << st.fit_final.q << ", q_uniform = " << st.fit_uniform.q << '\n';
    return 0;
}

int cmd_simulate(const Options& opt) {
    Run run(opt, "simulate");
    const ExperimentConfig& cfg = run.config();
    const SimulationSetup setup = cfg.simulation();
    const OutputSpec out = cfg.output();
    const BoundaryPair b = sample_boundary(setup, cfg.seed, 0);
    const SolutionFields sol = solve_system(setup.grid, setup.material, b, out);
    {
        CsvWriter csv(run.file("boundary.csv"), {"t", "psi", "c", "s"});
        for (std::size_t n : out.time_indices(setup.grid))
            csv.row({setup.grid.t(n), b.psi[n], b.c_left[n], b.s_left[n]});
        csv.close();
    }
    for (Quantity q : all_quantities) {
        if (!out.keep[static_cast<std::size_t>(q)]) continue;
        const std::string name(quantity_name(q));
        write_field_long(run.file("field_" + name + ".csv"), sol.t, sol.x, sol[q], name);
    }
    run.extra() = {{"bounds", bounds_json(sol.bounds)}};
    run.write_manifest();
    return report_bounds(sol.bounds);
}

int cmd_ensemble(const Options& opt) {
    Run run(opt, "ensemble");
    const ExperimentConfig& cfg = run.config();
    const SimulationSetup setup = cfg.simulation();
    const OutputSpec out = cfg.output();
    const std::size_t n_paths = opt.paths.value_or(cfg.ensemble_paths());
    const auto runs = run_ensemble(setup, n_paths, cfg.seed, out, cfg.threads);

    BoundsMonitor bounds;
    for (const auto& r : runs) bounds.merge(r.bounds);
    for (Quantity q : all_quantities) {
        if (!out.keep[static_cast<std::size_t>(q)]) continue;
        const FieldStatistics st = field_statistics(runs, q);
        const std::string name(quantity_name(q));
        CsvWriter csv(run.file("stats_" + name + ".csv"), {"t", "x", "stat", "value"});
        const auto& t = runs.front().t;
        const auto& x = runs.front().x;
        write_stat_long(csv, t, x, "mean", st.mean);
        write_stat_long(csv, t, x, "std", st.std);
        write_stat_long(csv, t, x, "p25", st.p25);
        write_stat_long(csv, t, x, "p50", st.p50);
        write_stat_long(csv, t, x, "p75", st.p75);
        csv.close();
    }
    run.extra() = {{"n_paths", n_paths}, {"bounds", bounds_json(bounds)}};
    run.write_manifest();
    return report_bounds(bounds);
}

int cmd_accuracy(const Options& opt) {
    Run run(opt, "accuracy");
    AccuracyConfig acc = run.config().accuracy();
    if (opt.paths) acc.n_paths = *opt.paths;
    const AccuracyResult res = spatial_accuracy(acc);
    CsvWriter csv(run.file("accuracy.csv"), {"path", "dx", "p_rho", "p_c"});
    for (std::size_t j = 0; j < res.p_rho.size(); ++j)
        for (std::size_t l = 0; l < res.dx.size(); ++l)
            csv.row({static_cast<double>(j), res.dx[l], res.p_rho[j][l], res.p_c[j][l]});
    csv.close();
    run.write_manifest();
    return 0;
}

int cmd_rmsd(const Options& opt) {
    Run run(opt, "rmsd");
    const ExperimentConfig& cfg = run.config();
    SimulationSetup setup = cfg.simulation();
    OutputSpec out = cfg.output();
    out.keep = {false, false, false, true, true};
    const std::size_t n_paths = opt.paths.value_or(cfg.ensemble_paths());
    const auto runs = run_ensemble(setup, n_paths, cfg.seed, out, cfg.threads);

    PearsonCoefficients det = cfg.sde;
    det.sigma = 0.0;
    setup.sde = PearsonParams::validate(det);
    const SolutionFields reference = simulate_path(setup, cfg.seed, 0, out);

    BoundsMonitor bounds = reference.bounds;
    for (const auto& r : runs) bounds.merge(r.bounds);
    for (Quantity q : {Quantity::Rho, Quantity::C}) {
        const std::string name(quantity_name(q));
        const Field2D f = rmsd(runs, reference, q);
        CsvWriter csv(run.file("rmsd_" + name + ".csv"), {"t", "x", "stat", "value"});
        write_stat_long(csv, reference.t, reference.x, "rmsd", f);
        csv.close();
    }
    run.extra() = {{"n_paths", n_paths}, {"bounds", bounds_json(bounds)}};
    run.write_manifest();
    return report_bounds(bounds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic sulphation simulator"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "INI configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "master seed (overrides [run] seed)");
        sub->add_option("--threads", opt.threads, "worker thread cap, 0 = all cores");
        sub->add_option("--paths", opt.paths, "number of paths (overrides the config)");
        sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    };

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(const Options&);
    };
    const Command commands[] = {
        {"sde-path", "sample boundary paths (t, y, psi)", cmd_sde_path},
        {"sde-convergence", "strong error table and fitted orders", cmd_sde_convergence},
        {"simulate", "one coupled trajectory, full fields", cmd_simulate},
        {"ensemble", "mean, std and quartile fields over many paths", cmd_ensemble},
        {"accuracy", "spatial accuracy orders of rho and c", cmd_accuracy},
        {"rmsd", "noise impact against the deterministic run", cmd_rmsd},
    };
    int status = 0;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub);
        sub->callback([&status, &opt, fn = c.fn] { status = fn(opt); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return status;
}
