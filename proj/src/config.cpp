#include "sulph/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sulph/error.hpp"

namespace sulph {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
    std::ostringstream os;
    os << "key '" << key << "' = '" << value << "' is not " << expected;
    throw Error(ErrorCode::ConfigParseError, os.str());
}

double to_double(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    double out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(key, raw, "a number");
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    std::uint64_t out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(key, raw, "a non-negative integer");
    return out;
}

bool to_bool(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad_value(key, raw, "a boolean");
}

std::vector<std::string> split_list(const std::string& raw) {
    std::vector<std::string> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, const std::string& value)>;

Setter set_double(double ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, const std::string& k, const std::string& v) { c.*field = to_double(k, v); };
}

Setter set_size(std::size_t ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
        c.*field = static_cast<std::size_t>(to_u64(k, v));
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"sde.alpha", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.sde.alpha = to_double(k, v); }},
        {"sde.gamma", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.sde.gamma = to_double(k, v); }},
        {"sde.sigma", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.sde.sigma = to_double(k, v); }},
        {"sde.eta", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.sde.eta = to_double(k, v); }},
        {"sde.k", set_double(&ExperimentConfig::k)},
        {"sde.psi0", set_double(&ExperimentConfig::psi0)},
        {"material.phi1", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.material.phi1 = to_double(k, v); }},
        {"material.phi2", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.material.phi2 = to_double(k, v); }},
        {"material.lambda", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.material.lambda = to_double(k, v); }},
        {"material.s0_bar", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.material.s0_bar = to_double(k, v); }},
        {"material.c0_bar", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.material.c0_bar = to_double(k, v); }},
        {"grid.x_bar", set_double(&ExperimentConfig::x_bar)},
        {"grid.T", set_double(&ExperimentConfig::t_end)},
        {"grid.dx", set_double(&ExperimentConfig::dx)},
        {"grid.dt", set_double(&ExperimentConfig::dt)},
        {"grid.sde_substeps", set_size(&ExperimentConfig::sde_substeps)},
        {"run.seed", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.seed = to_u64(k, v); }},
        {"run.paths", set_size(&ExperimentConfig::paths)},
        {"run.threads", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.threads = static_cast<unsigned>(to_u64(k, v));
         }},
        {"run.full_scale", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.full_scale = to_bool(k, v); }},
        {"output.time_stride", set_size(&ExperimentConfig::time_stride)},
        {"output.space_stride", set_size(&ExperimentConfig::space_stride)},
        {"output.x_view", set_double(&ExperimentConfig::x_view)},
        {"output.quantities", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.quantities = {false, false, false, false, false};
             for (const auto& name : split_list(v)) {
                 bool found = false;
                 for (Quantity q : all_quantities) {
                     if (quantity_name(q) == name) {
                         c.quantities[static_cast<std::size_t>(q)] = true;
                         found = true;
                     }
                 }
                 if (!found) bad_value(k, name, "one of u, v, s, c, rho");
             }
         }},
        {"convergence.T", set_double(&ExperimentConfig::conv_t_end)},
        {"convergence.fine_exponent", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.conv_fine_exponent = static_cast<int>(to_u64(k, v));
         }},
        {"convergence.ratios", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.conv_ratios.clear();
             for (const auto& item : split_list(v)) c.conv_ratios.push_back(static_cast<std::size_t>(to_u64(k, item)));
         }},
        {"convergence.paths", set_size(&ExperimentConfig::conv_paths)},
        {"accuracy.T", set_double(&ExperimentConfig::acc_t_end)},
        {"accuracy.dt", set_double(&ExperimentConfig::acc_dt)},
        {"accuracy.dx", set_double(&ExperimentConfig::acc_dx)},
        {"accuracy.levels", set_size(&ExperimentConfig::acc_levels)},
        {"accuracy.paths", set_size(&ExperimentConfig::acc_paths)},
    };
    return table;
}

}  // namespace

PearsonParams ExperimentConfig::pearson() const { return PearsonParams::validate(sde); }

MaterialParams ExperimentConfig::material_params() const { return MaterialParams::validate(material, sde.eta); }

Grid1D ExperimentConfig::grid() const { return Grid1D::from_steps(x_bar, t_end, dx, dt); }

SimulationSetup ExperimentConfig::simulation() const {
    const MaterialParams mat = material_params();
    const Grid1D g = grid();
    check_conditions(g, mat);
    return {pearson(), k, psi0, mat, g, sde_substeps};
}

OutputSpec ExperimentConfig::output() const {
    OutputSpec out;
    out.time_stride = time_stride;
    out.space_stride = space_stride;
    out.x_view = x_view;
    out.keep = quantities;
    out.monitor = true;
    return out;
}

ConvergenceConfig ExperimentConfig::convergence() const {
    ConvergenceConfig c{pearson()};
    c.k = k;
    c.psi0 = psi0;
    c.t_end = conv_t_end;
    c.fine_exponent = conv_fine_exponent;
    c.ratios = conv_ratios;
    c.n_paths = convergence_paths();
    c.seed = seed;
    c.threads = threads;
    return c;
}

AccuracyConfig ExperimentConfig::accuracy() const {
    return {.sde = pearson(),
            .k = k,
            .psi0 = psi0,
            .material = material_params(),
            .x_bar = x_bar,
            .t_end = acc_t_end,
            .dt = acc_dt,
            .dx = acc_dx,
            .levels = acc_levels,
            .n_paths = acc_paths,
            .seed = seed,
            .threads = threads};
}

void ExperimentConfig::validate() const {
    const PearsonParams p = pearson();
    if (!(k > 0.0 && k < 1.0)) throw Error(ErrorCode::ValidationError, "sde.k must lie in (0, 1)");
    if (!(psi0 >= 0.0 && psi0 <= p.eta())) throw Error(ErrorCode::ValidationError, "sde.psi0 must lie in [0, eta]");
    if (sde_substeps == 0) throw Error(ErrorCode::ValidationError, "grid.sde_substeps must be >= 1");
    if (time_stride == 0 || space_stride == 0) throw Error(ErrorCode::ValidationError, "output strides must be >= 1");
    simulation();
}

ExperimentConfig parse_config(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorCode::ConfigParseError, e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    ExperimentConfig cfg;
    const auto& table = setters();
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw Error(ErrorCode::ConfigParseError, "key '" + section + "' outside of a section");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            const auto it = table.find(full);
            if (it == table.end()) throw Error(ErrorCode::ConfigParseError, "unknown key '" + full + "'");
            it->second(cfg, full, value.data());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace sulph
