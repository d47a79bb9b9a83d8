#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sulph/ensemble.hpp"
#include "sulph/pearson.hpp"
#include "sulph/sulphation.hpp"

namespace sulph {

/// Raw experiment settings as read from an INI file. Every key is optional;
/// absent keys keep the defaults below.
///
///   [sde]          alpha gamma sigma eta k psi0
///   [material]     phi1 phi2 lambda s0_bar c0_bar
///   [grid]         x_bar T dx dt sde_substeps
///   [run]          seed paths threads full_scale
///   [output]       time_stride space_stride x_view quantities
///   [convergence]  T fine_exponent ratios paths
///   [accuracy]     T dt dx levels paths
struct ExperimentConfig {
    PearsonCoefficients sde{};
    double k{0.22};
    double psi0{0.0};

    MaterialCoefficients material{};

    double x_bar{1.5};
    double t_end{1.5};
    double dx{0.01};
    double dt{1.99e-5};
    std::size_t sde_substeps{1};

    std::uint64_t seed{20240501};
    std::size_t paths{200};
    unsigned threads{0};
    bool full_scale{false};

    std::size_t time_stride{1000};
    std::size_t space_stride{1};
    double x_view{1.0};
    std::array<bool, 5> quantities{true, true, true, true, true};

    double conv_t_end{1.0};
    int conv_fine_exponent{15};
    std::vector<std::size_t> conv_ratios{16, 32, 64, 128, 256};
    std::size_t conv_paths{2000};

    double acc_t_end{1.0};
    double acc_dt{1.0 / 524288.0};
    double acc_dx{0.125};
    std::size_t acc_levels{2};
    std::size_t acc_paths{3};

    /// Path counts used with full_scale = true.
    static constexpr std::size_t full_paths = 500;
    static constexpr std::size_t full_conv_paths = 10000;

    std::size_t ensemble_paths() const noexcept { return full_scale ? full_paths : paths; }
    std::size_t convergence_paths() const noexcept { return full_scale ? full_conv_paths : conv_paths; }

    // Validated views. Each throws the error of the violated condition.
    PearsonParams pearson() const;
    MaterialParams material_params() const;
    Grid1D grid() const;
    SimulationSetup simulation() const;
    OutputSpec output() const;
    ConvergenceConfig convergence() const;
    AccuracyConfig accuracy() const;

    /// Runs every validator relevant to the experiments.
    void validate() const;
};

/// Throws ConfigParseError on malformed text, unknown sections or keys and
/// unparsable values.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace sulph
