#pragma once

#include <cstdint>
#include <random>

namespace sulph {

/// Standard normal draws from an independent stream addressed by
/// (master seed, stream index). Path j of an ensemble always reads stream j,
/// so results do not depend on which thread simulates it.
class NormalStream {
public:
    NormalStream(std::uint64_t master_seed, std::uint64_t stream_index);

    double operator()() { return dist_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace sulph
