#include "sulph/rng.hpp"

namespace sulph {

namespace {

std::mt19937_64 make_engine(std::uint64_t master_seed, std::uint64_t stream_index) {
    // Fixed tag keeps these streams disjoint from any other use of the seed.
    constexpr std::uint32_t tag = 0x51f7'a7e5u;
    std::seed_seq seq{tag,
                      static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

NormalStream::NormalStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : engine_(make_engine(master_seed, stream_index)) {}

}  // namespace sulph
