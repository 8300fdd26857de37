#pragma once

// Deterministic random streams. Every sampler in the library takes a
// generator by reference; experiments derive one independent substream per
// (master seed, channel index, purpose), so results do not depend on worker
// count or scheduling. std::mt19937_64 and std::seed_seq are fully specified
// by the standard and the [0,1) mapping below uses raw bits, so outputs are
// identical across platforms and standard libraries.

#include <cstdint>
#include <random>

namespace discordlab {

enum class StreamPurpose : std::uint32_t {
    channel_weights = 0,
    channel_states = 1,
    generic = 2,
};

inline std::mt19937_64 substream(std::uint64_t master_seed, std::uint64_t index,
                                 StreamPurpose purpose = StreamPurpose::generic) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(index),       static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(purpose),
    };
    return std::mt19937_64(seq);
}

// Uniform draw from [0, 1) with 53 random bits.
template <class Urbg>
inline double uniform01(Urbg& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace discordlab
