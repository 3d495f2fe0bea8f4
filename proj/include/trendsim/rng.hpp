#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace trendsim {

// splitmix64 step; used as a mixing function for substream derivation.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent substream seed from a master seed, a purpose tag and
// an index. All randomness in the project flows from one master seed through
// this function, so any component can be re-run in isolation.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::string_view tag,
                                       std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the tag
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t state = master ^ h;
    splitmix64(state);
    state ^= index * 0x9e3779b97f4a7c15ULL;
    std::uint64_t out = splitmix64(state);
    return out ^ splitmix64(state);
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::string_view tag,
                                   std::uint64_t index = 0) {
    return std::mt19937_64(substream_seed(master, tag, index));
}

}  // namespace trendsim
