#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

#include "ggeval/error.hpp"

namespace ggeval {

// splitmix64 mixing step. Used to derive independent substream seeds from
// a root seed plus a path of indices.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic random stream.
//
// std::mt19937_64 is fully specified by the standard, so the raw integer
// sequence is identical on every platform. The distribution helpers are
// hand-rolled because std::uniform_*_distribution and std::bernoulli_distribution
// are implementation-defined and do differ between standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    // Stream for a given path under a root seed, e.g. {graph_index} or
    // {graph_index, level_index}. Independent of the order in which sibling
    // streams are created or consumed.
    static RngStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = splitmix64(seed ^ 0x7f4a7c159e3779b9ull);
        for (std::uint64_t p : path)
            s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ull));
        return RngStream(s);
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0)
            throw ConfigError("uniform_int: empty range");
        const std::uint64_t umax = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = umax - umax % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ggeval
