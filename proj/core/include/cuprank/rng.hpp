#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "cuprank/hash.hpp"

namespace cuprank {

/// SplitMix64 finalizer; good avalanche, used to derive sub-stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent stream seed from a root seed, a purpose label and
/// integer parts. Deterministic across platforms; the same tuple always
/// yields the same stream.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::initializer_list<std::uint64_t> parts = {});

/// Deterministic RNG with portable output. Wraps xoshiro-style state built
/// from SplitMix64; all distributions below are implemented explicitly so
/// results do not depend on the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform in [0, n). n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Uniform double in [0, 1).
    double uniform();

    /// Bernoulli trial.
    bool chance(double p);

    /// Standard normal via Box-Muller (both values consumed in order).
    double normal();

    /// Poisson sample, Knuth's method (fine for small means).
    std::uint64_t poisson(double mean);

    /// Index drawn from unnormalized nonnegative weights. Weights must not
    /// all be zero.
    std::size_t weighted_index(const std::vector<double>& weights);

    /// First k elements of a seeded Fisher-Yates shuffle of 0..n-1.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::uint64_t state_[4];
    bool have_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

}  // namespace cuprank
