#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

// Deterministic randomness helpers. std::mt19937_64 has standard-specified
// output for a given seed, but the library distributions do not, so every
// draw that must reproduce across compilers goes through the routines here.

namespace supercon {

// splitmix64 finalizer; decorrelates consecutive integers into seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for an independent stream (holdout repeat, boosting round, ...).
// Adding streams never perturbs draws made by earlier ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ mix64(stream + 0x517cc1b727220a95ULL));
}

// Uniform draw from [0, n) without modulo bias (Lemire's multiply-shift
// with rejection). n must be > 0.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    using u128 = unsigned __int128;
    std::uint64_t x = rng();
    u128 m = u128(x) * u128(n);
    std::uint64_t low = std::uint64_t(m);
    if (low < n) {
        std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            x = rng();
            m = u128(x) * u128(n);
            low = std::uint64_t(m);
        }
    }
    return std::uint64_t(m >> 64);
}

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle_values(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// k distinct indices from [0, n), returned sorted ascending. Partial
// Fisher-Yates: only the first k slots are materialized. k == n returns
// the identity without consuming any randomness.
inline std::vector<std::uint32_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                             std::mt19937_64& rng) {
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0U);
    if (k >= n) return pool;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(bounded(rng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace supercon
