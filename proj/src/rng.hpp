#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace leakaudit {

// Seeded generator with a fully specified consumption pattern, so splits and
// synthetic corpora reproduce bit-for-bit on any platform:
//   * engine: std::mt19937_64 seeded with the 64-bit seed (output sequence
//     fixed by the C++ standard);
//   * below(n): rejection sampling on raw 64-bit draws, r % n accepted when
//     r < 2^64 - (2^64 mod n);
//   * uniform(): (r >> 11) * 2^-53;
//   * shuffle: Fisher-Yates from the back, j = below(i + 1);
//   * normal(): Box-Muller, both uniforms drawn fresh each call.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::uint64_t below(std::uint64_t n);
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    bool bernoulli(double p) { return uniform() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent sub-seed for item `index` of a batch.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace leakaudit
