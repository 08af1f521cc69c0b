#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace esib {

// All randomness in the project flows through these generators. They are
// fixed algorithms (splitmix64 core), so identical seeds give identical
// streams on every build; std::random distributions are deliberately avoided.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives a subsystem seed from the run seed and a label, optionally mixing
// in extra keys (problem index, epoch, ...). Fixed FNV-1a over the label
// followed by splitmix finalization.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t k1);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t k1,
                          std::uint64_t k2);

// Counter-based stream: state advances one splitmix step per draw, so a
// stream keyed by (run seed, problem id, epoch) is replayable from scratch.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [lo, hi] inclusive. Modulo bias is irrelevant here;
    // determinism is what matters.
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Standard normal via Box-Muller (no cached spare: one draw, two uniforms,
    // so the stream position stays a pure function of the draw count).
    double normal();

    std::vector<double> normal_vector(int n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_u64() % i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace esib
