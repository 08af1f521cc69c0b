#include "esib/rng.hpp"

#include <cmath>
#include <numbers>

namespace esib {

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
    return splitmix64(state);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    return mix(seed, fnv1a(label));
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t k1) {
    return mix(derive_seed(seed, label), k1);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t k1,
                          std::uint64_t k2) {
    return mix(derive_seed(seed, label, k1), k2);
}

double Rng::normal() {
    // u1 in (0, 1] to keep the log finite.
    double u1 = 1.0 - next_double();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> Rng::normal_vector(int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = normal();
    return out;
}

}  // namespace esib
