#pragma once

#include <cstdint>
#include <random>

namespace raes {

// Stream roles. Every (base_seed, run_index, role) triple gets an independent
// generator so that swapping the algorithm never perturbs the user's draws.
enum class StreamRole : std::uint64_t {
    instance = 1,
    user_noise = 2,
    user_beta = 3,
    algorithm = 4,
};

std::uint64_t splitmix64(std::uint64_t x);

// Thin wrapper over mt19937_64. Uniform and normal variates are computed here
// rather than through <random> distributions so the sequences are identical
// across standard library implementations.
class Stream {
public:
    explicit Stream(std::uint64_t seed)
        : engine_(splitmix64(seed)), fingerprint_(splitmix64(seed)) {}
    Stream(std::uint64_t base_seed, std::uint64_t run_index, StreamRole role);

    std::uint64_t next() { return engine_(); }
    // [0, 1)
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    bool coin() { return (next() >> 63) != 0; }
    // Uniform index in [0, n).
    std::size_t index(std::size_t n);

    // Digest of the seed material, used to fingerprint stream identity.
    std::uint64_t fingerprint() const { return fingerprint_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t fingerprint_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace raes
