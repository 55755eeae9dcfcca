#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

namespace wbg {

// Deterministic 64-bit generator (splitmix64). We roll our own draw helpers
// so that transcripts replay identically across standard library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n >= 1.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

// Derives the seed for run i from a master seed. Documented so external
// tools can replay any single run of a batch.
inline uint64_t split_seed(uint64_t master, uint64_t i) {
    Rng r(master ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
    return r.next();
}

}  // namespace wbg
