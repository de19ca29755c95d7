#pragma once

#include <cstdint>
#include <string_view>

namespace fedcloud {

/// Deterministic, splittable PRNG (xoshiro256** core, splitmix64 seeding).
///
/// Child streams are derived from the parent's root key and a label --
/// never from generator state -- so adding a new consumer cannot shift
/// the draws an existing consumer sees. Identical (seed, label path)
/// yields an identical stream on every platform.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) { reseed(seed); }

    /// Child stream addressed by label, e.g. "de", "trace", "placement".
    SplitRng child(std::string_view label) const {
        return SplitRng(mix(key_ ^ hash_label(label)));
    }

    /// Indexed child, for per-entity streams (one trace per VM, ...).
    SplitRng child(std::string_view label, std::uint64_t index) const {
        return SplitRng(mix(key_ ^ hash_label(label) ^ mix(index + 0x9e3779b97f4a7c15ull)));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Uniform integer in {0, ..., n-1}; n must be >= 1.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    std::uint64_t key() const { return key_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    // splitmix64 finalizer; also used as the stream-key scrambler.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static std::uint64_t hash_label(std::string_view label) {
        // FNV-1a 64
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : label) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    void reseed(std::uint64_t key) {
        key_ = key;
        std::uint64_t z = key;
        for (auto& s : s_) s = mix(z++);
        // xoshiro state must not be all zero; mix() of consecutive ints never is,
        // but keep the guard for the pathological case.
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t key_ = 0;
    std::uint64_t s_[4] = {};
};

}  // namespace fedcloud
