#pragma once

#include <cstdint>

namespace cycleforge {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen because it is trivially
// splittable (derive a child stream by hashing the parent seed with the
// stream index) and bit-reproducible on any platform.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) via rejection, avoiding modulo bias and any
    // dependence on std::uniform_int_distribution's implementation.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Child seed for trial i, independent of draws taken from this stream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 s(seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
        return s.next();
    }

  private:
    std::uint64_t state_;
};

}  // namespace cycleforge
