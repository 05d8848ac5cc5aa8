#pragma once

// Seeded splitmix64 generator. The verification suites must be bit-stable
// across platforms, which rules out the standard distributions; everything
// here reduces the raw stream explicitly.

#include "logjet/rational.hpp"

#include <cstdint>

namespace logjet {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(unsigned num, unsigned den) { return below(den) < num; }

    // small nonzero integer in [-max, max]
    long nonzero(long max) {
        long v = range(1, max);
        return chance(1, 2) ? v : -v;
    }

    Rat small_rat(long max_num, long max_den = 3) {
        long d = range(1, max_den);
        return Rat(range(-max_num, max_num), d);
    }

    Rat small_rat_nonzero(long max_num, long max_den = 3) {
        Rat r;
        do {
            r = small_rat(max_num, max_den);
        } while (r.is_zero());
        return r;
    }

  private:
    std::uint64_t state_;
};

}  // namespace logjet
