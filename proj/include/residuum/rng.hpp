#pragma once

#include <cstdint>

namespace residuum {

// splitmix64: tiny, well-mixed, and exactly reproducible everywhere.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: the k-th draw of sample `index` under `seed` is a
/// pure function of (seed, index, k), independent of threading or call order.
class SampleRng {
  public:
    SampleRng(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        std::uint64_t mixed = splitmix64(s) ^ (index * 0xd1342543de82ef95ULL + 1);
        state_ = mixed;
        (void)splitmix64(state_); // decorrelate adjacent indices
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] via fixed-width rejection-free scaling;
    /// bias is negligible for desk-scale ranges and the result is portable.
    long next_int(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next_u64() % span);
    }

  private:
    std::uint64_t state_;
};

} // namespace residuum
