#ifndef SCHLICHT_RANDOM_HPP
#define SCHLICHT_RANDOM_HPP

#include <cstdint>

namespace schlicht
{

// SplitMix64. Used instead of the standard distributions so that a seed
// reproduces the same stream on every platform.
class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : m_state(seed)
    {
    }

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (m_state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) noexcept
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

private:
    std::uint64_t m_state;
};

// Independent stream for trial `index` of a run seeded with `seed`, so that
// trials can be generated in any order or in parallel.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    SplitMix64 a(seed);
    SplitMix64 b(a.next() ^ (index * 0xd1b54a32d192ed03ULL));
    return b.next();
}

} // namespace schlicht

#endif
