#include "lifeloop/rng.hpp"

namespace lifeloop {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    // seed_seq's mixing is specified exactly, unlike the distributions.
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
    return Rng{seq};
}

}  // namespace lifeloop
