#pragma once

#include <cstdint>
#include <random>

namespace sigb {

// Uniform draw in [0, 1) from the top 53 bits of the standardized
// mt19937_64 stream. Used instead of std::uniform_real_distribution,
// whose mapping from engine output is implementation-defined; this one
// reproduces bit-identically on every platform.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace sigb
