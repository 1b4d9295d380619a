#pragma once

#include <vector>

#include "sparsepr/types.hpp"

namespace sparsepr {

// Smallest power of two >= v (v >= 1).
std::size_t next_pow2(std::size_t v);

// In-place radix-2 FFT; data.size() must be a power of two.
void fft(std::vector<cplx>& data, bool inverse = false);

} // namespace sparsepr
