#pragma once

#include <cstddef>
#include <span>

namespace mzfric {

// Convolution of kernel cell weights with force increments:
//   sum_{j=1}^{q-1} w[j] * df[q-1-j],   df[i] = f[i+1] - f[i].
// `w` needs at least q entries and `df` at least q-1.

// Splits j into fixed blocks of history_block_size terms, sums each block in
// order and adds the block partials in order.  The blocking does not depend
// on the thread count, so every run gives the same bits.
double history_convolution(std::span<const double> w, std::span<const double> df, std::size_t q);

// Plain left-to-right loop; reference for tests and benchmarks.
double history_convolution_serial(std::span<const double> w, std::span<const double> df, std::size_t q);

inline constexpr std::size_t history_block_size = 2048;

}  // namespace mzfric
