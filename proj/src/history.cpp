#include "mzfric/history.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mzfric {

namespace {

void check_sizes(std::span<const double> w, std::span<const double> df, std::size_t q) {
    if (q >= 2 && (w.size() < q || df.size() < q - 1)) {
        throw std::invalid_argument("history convolution: kernel or force history too short");
    }
}

double block_sum(std::span<const double> w, std::span<const double> df, std::size_t q, std::size_t first,
                 std::size_t last) {
    double acc = 0.0;
    for (std::size_t j = first; j < last; ++j) acc += w[j] * df[q - 1 - j];
    return acc;
}

}  // namespace

double history_convolution(std::span<const double> w, std::span<const double> df, std::size_t q) {
    check_sizes(w, df, q);
    if (q < 2) return 0.0;
    const std::size_t terms = q - 1;
    const std::size_t blocks = (terms + history_block_size - 1) / history_block_size;
    if (blocks == 1) return block_sum(w, df, q, 1, q);

    std::vector<double> partial(blocks);
    const auto count = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < count; ++b) {
        const std::size_t first = 1 + static_cast<std::size_t>(b) * history_block_size;
        const std::size_t last = std::min(q, first + history_block_size);
        partial[static_cast<std::size_t>(b)] = block_sum(w, df, q, first, last);
    }
    double acc = 0.0;
    for (const double p : partial) acc += p;
    return acc;
}

double history_convolution_serial(std::span<const double> w, std::span<const double> df, std::size_t q) {
    check_sizes(w, df, q);
    double acc = 0.0;
    for (std::size_t j = 1; j < q; ++j) acc += w[j] * df[q - 1 - j];
    return acc;
}

}  // namespace mzfric
