#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mzfric/history.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace mzfric;

namespace {

// Long-double double loop, independent of the library implementation.
long double naive(const std::vector<double>& w, const std::vector<double>& df, std::size_t q) {
    long double s = 0.0L;
    for (std::size_t j = 1; j < q; ++j) s += static_cast<long double>(w[j]) * df[q - 1 - j];
    return s;
}

}  // namespace

TEST_CASE("short histories have no convolution term") {
    const std::vector<double> w{1.0, 2.0, 3.0};
    const std::vector<double> df{5.0, 6.0};
    CHECK(history_convolution(w, df, 0) == 0.0);
    CHECK(history_convolution(w, df, 1) == 0.0);
    CHECK(history_convolution(w, df, 2) == 2.0 * 5.0);
    CHECK(history_convolution(w, df, 3) == 2.0 * 6.0 + 3.0 * 5.0);
}

TEST_CASE("blocked and plain convolutions agree with a long-double loop") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 3 * history_block_size + 17;
    std::vector<double> w(n + 1), df(n);
    for (auto& x : w) x = u(rng);
    for (auto& x : df) x = u(rng);
    for (std::size_t q : {std::size_t{5}, history_block_size, history_block_size + 1, history_block_size + 2, n}) {
        const double ref = static_cast<double>(naive(w, df, q));
        CHECK(std::abs(history_convolution(w, df, q) - ref) < 1e-12);
        CHECK(std::abs(history_convolution_serial(w, df, q) - ref) < 1e-12);
    }
    // One block: identical summation order.
    CHECK(history_convolution(w, df, 100) == history_convolution_serial(w, df, 100));
}

TEST_CASE("convolution checks its inputs") {
    const std::vector<double> w{1.0, 2.0};
    const std::vector<double> df{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(history_convolution(w, df, 3), std::invalid_argument);
    CHECK_THROWS_AS(history_convolution_serial(w, df, 3), std::invalid_argument);
    const std::vector<double> w4{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> df1{1.0};
    CHECK_THROWS_AS(history_convolution(w4, df1, 4), std::invalid_argument);
}
