#pragma once

namespace mzfric {

// Kahan summation. The result depends only on the order of add() calls, so
// a fixed call order gives bit-identical sums across runs and thread counts.
class CompensatedSum {
public:
    void add(double term) {
        const double y = term - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }

    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace mzfric
