#pragma once

#include <cmath>
#include <complex>

namespace bandedge::detail {

// Neumaier summation, applied independently to real and imaginary parts.
class CompensatedSum {
public:
    void add(std::complex<double> x) {
        add_part(sum_re_, carry_re_, x.real());
        add_part(sum_im_, carry_im_, x.imag());
    }
    std::complex<double> value() const { return {sum_re_ + carry_re_, sum_im_ + carry_im_}; }

private:
    static void add_part(double& sum, double& carry, double x) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double sum_re_ = 0, carry_re_ = 0, sum_im_ = 0, carry_im_ = 0;
};

}  // namespace bandedge::detail
