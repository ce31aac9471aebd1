#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wva {

// Neumaier (improved Kahan-Babuska) summation.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

double compensated_sum(std::span<const double> xs) noexcept;

// Poisson(mean) probabilities for n = 0..n_max. Built by ratio recurrence
// outward from the mode, so no intermediate overflow for large means.
std::vector<double> poisson_weights(double mean, int n_max);

// n^power as a double; exact for the integer ranges used here.
double integer_power(int n, int power) noexcept;

}  // namespace wva
