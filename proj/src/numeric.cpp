#include "wva/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace wva {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

std::vector<double> poisson_weights(double mean, int n_max) {
    if (n_max < 0) throw std::invalid_argument("poisson_weights: n_max < 0");
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson_weights: mean must be finite and >= 0");
    }
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (mean == 0.0) {
        w[0] = 1.0;
        return w;
    }
    const int mode = static_cast<int>(std::floor(mean));
    const int anchor = std::min(mode, n_max);
    // long double: the three terms are O(N log N) and cancel to O(log N)
    const long double m = mean;
    w[anchor] = static_cast<double>(
        std::exp(-m + anchor * std::log(m) - std::lgamma(static_cast<long double>(anchor) + 1.0L)));
    for (int n = anchor; n < n_max; ++n) w[n + 1] = w[n] * mean / (n + 1);
    for (int n = anchor; n > 0; --n) w[n - 1] = w[n] * n / mean;
    return w;
}

double integer_power(int n, int power) noexcept {
    double r = 1.0;
    const double x = n;
    for (int i = 0; i < power; ++i) r *= x;
    return r;
}

}  // namespace wva
