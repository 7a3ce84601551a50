#include "newtonpoly/univariate.hpp"

#include "newtonpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace newtonpoly {

std::vector<Complex> interpolate_on_circle(const std::function<Complex(Complex)>& p, std::size_t m, double radius) {
    std::vector<Complex> vals(m);
    for (std::size_t k = 0; k < m; ++k) vals[k] = p(std::polar(radius, 2.0 * std::numbers::pi * double(k) / double(m)));
    std::vector<Complex> c(m);
    for (std::size_t j = 0; j < m; ++j) {
        Complex s = 0;
        for (std::size_t k = 0; k < m; ++k) s += vals[k] * std::polar(1.0, -2.0 * std::numbers::pi * double(j * k % m) / double(m));
        c[j] = s / (double(m) * std::pow(radius, double(j)));
    }
    return c;
}

std::pair<Complex, Complex> horner(const std::vector<Complex>& coeffs, Complex z) {
    Complex p = 0, dp = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, int max_iterations) {
    if (coeffs.size() < 2 || coeffs.back() == Complex(0))
        throw Error(ErrorKind::InvalidArgument, "root finding needs a nonconstant polynomial with nonzero leading coefficient");
    const std::size_t d = coeffs.size() - 1;
    // Initial radius from the coefficient ratio bound.
    double r = 0;
    for (std::size_t j = 0; j < d; ++j)
        r = std::max(r, std::pow(std::abs(coeffs[j] / coeffs[d]), 1.0 / double(d - j)));
    if (!(r > 0)) r = 1;
    std::vector<Complex> z(d);
    for (std::size_t k = 0; k < d; ++k) z[k] = std::polar(r, 2.0 * std::numbers::pi * double(k) / double(d) + 0.4);
    std::vector<bool> done(d, false);
    for (int it = 0; it < max_iterations; ++it) {
        bool all = true;
        for (std::size_t k = 0; k < d; ++k) {
            if (done[k]) continue;
            const auto [p, dp] = horner(coeffs, z[k]);
            if (p == Complex(0)) {
                done[k] = true;
                continue;
            }
            const Complex ratio = p / dp;
            Complex sum = 0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            const Complex step = ratio / (1.0 - ratio * sum);
            z[k] -= step;
            if (std::abs(step) <= 1e-15 * (1 + std::abs(z[k]))) done[k] = true;
            all = all && done[k];
        }
        if (all) break;
    }
    return z;
}

}  // namespace newtonpoly
