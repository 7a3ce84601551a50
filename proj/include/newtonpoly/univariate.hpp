#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace newtonpoly {

using Complex = std::complex<double>;

/// Coefficients c_0..c_{M-1} of the polynomial of degree < M through the values
/// at s_k = radius * exp(2 pi i k / M).
std::vector<Complex> interpolate_on_circle(const std::function<Complex(Complex)>& p, std::size_t m, double radius = 1.0);

/// Horner value and derivative.
std::pair<Complex, Complex> horner(const std::vector<Complex>& coeffs, Complex z);

/// All roots of sum c_j z^j (c_back() != 0) by Aberth-Ehrlich iteration.
std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, int max_iterations = 500);

}  // namespace newtonpoly
