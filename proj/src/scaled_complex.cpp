#include "newtonpoly/scaled_complex.hpp"

#include "newtonpoly/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace newtonpoly {

namespace {

std::complex<double> ldexp(std::complex<double> z, int e) {
    return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)};
}

}  // namespace

ScaledComplex::ScaledComplex(std::complex<double> z) : ScaledComplex(z, 0) {}

ScaledComplex::ScaledComplex(std::complex<double> mantissa, std::int64_t exponent)
    : mantissa_(mantissa), exponent_(exponent) {
    if (!std::isfinite(mantissa.real()) || !std::isfinite(mantissa.imag()))
        throw Error(ErrorKind::InvalidArgument, "non-finite complex value");
    normalize();
}

ScaledComplex ScaledComplex::from_log_polar(double log_magnitude, double argument) {
    if (std::isinf(log_magnitude) && log_magnitude < 0) return {};
    if (!std::isfinite(log_magnitude)) throw Error(ErrorKind::InvalidArgument, "non-finite log magnitude");
    const double e = std::floor(log_magnitude / std::numbers::ln2);
    const double frac = log_magnitude - e * std::numbers::ln2;
    ScaledComplex z;
    z.mantissa_ = std::polar(std::exp(frac), argument);
    z.exponent_ = static_cast<std::int64_t>(e);
    z.normalize();
    return z;
}

void ScaledComplex::normalize() {
    if (is_zero()) {
        mantissa_ = {0.0, 0.0};
        exponent_ = 0;
        return;
    }
    int e = 0;
    std::frexp(std::abs(mantissa_), &e);
    if (e != 1) {
        mantissa_ = ldexp(mantissa_, 1 - e);
        exponent_ += e - 1;
    }
}

double ScaledComplex::log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mantissa_)) + static_cast<double>(exponent_) * std::numbers::ln2;
}

std::complex<double> ScaledComplex::to_complex() const {
    if (exponent_ > 2000) {
        const double inf = std::numeric_limits<double>::infinity();
        return {mantissa_.real() == 0 ? 0.0 : std::copysign(inf, mantissa_.real()),
                mantissa_.imag() == 0 ? 0.0 : std::copysign(inf, mantissa_.imag())};
    }
    if (exponent_ < -2000) return {0.0, 0.0};
    return ldexp(mantissa_, static_cast<int>(exponent_));
}

ScaledComplex ScaledComplex::operator-() const {
    ScaledComplex z = *this;
    z.mantissa_ = -z.mantissa_;
    return z;
}

ScaledComplex& ScaledComplex::operator+=(const ScaledComplex& rhs) {
    const bool flag = absorbed_ || rhs.absorbed_;
    if (rhs.is_zero()) {
        absorbed_ = flag;
        return *this;
    }
    if (is_zero()) {
        *this = rhs;
        absorbed_ = flag;
        return *this;
    }
    const std::int64_t diff = exponent_ - rhs.exponent_;
    if (diff > kAbsorbBits) {
        absorbed_ = true;
        return *this;
    }
    if (diff < -kAbsorbBits) {
        *this = rhs;
        absorbed_ = true;
        return *this;
    }
    if (diff >= 0) {
        mantissa_ += ldexp(rhs.mantissa_, static_cast<int>(-diff));
    } else {
        mantissa_ = ldexp(mantissa_, static_cast<int>(diff)) + rhs.mantissa_;
        exponent_ = rhs.exponent_;
    }
    absorbed_ = flag;
    normalize();
    return *this;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& rhs) {
    absorbed_ = absorbed_ || rhs.absorbed_;
    if (is_zero() || rhs.is_zero()) {
        mantissa_ = {0.0, 0.0};
        exponent_ = 0;
        return *this;
    }
    mantissa_ *= rhs.mantissa_;
    exponent_ += rhs.exponent_;
    normalize();
    return *this;
}

ScaledComplex& ScaledComplex::operator/=(const ScaledComplex& rhs) {
    if (rhs.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    absorbed_ = absorbed_ || rhs.absorbed_;
    if (is_zero()) return *this;
    mantissa_ /= rhs.mantissa_;
    exponent_ -= rhs.exponent_;
    normalize();
    return *this;
}

ScaledComplex pow(ScaledComplex base, std::uint64_t power) {
    ScaledComplex result(1.0);
    while (power > 0) {
        if (power & 1U) result *= base;
        power >>= 1U;
        if (power > 0) base *= base;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const ScaledComplex& z) {
    return os << z.mantissa() << "*2^" << z.exponent();
}

}  // namespace newtonpoly
