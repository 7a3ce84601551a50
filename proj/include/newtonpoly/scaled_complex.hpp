#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>

namespace newtonpoly {

/// Complex number with a separate base-2 exponent: value = mantissa * 2^exponent.
///
/// The mantissa is renormalized after every operation so that |mantissa| lies
/// in [1,2), or the value is exactly zero. The exponent is a 64-bit integer, so
/// log-magnitudes far beyond the double range (well past 1e9) are representable.
///
/// Adding two values whose exponents differ by more than kAbsorbBits returns
/// the larger operand unchanged; the result then carries the absorbed() flag,
/// which propagates through later arithmetic.
class ScaledComplex {
public:
    static constexpr std::int64_t kAbsorbBits = 128;

    ScaledComplex() = default;
    ScaledComplex(std::complex<double> z);  // NOLINT(google-explicit-constructor)
    ScaledComplex(double x) : ScaledComplex(std::complex<double>(x, 0.0)) {}  // NOLINT
    ScaledComplex(std::complex<double> mantissa, std::int64_t exponent);

    /// exp(log_magnitude) * e^{i argument}
    static ScaledComplex from_log_polar(double log_magnitude, double argument);

    const std::complex<double>& mantissa() const { return mantissa_; }
    std::int64_t exponent() const { return exponent_; }
    bool is_zero() const { return mantissa_ == std::complex<double>(0.0, 0.0); }
    bool absorbed() const { return absorbed_; }

    /// log|value|; -infinity for zero.
    double log_abs() const;
    double arg() const { return std::arg(mantissa_); }

    /// Plain complex value; overflows to infinity or underflows to zero
    /// outside the double range.
    std::complex<double> to_complex() const;

    ScaledComplex operator-() const;
    ScaledComplex& operator+=(const ScaledComplex& rhs);
    ScaledComplex& operator-=(const ScaledComplex& rhs) { return *this += -rhs; }
    ScaledComplex& operator*=(const ScaledComplex& rhs);
    ScaledComplex& operator/=(const ScaledComplex& rhs);

    friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }
    friend ScaledComplex operator-(ScaledComplex a, const ScaledComplex& b) { return a -= b; }
    friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
    friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }

    /// Exact representation equality (mantissa and exponent).
    friend bool operator==(const ScaledComplex& a, const ScaledComplex& b) {
        return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
    }

private:
    void normalize();

    std::complex<double> mantissa_{0.0, 0.0};
    std::int64_t exponent_ = 0;
    bool absorbed_ = false;
};

ScaledComplex pow(ScaledComplex base, std::uint64_t power);

std::ostream& operator<<(std::ostream& os, const ScaledComplex& z);

}  // namespace newtonpoly
