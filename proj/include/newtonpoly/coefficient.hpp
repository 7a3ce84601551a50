#pragma once

#include "newtonpoly/numeric.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace newtonpoly {

/// Element of Q[sqrt(-1)] with exact arithmetic.
struct GaussianRational {
    Rational real = 0;
    Rational imag = 0;

    bool is_zero() const { return real == 0 && imag == 0; }
    std::complex<double> to_complex() const { return {to_double(real), to_double(imag)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        real += o.real;
        imag += o.imag;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.real * b.real - a.imag * b.imag, a.real * b.imag + a.imag * b.real};
    }
    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// Accepts `p/q`, `p/q+r/s i`, `r/s i`, and decimals (`1.5`, `-2e3+0.25i`).
GaussianRational parse_gaussian(std::string_view text);

std::string to_string(const GaussianRational& value);

/// Polynomial coefficient: exact when it came from text, complex double when
/// it was constructed numerically. Mixed sums degrade to double.
class Coefficient {
public:
    Coefficient() : exact_(GaussianRational{}) {}
    Coefficient(GaussianRational exact)  // NOLINT(google-explicit-constructor)
        : exact_(std::move(exact)), value_(exact_->to_complex()) {}
    Coefficient(std::complex<double> value) : value_(value) {}  // NOLINT(google-explicit-constructor)

    bool is_exact() const { return exact_.has_value(); }
    const std::optional<GaussianRational>& exact() const { return exact_; }
    std::complex<double> value() const { return value_; }
    bool is_zero() const { return exact_ ? exact_->is_zero() : value_ == std::complex<double>(0.0, 0.0); }
    bool is_one() const { return exact_ ? *exact_ == GaussianRational{1, 0} : value_ == std::complex<double>(1.0, 0.0); }

    Coefficient& operator+=(const Coefficient& o);

    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
        return a.value_ == b.value_;
    }

private:
    std::optional<GaussianRational> exact_;
    std::complex<double> value_{0.0, 0.0};
};

std::string to_string(const Coefficient& c);

}  // namespace newtonpoly
