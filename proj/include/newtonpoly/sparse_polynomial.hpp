#pragma once

#include "newtonpoly/coefficient.hpp"
#include "newtonpoly/numeric.hpp"
#include "newtonpoly/scaled_complex.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace newtonpoly {

struct Term {
    Coefficient coefficient;
    ExponentVector exponent;
};

/// Polynomial in monomial form. Terms are kept sorted by exponent vector,
/// with distinct exponents and nonzero coefficients.
class SparsePolynomial {
public:
    explicit SparsePolynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}
    /// Merges duplicate exponents and drops zero terms.
    SparsePolynomial(std::size_t num_vars, std::vector<Term> terms);

    std::size_t num_vars() const { return num_vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    std::vector<ExponentVector> support() const;
    /// Maximum |alpha| over the support; 0 for the zero polynomial.
    std::int64_t total_degree() const;

    ScaledComplex evaluate(std::span<const ScaledComplex> x) const;
    /// (f(x), D_v f(x))
    std::pair<ScaledComplex, ScaledComplex> evaluate_dir(std::span<const ScaledComplex> x,
                                                        std::span<const ScaledComplex> v) const;

private:
    std::size_t num_vars_;
    std::vector<Term> terms_;
};

/// One term per line, `COEFF : e1 e2 ... en`; `#` starts a comment.
SparsePolynomial parse_sparse(std::string_view text);
std::string format_sparse(const SparsePolynomial& p);

template <class Scalar>
struct FaceRestriction {
    SparsePolynomial face;
    Scalar value;  // max of w.alpha over the support
};

/// Sub-sum of the terms whose exponents maximize w.alpha.
FaceRestriction<Rational> restrict_to_face(const SparsePolynomial& p, std::span<const Rational> w);
/// Floating-point directions treat dot products within 1e-9 (relative) as tied.
FaceRestriction<double> restrict_to_face(const SparsePolynomial& p, std::span<const double> w);

}  // namespace newtonpoly
