#pragma once

#include "newtonpoly/coefficient.hpp"
#include "newtonpoly/scaled_complex.hpp"
#include "newtonpoly/sparse_polynomial.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace newtonpoly {

enum class SlpOp { Input, Const, Add, Mul };

/// One register definition. Operands index strictly earlier registers.
struct SlpInstruction {
    SlpOp op = SlpOp::Const;
    std::size_t lhs = 0;  // Input: variable index; Add/Mul: first operand
    std::size_t rhs = 0;  // Add/Mul: second operand
    Coefficient constant;

    static SlpInstruction input(std::size_t var) { return {SlpOp::Input, var, 0, {}}; }
    static SlpInstruction constant_value(Coefficient c) { return {SlpOp::Const, 0, 0, std::move(c)}; }
    static SlpInstruction add(std::size_t a, std::size_t b) { return {SlpOp::Add, a, b, {}}; }
    static SlpInstruction mul(std::size_t a, std::size_t b) { return {SlpOp::Mul, a, b, {}}; }
};

/// Straight-line program over Q[i]. Immutable once built; evaluation is pure
/// and may run concurrently on a shared instance.
class Slp {
public:
    /// Throws InvalidArgument on forward references or out-of-range inputs.
    Slp(std::size_t num_inputs, std::vector<SlpInstruction> program, std::optional<std::size_t> output = {});

    std::size_t num_inputs() const { return num_inputs_; }
    const std::vector<SlpInstruction>& instructions() const { return program_; }
    std::size_t register_count() const { return program_.size(); }
    std::size_t output() const { return output_; }

    /// Same program with at least `n` inputs (extra inputs are ignored).
    Slp with_inputs(std::size_t n) const;

    ScaledComplex evaluate(std::span<const ScaledComplex> x) const;

    /// (f(x), D_v f(x)) by forward-mode dual numbers.
    std::pair<ScaledComplex, ScaledComplex> evaluate_dir(std::span<const ScaledComplex> x,
                                                        std::span<const ScaledComplex> v) const;

private:
    std::size_t num_inputs_;
    std::vector<SlpInstruction> program_;
    std::vector<ScaledComplex> constants_;  // per register, meaningful for Const
    std::size_t output_;
};

/// Lines (or `;`-separated statements) `in J`, `const COEFF`, `add rJ rK`,
/// `mul rJ rK`, optionally a final `out rJ`. Registers and inputs are 1-based.
Slp parse_slp(std::string_view text, std::size_t min_inputs = 0);
std::string format_slp(const Slp& slp);

/// Naive sum of products; powers by repeated squaring.
Slp sparse_to_slp(const SparsePolynomial& p);

/// t^w . x, coordinatewise, without forming t^w_i as a double.
std::vector<ScaledComplex> scaled_point(double t, std::span<const double> w,
                                        std::span<const std::complex<double>> x);
/// Same with log(t) given directly, so t itself may exceed the double range.
std::vector<ScaledComplex> scaled_point_log(double log_t, std::span<const double> w,
                                            std::span<const std::complex<double>> x);

}  // namespace newtonpoly
