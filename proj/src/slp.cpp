#include "newtonpoly/slp.hpp"

#include "newtonpoly/errors.hpp"

#include <cmath>
#include <sstream>

namespace newtonpoly {

Slp::Slp(std::size_t num_inputs, std::vector<SlpInstruction> program, std::optional<std::size_t> output)
    : num_inputs_(num_inputs), program_(std::move(program)) {
    if (program_.empty()) throw Error(ErrorKind::InvalidArgument, "empty straight-line program");
    constants_.resize(program_.size());
    for (std::size_t k = 0; k < program_.size(); ++k) {
        const auto& ins = program_[k];
        switch (ins.op) {
            case SlpOp::Input:
                if (ins.lhs >= num_inputs_)
                    throw Error(ErrorKind::InvalidArgument, "input index out of range at register " + std::to_string(k + 1));
                break;
            case SlpOp::Const:
                constants_[k] = ScaledComplex(ins.constant.value());
                break;
            case SlpOp::Add:
            case SlpOp::Mul:
                if (ins.lhs >= k || ins.rhs >= k)
                    throw Error(ErrorKind::InvalidArgument, "forward reference at register " + std::to_string(k + 1));
                break;
        }
    }
    output_ = output.value_or(program_.size() - 1);
    if (output_ >= program_.size()) throw Error(ErrorKind::InvalidArgument, "output register out of range");
}

Slp Slp::with_inputs(std::size_t n) const {
    return Slp(std::max(n, num_inputs_), program_, output_);
}

ScaledComplex Slp::evaluate(std::span<const ScaledComplex> x) const {
    if (x.size() < num_inputs_) throw Error(ErrorKind::InvalidArgument, "too few coordinates for program");
    std::vector<ScaledComplex> reg(output_ + 1);
    for (std::size_t k = 0; k <= output_; ++k) {
        const auto& ins = program_[k];
        switch (ins.op) {
            case SlpOp::Input: reg[k] = x[ins.lhs]; break;
            case SlpOp::Const: reg[k] = constants_[k]; break;
            case SlpOp::Add: reg[k] = reg[ins.lhs] + reg[ins.rhs]; break;
            case SlpOp::Mul: reg[k] = reg[ins.lhs] * reg[ins.rhs]; break;
        }
    }
    return reg[output_];
}

std::pair<ScaledComplex, ScaledComplex> Slp::evaluate_dir(std::span<const ScaledComplex> x,
                                                          std::span<const ScaledComplex> v) const {
    if (x.size() < num_inputs_ || v.size() < num_inputs_)
        throw Error(ErrorKind::InvalidArgument, "too few coordinates for program");
    std::vector<ScaledComplex> val(output_ + 1), der(output_ + 1);
    for (std::size_t k = 0; k <= output_; ++k) {
        const auto& ins = program_[k];
        switch (ins.op) {
            case SlpOp::Input:
                val[k] = x[ins.lhs];
                der[k] = v[ins.lhs];
                break;
            case SlpOp::Const:
                val[k] = constants_[k];
                break;
            case SlpOp::Add:
                val[k] = val[ins.lhs] + val[ins.rhs];
                der[k] = der[ins.lhs] + der[ins.rhs];
                break;
            case SlpOp::Mul:
                val[k] = val[ins.lhs] * val[ins.rhs];
                der[k] = der[ins.lhs] * val[ins.rhs] + val[ins.lhs] * der[ins.rhs];
                break;
        }
    }
    return {val[output_], der[output_]};
}

namespace {

std::size_t parse_index(const std::string& tok, bool allow_r, const std::string& where) {
    std::string s = tok;
    if (allow_r && !s.empty() && (s[0] == 'r' || s[0] == 'R')) s.erase(0, 1);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || v < 1) throw Error(ErrorKind::Parse, where + "malformed operand '" + tok + "'");
    return static_cast<std::size_t>(v - 1);
}

}  // namespace

Slp parse_slp(std::string_view text, std::size_t min_inputs) {
    std::vector<std::string> statements;
    std::vector<int> lines;
    {
        std::istringstream in{std::string(text)};
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream parts(line);
            std::string stmt;
            while (std::getline(parts, stmt, ';')) {
                if (stmt.find_first_not_of(" \t\r") == std::string::npos) continue;
                statements.push_back(stmt);
                lines.push_back(lineno);
            }
        }
    }
    std::vector<SlpInstruction> program;
    std::optional<std::size_t> output;
    std::size_t inputs = min_inputs;
    for (std::size_t s = 0; s < statements.size(); ++s) {
        const std::string where = "line " + std::to_string(lines[s]) + ": ";
        if (output) throw Error(ErrorKind::Parse, where + "'out' must be the last statement");
        std::istringstream ts(statements[s]);
        std::string op;
        ts >> op;
        const std::size_t k = program.size();
        auto operand = [&](bool allow_r) {
            std::string tok;
            if (!(ts >> tok)) throw Error(ErrorKind::Parse, where + "missing operand for '" + op + "'");
            return parse_index(tok, allow_r, where);
        };
        auto no_more = [&] {
            std::string extra;
            if (ts >> extra) throw Error(ErrorKind::Parse, where + "unexpected token '" + extra + "'");
        };
        if (op == "in") {
            const std::size_t j = operand(false);
            no_more();
            inputs = std::max(inputs, j + 1);
            program.push_back(SlpInstruction::input(j));
        } else if (op == "const") {
            std::string rest;
            std::getline(ts, rest);
            try {
                program.push_back(SlpInstruction::constant_value(Coefficient(parse_gaussian(rest))));
            } catch (const Error& e) {
                throw Error(ErrorKind::Parse, where + e.what());
            }
        } else if (op == "add" || op == "mul") {
            const std::size_t a = operand(true), b = operand(true);
            no_more();
            if (a >= k || b >= k) throw Error(ErrorKind::Parse, where + "forward reference in '" + op + "'");
            program.push_back(op == "add" ? SlpInstruction::add(a, b) : SlpInstruction::mul(a, b));
        } else if (op == "out") {
            const std::size_t a = operand(true);
            no_more();
            if (a >= k) throw Error(ErrorKind::Parse, where + "forward reference in 'out'");
            output = a;
        } else {
            throw Error(ErrorKind::Parse, where + "unknown opcode '" + op + "'");
        }
    }
    if (program.empty()) throw Error(ErrorKind::Parse, "program has no instructions");
    return Slp(inputs, std::move(program), output);
}

std::string format_slp(const Slp& slp) {
    std::ostringstream os;
    for (const auto& ins : slp.instructions()) {
        switch (ins.op) {
            case SlpOp::Input: os << "in " << ins.lhs + 1; break;
            case SlpOp::Const: os << "const " << to_string(ins.constant); break;
            case SlpOp::Add: os << "add r" << ins.lhs + 1 << " r" << ins.rhs + 1; break;
            case SlpOp::Mul: os << "mul r" << ins.lhs + 1 << " r" << ins.rhs + 1; break;
        }
        os << '\n';
    }
    if (slp.output() + 1 != slp.register_count()) os << "out r" << slp.output() + 1 << '\n';
    return os.str();
}

Slp sparse_to_slp(const SparsePolynomial& p) {
    const std::size_t n = p.num_vars();
    std::vector<SlpInstruction> prog;
    auto emit = [&](SlpInstruction ins) {
        prog.push_back(std::move(ins));
        return prog.size() - 1;
    };
    if (p.is_zero()) {
        emit(SlpInstruction::constant_value(Coefficient(GaussianRational{})));
        return Slp(n, std::move(prog));
    }
    for (std::size_t i = 0; i < n; ++i) emit(SlpInstruction::input(i));

    auto power = [&](std::size_t base, std::int64_t e) {
        std::optional<std::size_t> result;
        while (e > 0) {
            if (e & 1) result = result ? emit(SlpInstruction::mul(*result, base)) : base;
            e >>= 1;
            if (e > 0) base = emit(SlpInstruction::mul(base, base));
        }
        return *result;
    };

    std::optional<std::size_t> sum;
    for (const auto& t : p.terms()) {
        std::optional<std::size_t> mono;
        for (std::size_t i = 0; i < n; ++i) {
            if (t.exponent[i] == 0) continue;
            const std::size_t f = power(i, t.exponent[i]);
            mono = mono ? emit(SlpInstruction::mul(*mono, f)) : f;
        }
        std::size_t term;
        if (!mono) {
            term = emit(SlpInstruction::constant_value(t.coefficient));
        } else if (t.coefficient.is_one()) {
            term = *mono;
        } else {
            const std::size_t c = emit(SlpInstruction::constant_value(t.coefficient));
            term = emit(SlpInstruction::mul(c, *mono));
        }
        sum = sum ? emit(SlpInstruction::add(*sum, term)) : term;
    }
    return Slp(n, std::move(prog), *sum);
}

std::vector<ScaledComplex> scaled_point_log(double log_t, std::span<const double> w,
                                            std::span<const std::complex<double>> x) {
    if (w.size() != x.size()) throw Error(ErrorKind::InvalidArgument, "direction and point lengths differ");
    std::vector<ScaledComplex> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == std::complex<double>(0.0, 0.0)) {
            out.emplace_back();
            continue;
        }
        out.push_back(ScaledComplex::from_log_polar(w[i] * log_t + std::log(std::abs(x[i])), std::arg(x[i])));
    }
    return out;
}

std::vector<ScaledComplex> scaled_point(double t, std::span<const double> w,
                                        std::span<const std::complex<double>> x) {
    if (!(t > 0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
    return scaled_point_log(std::log(t), w, x);
}

}  // namespace newtonpoly
