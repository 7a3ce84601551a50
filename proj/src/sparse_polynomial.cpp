#include "newtonpoly/sparse_polynomial.hpp"

#include "newtonpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace newtonpoly {

SparsePolynomial::SparsePolynomial(std::size_t num_vars, std::vector<Term> terms) : num_vars_(num_vars) {
    std::map<ExponentVector, Coefficient> merged;
    for (auto& t : terms) {
        if (t.exponent.size() != num_vars)
            throw Error(ErrorKind::InvalidArgument, "exponent vector length does not match variable count");
        for (auto e : t.exponent)
            if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
        auto [it, inserted] = merged.try_emplace(t.exponent, t.coefficient);
        if (!inserted) it->second += t.coefficient;
    }
    for (auto& [alpha, c] : merged)
        if (!c.is_zero()) terms_.push_back({c, alpha});
}

std::vector<ExponentVector> SparsePolynomial::support() const {
    std::vector<ExponentVector> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.exponent);
    return out;
}

std::int64_t SparsePolynomial::total_degree() const {
    std::int64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, degree(t.exponent));
    return d;
}

ScaledComplex SparsePolynomial::evaluate(std::span<const ScaledComplex> x) const {
    if (x.size() < num_vars_) throw Error(ErrorKind::InvalidArgument, "too few coordinates");
    ScaledComplex sum;
    for (const auto& t : terms_) {
        ScaledComplex m(t.coefficient.value());
        for (std::size_t i = 0; i < num_vars_; ++i)
            if (t.exponent[i] > 0) m *= pow(x[i], static_cast<std::uint64_t>(t.exponent[i]));
        sum += m;
    }
    return sum;
}

std::pair<ScaledComplex, ScaledComplex> SparsePolynomial::evaluate_dir(std::span<const ScaledComplex> x,
                                                                       std::span<const ScaledComplex> v) const {
    if (x.size() < num_vars_ || v.size() < num_vars_) throw Error(ErrorKind::InvalidArgument, "too few coordinates");
    ScaledComplex value, deriv;
    for (const auto& t : terms_) {
        ScaledComplex mv(t.coefficient.value()), md;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            const auto e = t.exponent[i];
            if (e == 0) continue;
            const ScaledComplex lower = pow(x[i], static_cast<std::uint64_t>(e - 1));
            const ScaledComplex fv = lower * x[i];
            const ScaledComplex fd = ScaledComplex(static_cast<double>(e)) * lower * v[i];
            md = md * fv + mv * fd;
            mv *= fv;
        }
        value += mv;
        deriv += md;
    }
    return {value, deriv};
}

SparsePolynomial parse_sparse(std::string_view text) {
    std::vector<Term> terms;
    std::size_t n = 0;
    bool have_n = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
        auto colon = line.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::Parse, where() + "expected 'COEFF : e1 ... en'");
        Coefficient c;
        try {
            c = Coefficient(parse_gaussian(std::string_view(line).substr(0, colon)));
        } catch (const Error& e) {
            throw Error(ErrorKind::Parse, where() + e.what());
        }
        std::istringstream es(line.substr(colon + 1));
        ExponentVector alpha;
        std::string tok;
        while (es >> tok) {
            std::int64_t e = 0;
            try {
                std::size_t used = 0;
                e = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw Error(ErrorKind::Parse, where() + "malformed exponent '" + tok + "'");
            }
            if (e < 0) throw Error(ErrorKind::Parse, where() + "negative exponent " + tok);
            alpha.push_back(e);
        }
        if (!have_n) {
            n = alpha.size();
            have_n = true;
        } else if (alpha.size() != n) {
            throw Error(ErrorKind::Parse, where() + "expected " + std::to_string(n) + " exponents, got " +
                                              std::to_string(alpha.size()));
        }
        terms.push_back({c, std::move(alpha)});
    }
    return SparsePolynomial(n, std::move(terms));
}

std::string format_sparse(const SparsePolynomial& p) {
    std::ostringstream os;
    for (const auto& t : p.terms()) {
        os << to_string(t.coefficient) << " :";
        for (auto e : t.exponent) os << ' ' << e;
        os << '\n';
    }
    return os.str();
}

FaceRestriction<Rational> restrict_to_face(const SparsePolynomial& p, std::span<const Rational> w) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "restriction of the zero polynomial");
    if (w.size() != p.num_vars()) throw Error(ErrorKind::InvalidArgument, "direction length mismatch");
    std::vector<Rational> dots;
    for (const auto& t : p.terms()) dots.push_back(dot(w, t.exponent));
    const Rational best = *std::max_element(dots.begin(), dots.end());
    std::vector<Term> face;
    for (std::size_t k = 0; k < dots.size(); ++k)
        if (dots[k] == best) face.push_back(p.terms()[k]);
    return {SparsePolynomial(p.num_vars(), std::move(face)), best};
}

FaceRestriction<double> restrict_to_face(const SparsePolynomial& p, std::span<const double> w) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "restriction of the zero polynomial");
    if (w.size() != p.num_vars()) throw Error(ErrorKind::InvalidArgument, "direction length mismatch");
    std::vector<double> dots;
    for (const auto& t : p.terms()) dots.push_back(dot(w, t.exponent));
    const double best = *std::max_element(dots.begin(), dots.end());
    const double tol = 1e-9 * (1.0 + std::abs(best));
    std::vector<Term> face;
    for (std::size_t k = 0; k < dots.size(); ++k)
        if (dots[k] >= best - tol) face.push_back(p.terms()[k]);
    return {SparsePolynomial(p.num_vars(), std::move(face)), best};
}

}  // namespace newtonpoly
