#include "newtonpoly/numeric.hpp"

#include "newtonpoly/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace newtonpoly {

namespace {

Integer pow10(unsigned k) {
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) r *= 10;
    return r;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
    auto fail = [&] { throw Error(ErrorKind::Parse, "malformed number '" + std::string(original) + "'"); };
    long long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view ex = s.substr(e + 1);
        bool neg = false;
        if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) {
            neg = ex[0] == '-';
            ex.remove_prefix(1);
        }
        if (!all_digits(ex) || ex.size() > 6) fail();
        exp10 = std::stoll(std::string(ex));
        if (neg) exp10 = -exp10;
        s = s.substr(0, e);
    }
    std::string_view whole = s, frac;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        whole = s.substr(0, dot);
        frac = s.substr(dot + 1);
    }
    if (whole.empty() && frac.empty()) fail();
    if (!whole.empty() && !all_digits(whole)) fail();
    if (!frac.empty() && !all_digits(frac)) fail();
    Integer mant(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    exp10 -= static_cast<long long>(frac.size());
    if (exp10 >= 0) return Rational(mant * pow10(static_cast<unsigned>(exp10)));
    return Rational(mant, pow10(static_cast<unsigned>(-exp10)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw Error(ErrorKind::Parse, "empty number");
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    Rational r;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
        Integer den(std::string{q});
        if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
        r = Rational(Integer(std::string{p}), den);
    } else {
        r = parse_decimal(s, text);
    }
    return neg ? Rational(-r) : r;
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
    if (boost::multiprecision::denominator(value) == 1) return boost::multiprecision::numerator(value).str();
    return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational exact_rational(double value) {
    if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "non-finite value");
    if (value == 0.0) return Rational(0);
    int e = 0;
    double m = std::frexp(value, &e);  // value = m * 2^e, |m| in [0.5,1)
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    e -= 53;
    Integer num = mant;
    if (e >= 0) return Rational(num << e);
    return Rational(num, Integer(1) << -e);
}

Integer floor(const Rational& value) {
    Integer q = boost::multiprecision::numerator(value) / boost::multiprecision::denominator(value);
    if (value < 0 && Rational(q) != value) q -= 1;
    return q;
}

Integer ceil(const Rational& value) {
    Integer f = floor(value);
    return Rational(f) == value ? f : f + 1;
}

Integer round_nearest(const Rational& value) {
    if (value >= 0) return floor(value + Rational(1, 2));
    return -floor(-value + Rational(1, 2));
}

std::int64_t to_int64(const Integer& value) {
    if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorKind::InvalidArgument, "integer does not fit in 64 bits: " + value.str());
    return value.convert_to<std::int64_t>();
}

IntegerVector make_primitive(IntegerVector v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, abs(x));
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

IntegerVector integerize(std::span<const Rational> v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, boost::multiprecision::denominator(x));
    IntegerVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
    return make_primitive(std::move(out));
}

IntegerVector to_integer_vector(std::span<const std::int64_t> v) { return IntegerVector(v.begin(), v.end()); }

RationalVector to_rational_vector(std::span<const std::int64_t> v) {
    RationalVector out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

RationalVector to_rational_vector(std::span<const Integer> v) {
    RationalVector out;
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

Integer dot(std::span<const Integer> a, std::span<const std::int64_t> b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(std::span<const Rational> a, std::span<const std::int64_t> b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double dot(std::span<const double> a, std::span<const std::int64_t> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * static_cast<double>(b[i]);
    return s;
}

std::int64_t degree(std::span<const std::int64_t> alpha) {
    std::int64_t d = 0;
    for (auto a : alpha) d += a;
    return d;
}

}  // namespace newtonpoly
