#include "newtonpoly/coefficient.hpp"

#include "newtonpoly/errors.hpp"

#include <cctype>
#include <cstdio>

namespace newtonpoly {

namespace {

Rational parse_imag_factor(std::string_view s, std::string_view original) {
    if (!s.empty() && s.back() == '*') s.remove_suffix(1);
    if (s.empty() || s == "+") return 1;
    if (s == "-") return -1;
    try {
        return parse_rational(s);
    } catch (const Error&) {
        throw Error(ErrorKind::Parse, "malformed Gaussian rational '" + std::string(original) + "'");
    }
}

}  // namespace

GaussianRational parse_gaussian(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(ErrorKind::Parse, "empty coefficient");
    if (s.back() != 'i') {
        try {
            return {parse_rational(s), 0};
        } catch (const Error&) {
            throw Error(ErrorKind::Parse, "malformed Gaussian rational '" + std::string(text) + "'");
        }
    }
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0, parse_imag_factor(s, text)};
    GaussianRational g;
    try {
        g.real = parse_rational(std::string_view(s).substr(0, split));
    } catch (const Error&) {
        throw Error(ErrorKind::Parse, "malformed Gaussian rational '" + std::string(text) + "'");
    }
    g.imag = parse_imag_factor(std::string_view(s).substr(split), text);
    return g;
}

std::string to_string(const GaussianRational& value) {
    if (value.imag == 0) return to_string(value.real);
    std::string im = to_string(value.imag);
    if (value.real == 0) return im + "i";
    if (value.imag > 0) im = "+" + im;
    return to_string(value.real) + im + "i";
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
    if (exact_ && o.exact_) {
        *exact_ += *o.exact_;
        value_ = exact_->to_complex();
    } else {
        exact_.reset();
        value_ += o.value_;
    }
    return *this;
}

std::string to_string(const Coefficient& c) {
    if (c.exact()) return to_string(*c.exact());
    char buf[96];
    const auto v = c.value();
    if (v.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.17g", v.real());
    else
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}

}  // namespace newtonpoly
