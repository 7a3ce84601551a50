#include "newtonpoly/eval_oracle.hpp"

#include "newtonpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace newtonpoly {

namespace {

std::vector<std::complex<double>> random_unit_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<std::complex<double>> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(std::polar(1.0, angle(rng)));
    return x;
}

std::string format_vector(std::span<const double> w) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ')';
    return os.str();
}

}  // namespace

void EvalBounds::validate() const {
    if (!(delta >= 1.0)) throw Error(ErrorKind::InvalidArgument, "delta must be at least 1");
    if (!(lambda >= 1.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be at least 1");
    if (superset.empty()) throw Error(ErrorKind::InvalidArgument, "exponent superset is empty");
    std::set<ExponentVector> seen;
    for (const auto& b : superset) {
        if (b.size() != superset.front().size()) throw Error(ErrorKind::InvalidArgument, "superset lengths differ");
        if (!seen.insert(b).second) throw Error(ErrorKind::InvalidArgument, "superset has duplicate exponents");
    }
}

std::vector<double> to_double_vector(std::span<const Rational> w) {
    std::vector<double> out;
    for (const auto& x : w) out.push_back(to_double(x));
    return out;
}

DirectionGap min_gap(std::span<const ExponentVector> b, std::span<const double> w) {
    if (b.size() < 2) throw Error(ErrorKind::InvalidArgument, "gap needs at least two exponents");
    std::vector<double> vals;
    for (const auto& beta : b) vals.push_back(dot(w, std::span<const std::int64_t>(beta)));
    std::sort(vals.begin(), vals.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < vals.size(); ++i) gap = std::min(gap, vals[i] - vals[i - 1]);
    if (gap <= 1e-12) throw Error(ErrorKind::NotGeneric, "direction " + format_vector(w) + " ties two exponents");
    return {std::vector<double>(w.begin(), w.end()), gap, std::nullopt};
}

DirectionGap min_gap(std::span<const ExponentVector> b, std::span<const Rational> w) {
    if (b.size() < 2) throw Error(ErrorKind::InvalidArgument, "gap needs at least two exponents");
    std::vector<Rational> vals;
    for (const auto& beta : b) vals.push_back(dot(w, std::span<const std::int64_t>(beta)));
    std::sort(vals.begin(), vals.end());
    std::optional<Rational> gap;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        const Rational g = vals[i] - vals[i - 1];
        if (!gap || g < *gap) gap = g;
    }
    const auto wd = to_double_vector(w);
    if (*gap == 0) throw Error(ErrorKind::NotGeneric, "direction " + format_vector(wd) + " ties two exponents");
    return {wd, to_double(*gap), gap};
}

double threshold_log_t(const EvalBounds& bounds, const DirectionGap& gap) {
    const double n = static_cast<double>(bounds.superset.size());
    const double m = std::max({2.0 * bounds.lambda, 2.0 * (bounds.delta + std::exp(-1.0)),
                               bounds.lambda + std::log(n) + 1.0});
    return m / gap.d_w;
}

double threshold_t(const EvalBounds& bounds, const DirectionGap& gap) { return std::exp(threshold_log_t(bounds, gap)); }

VertexAnswer vertex_query_log(const Slp& f, const EvalBounds& bounds, std::span<const double> w, double log_t,
                              std::uint64_t seed) {
    bounds.validate();
    const std::size_t n = w.size();
    if (bounds.superset.front().size() != n) throw Error(ErrorKind::InvalidArgument, "direction length mismatch");
    VertexAnswer ans;
    ans.log_t = log_t;
    std::optional<DirectionGap> gap;
    if (bounds.superset.size() > 1) {
        gap = min_gap(bounds.superset, w);
        ans.d_w = gap->d_w;
        const double need = threshold_log_t(bounds, *gap);
        if (!(log_t > need))
            throw Error(ErrorKind::InvalidArgument,
                        "log t = " + std::to_string(log_t) + " is not above the threshold " + std::to_string(need));
    } else {
        ans.d_w = std::numeric_limits<double>::infinity();
        if (!(log_t > 0)) throw Error(ErrorKind::InvalidArgument, "t must exceed 1");
    }
    std::mt19937_64 rng(seed);
    bool any_value = false;
    for (int attempt = 0; attempt < 3; ++attempt) {
        const auto x = attempt == 0 ? std::vector<std::complex<double>>(n, 1.0) : random_unit_point(rng, n);
        const ScaledComplex v = f.evaluate(scaled_point_log(log_t, w, x));
        if (v.is_zero()) continue;
        any_value = true;
        const double ratio = v.log_abs() / log_t;
        std::vector<const ExponentVector*> hits;
        for (const auto& beta : bounds.superset)
            if (std::abs(dot(w, std::span<const std::int64_t>(beta)) - ratio) < ans.d_w / 2) hits.push_back(&beta);
        if (hits.size() == 1) {
            ans.beta = *hits.front();
            ans.ratio = ratio;
            ans.x = x;
            return ans;
        }
        ans.ratio = ratio;
    }
    if (!any_value)
        throw Error(ErrorKind::EvaluationZero, "f vanished at every evaluation point along " + format_vector(w));
    throw Error(ErrorKind::NoUniqueCandidate,
                "no unique exponent within d_w/2 of the measured ratio " + std::to_string(ans.ratio));
}

VertexAnswer vertex_query(const Slp& f, const EvalBounds& bounds, std::span<const double> w, double t,
                          std::uint64_t seed) {
    if (!(t > 0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
    return vertex_query_log(f, bounds, w, std::log(t), seed);
}

Rational value_group_generator(std::span<const Rational> w) {
    Integer l = 1;
    for (const auto& x : w) l = lcm(l, boost::multiprecision::denominator(x));
    Integer g = 0;
    for (const auto& x : w) g = gcd(g, abs(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x))));
    if (g == 0) throw Error(ErrorKind::InvalidArgument, "direction must be nonzero");
    return Rational(g, l);
}

std::vector<double> default_tau_schedule(std::span<const Rational> w, double tau0, double ratio, std::size_t count) {
    double wmax = 0;
    for (const auto& x : w) wmax = std::max(wmax, std::abs(to_double(x)));
    std::vector<double> taus;
    double tau = tau0;
    for (std::size_t k = 0; k < count && tau * wmax <= 1e9; ++k) {
        taus.push_back(tau);
        tau *= ratio;
    }
    return taus;
}

SupportEstimate support_estimate(const Slp& f, std::span<const Rational> w, std::span<const std::complex<double>> x,
                                 std::span<const double> tau_schedule, std::optional<double> tol) {
    if (x.size() != w.size()) throw Error(ErrorKind::InvalidArgument, "point and direction lengths differ");
    SupportEstimate est;
    est.w.assign(w.begin(), w.end());
    est.x.assign(x.begin(), x.end());
    est.group_gen = value_group_generator(w);
    const double gen = to_double(est.group_gen);
    const double tolerance = tol.value_or(0.25) * gen;
    const auto wd = to_double_vector(w);

    struct Lock {
        Integer k;
        double dist;
    };
    std::vector<Lock> recent;
    double prev_tau = 0, prev_log = 0;
    bool have_prev = false;
    for (double tau : tau_schedule) {
        const ScaledComplex v = f.evaluate(scaled_point_log(tau, wd, x));
        if (v.is_zero()) throw Error(ErrorKind::EvaluationZero, "f vanished along the monomial curve");
        const double lg = v.log_abs();
        est.samples.emplace_back(tau, lg / tau);
        if (have_prev) {
            const double slope = (lg - prev_log) / (tau - prev_tau);
            est.slopes.emplace_back(tau, slope);
            const double q = slope / gen;
            const Integer k = Integer(static_cast<long long>(std::llround(q)));
            double dist = std::abs(q - std::round(q)) * gen;
            if (dist < 1e-9 * gen) dist = 0;  // rounding floor
            recent.push_back({k, dist});
            if (recent.size() > 3) recent.erase(recent.begin());
            if (recent.size() == 3) {
                bool ok = true;
                for (std::size_t i = 0; i < 3; ++i) {
                    ok = ok && recent[i].k == recent[0].k && recent[i].dist < tolerance;
                    if (i > 0) ok = ok && recent[i].dist <= recent[i - 1].dist;
                }
                if (ok) {
                    est.h_value = Rational(recent[0].k) * est.group_gen;
                    return est;
                }
            }
        }
        prev_tau = tau;
        prev_log = lg;
        have_prev = true;
    }
    throw Error(ErrorKind::NoConvergence, "support estimate did not settle on a multiple of the value-group generator");
}

SupportEstimate support_value(const Slp& f, std::span<const Rational> w, std::uint64_t seed) {
    // A point where f_w vanishes makes the estimate settle on a smaller value,
    // so take the larger of two independent random points.
    const auto taus = default_tau_schedule(w);
    std::mt19937_64 rng(seed);
    std::optional<SupportEstimate> best;
    std::optional<Error> last;
    for (int attempt = 0; attempt < 4 && !(best && attempt >= 2); ++attempt) {
        const auto x = random_unit_point(rng, w.size());
        try {
            SupportEstimate est = support_estimate(f, w, x, taus);
            if (!best || *est.h_value > *best->h_value) best = std::move(est);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoConvergence && e.kind() != ErrorKind::EvaluationZero) throw;
            last = e;
        }
    }
    if (!best) throw *last;
    return std::move(*best);
}

std::vector<RationalVector> default_bounding_directions(std::size_t n) {
    std::vector<RationalVector> dirs;
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector e(n, Rational(0));
        e[i] = 1;
        dirs.push_back(std::move(e));
    }
    if (n > 1) dirs.emplace_back(n, Rational(1));
    return dirs;
}

BoundingResult bounding_polytope(const Slp& f, std::size_t n, const std::vector<RationalVector>& directions,
                                 std::uint64_t seed) {
    BoundingResult out;
    out.system.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        IntegerVector e(n, Integer(0));
        e[i] = -1;
        out.system.inequalities.push_back({std::move(e), Integer(0)});
    }
    std::vector<IntegerVector> normals;
    for (const auto& w : directions) {
        if (w.size() != n) throw Error(ErrorKind::InvalidArgument, "direction length mismatch");
        normals.push_back(integerize(w));
    }
    {
        HalfspaceSystem cone = out.system;
        for (const auto& a : normals) cone.inequalities.push_back({a, Integer(0)});
        if (!cone.bounded()) throw Error(ErrorKind::Unbounded, "directions do not bound the positive orthant");
    }
    for (std::size_t j = 0; j < directions.size(); ++j) {
        const auto& w = directions[j];
        SupportEstimate est = support_value(f, w, seed + j);
        // integerize scaled w by a positive factor s; scale h the same way
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] != 0) {
                s = Rational(normals[j][i]) / w[i];
                break;
            }
        const Rational bound = *est.h_value * s;
        out.system.inequalities.push_back({normals[j], floor(bound)});
        out.estimates.push_back(std::move(est));
    }
    const auto verts = out.system.vertices();
    bool integral = true;
    std::vector<LatticePoint> vpts;
    for (const auto& v : verts) {
        LatticePoint p;
        for (const auto& x : v) {
            if (boost::multiprecision::denominator(x) != 1) integral = false;
            p.push_back(to_int64(floor(x)));
        }
        vpts.push_back(std::move(p));
    }
    out.lattice_points = out.system.lattice_points();
    out.polytope = convex_hull(integral ? vpts : out.lattice_points);
    return out;
}

AdaptiveAnswer adaptive_vertex_query(const Slp& f, std::span<const ExponentVector> superset,
                                     std::span<const Rational> w, std::uint64_t seed) {
    AdaptiveAnswer out;
    out.estimate = support_value(f, w, seed);
    const Rational h = *out.estimate.h_value;
    // Compare l*w.beta with l*h in integers, l the common denominator of w.
    Integer l = 1;
    for (const auto& x : w) l = lcm(l, boost::multiprecision::denominator(x));
    const Rational hl = h * l;
    if (boost::multiprecision::denominator(hl) != 1) throw Error(ErrorKind::NoUniqueCandidate, "support value is off the lattice");
    IntegerVector wl;
    for (const auto& x : w) wl.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
    const Integer target = boost::multiprecision::numerator(hl);
    const ExponentVector* hit = nullptr;
    for (const auto& beta : superset) {
        if (dot(wl, std::span<const std::int64_t>(beta)) != target) continue;
        if (hit) throw Error(ErrorKind::NoUniqueCandidate, "several superset points attain the support value");
        hit = &beta;
    }
    if (!hit) throw Error(ErrorKind::NoUniqueCandidate, "no superset point attains the support value " + to_string(h));
    out.beta = *hit;
    return out;
}

RationalVector parse_direction(std::string_view text) {
    std::string s(text);
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    RationalVector out;
    std::string tok;
    while (in >> tok) out.push_back(parse_rational(tok));
    if (out.empty()) throw Error(ErrorKind::Parse, "empty direction");
    return out;
}

std::vector<RationalVector> parse_direction_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<RationalVector> out;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        try {
            out.push_back(parse_direction(line));
        } catch (const Error& e) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + e.what());
        }
        if (out.back().size() != out.front().size())
            throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": inconsistent direction length");
    }
    return out;
}

}  // namespace newtonpoly
