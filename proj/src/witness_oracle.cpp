#include "newtonpoly/witness_oracle.hpp"

#include "newtonpoly/errors.hpp"
#include "newtonpoly/univariate.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace newtonpoly {

ScaledComplex LineBackend::evaluate(std::span<const ScaledComplex> x) const {
    std::vector<ScaledComplex> zero(x.size());
    return evaluate_dir(x, zero).first;
}

namespace {

constexpr double kRatioSeparation = 1e-3;
constexpr double kRootSeparation = 1e-8;
constexpr double kRootResidual = 1e-10;
constexpr double kTrackResidual = 1e-8;
constexpr double kCrossing = 1e-8;  // relative to the local scale of the closer path
constexpr double kFloor = 1e-10;  // relative distance to b_i/a_i at which a path is frozen
constexpr double kOverflow = 1e200;

struct LineEval {
    ScaledComplex g, gs, gt;
};

// g(s, tau) = f(e^{tau w} . (s a - b)) with its s- and tau-derivatives.
LineEval eval_line(const LineBackend& backend, const WitnessLine& line, std::span<const double> w, double log_t,
                   Complex s, bool need_t) {
    const std::size_t n = line.n;
    std::vector<ScaledComplex> x(n), vs(n), vt(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ScaledComplex scale = ScaledComplex::from_log_polar(log_t * w[i], 0.0);
        x[i] = scale * ScaledComplex(s * line.a[i] - line.b[i]);
        vs[i] = scale * ScaledComplex(line.a[i]);
        vt[i] = ScaledComplex(w[i]) * x[i];
    }
    LineEval e;
    std::tie(e.g, e.gs) = backend.evaluate_dir(x, vs);
    if (need_t) e.gt = backend.evaluate_dir(x, vt).second;
    return e;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::optional<Complex> newton_step(const LineEval& e) {
    if (e.gs.is_zero()) return std::nullopt;
    const Complex d = (e.g / e.gs).to_complex();
    if (!finite(d)) return std::nullopt;
    return d;
}

std::optional<Complex> tangent(const LineBackend& backend, const WitnessLine& line, std::span<const double> w,
                               double log_t, Complex s) {
    const auto e = eval_line(backend, line, w, log_t, s, true);
    if (e.gs.is_zero()) return std::nullopt;
    const Complex v = -(e.gt / e.gs).to_complex();
    if (!finite(v)) return std::nullopt;
    return v;
}

std::vector<double> zero_direction(std::size_t n) { return std::vector<double>(n, 0.0); }

}  // namespace

double line_residual(const LineBackend& backend, const WitnessLine& line, std::span<const double> w, double log_t,
                     Complex s) {
    const auto step = newton_step(eval_line(backend, line, w, log_t, s, false));
    if (!step) return std::numeric_limits<double>::infinity();
    return std::abs(*step) / (1 + std::abs(s));
}

std::vector<Complex> initial_roots(const LineBackend& backend, const WitnessLine& line) {
    const auto p = [&](Complex s) {
        std::vector<ScaledComplex> x(line.n);
        for (std::size_t i = 0; i < line.n; ++i) x[i] = ScaledComplex(s * line.a[i] - line.b[i]);
        return backend.evaluate(x).to_complex();
    };
    const auto max_abs = [](const std::vector<Complex>& c) {
        double m = 0;
        for (auto z : c) m = std::max(m, std::abs(z));
        return m;
    };

    std::size_t d = line.degree;
    if (d == 0) {
        for (std::size_t m = 8;; m *= 2) {
            const auto c = interpolate_on_circle(p, m);
            const double scale = max_abs(c);
            if (scale == 0) throw Error(ErrorKind::DegreeMismatch, "f vanishes identically on the line");
            double top = 0;
            for (std::size_t j = m / 2; j < m; ++j) top = std::max(top, std::abs(c[j]));
            if (top <= 1e-10 * scale) {
                for (std::size_t j = 0; j < m; ++j)
                    if (std::abs(c[j]) > 1e-10 * scale) d = j;
                break;
            }
            if (m >= 1024) throw Error(ErrorKind::DegreeMismatch, "degree along the line exceeds 512");
        }
        if (d == 0) throw Error(ErrorKind::DegreeMismatch, "f is constant along the line");
    }

    const auto c = interpolate_on_circle(p, d + 1);
    const auto check = interpolate_on_circle(p, d + 2);
    const double scale = max_abs(check);
    if (scale == 0 || std::abs(check[d + 1]) > 1e-8 * scale)
        throw Error(ErrorKind::DegreeMismatch, "degree along the line exceeds " + std::to_string(d));
    if (std::abs(c[d]) <= 1e-10 * scale)
        throw Error(ErrorKind::DegreeMismatch, "leading coefficient vanishes at degree " + std::to_string(d));

    auto roots = aberth_roots(c);
    const auto zero_w = zero_direction(line.n);
    for (auto& s : roots) {
        for (int it = 0; it < 20; ++it) {
            const auto step = newton_step(eval_line(backend, line, zero_w, 0.0, s, false));
            if (!step) break;
            s -= *step;
            if (std::abs(*step) <= 1e-15 * (1 + std::abs(s))) break;
        }
        const double r = line_residual(backend, line, zero_w, 0.0, s);
        if (!(r < kRootResidual))
            throw Error(ErrorKind::RootCoincidence, "initial root did not polish (residual " + std::to_string(r) + ")");
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= kRootSeparation)
                throw Error(ErrorKind::RootCoincidence, "two witness points coincide on the line");
    std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return roots;
}

WitnessLine make_line(const LineBackend& backend, std::vector<Complex> a, std::vector<Complex> b,
                      std::optional<std::size_t> degree) {
    const std::size_t n = backend.num_vars();
    if (a.size() != n || b.size() != n)
        throw Error(ErrorKind::InvalidArgument, "line vectors must have " + std::to_string(n) + " entries");
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] == Complex(0) || !finite(a[i]) || !finite(b[i]))
            throw Error(ErrorKind::GenericityFailure, "a_" + std::to_string(i + 1) + " must be a nonzero finite number");
    WitnessLine line{n, std::move(a), std::move(b), degree.value_or(0), {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(line.ratio(i) - line.ratio(j)) <= kRatioSeparation)
                throw Error(ErrorKind::GenericityFailure, "ratios b_i/a_i are not separated");
    line.roots = initial_roots(backend, line);
    line.degree = line.roots.size();
    return line;
}

WitnessLine make_line(const LineBackend& backend, std::uint64_t seed, std::optional<std::size_t> degree) {
    const std::size_t n = backend.num_vars();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::string last;
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<Complex> a(n), b(n);
        const double phase = angle(rng);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = std::polar(1.0 + 0.2 * unit(rng), angle(rng));
            const double theta = phase + 2.0 * std::numbers::pi * (double(i) + 0.3 * unit(rng)) / double(n);
            b[i] = a[i] * std::polar(1.0 + 0.2 * unit(rng), theta);
        }
        try {
            return make_line(backend, std::move(a), std::move(b), degree);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::GenericityFailure && e.kind() != ErrorKind::RootCoincidence &&
                e.kind() != ErrorKind::DegreeMismatch)
                throw;
            last = e.what();
        }
    }
    throw Error(ErrorKind::GenericityFailure, "no generic line after 5 draws (" + last + ")");
}

LineConstants line_constants(const WitnessLine& line, double C, std::optional<double> num_terms) {
    if (!(C > 0)) throw Error(ErrorKind::InvalidArgument, "C must be positive");
    LineConstants c;
    c.C = C;
    c.degree = line.degree;
    for (std::size_t i = 0; i < line.n; ++i) {
        c.a_min = std::min(c.a_min, std::abs(line.a[i]));
        c.a_max = std::max(c.a_max, std::abs(line.a[i]));
        c.b_min = std::min(c.b_min, std::abs(line.b[i]));
        c.b_max = std::max(c.b_max, std::abs(line.b[i]));
    }
    for (std::size_t i = 0; i < line.n; ++i) {
        double g = c.a_min, G = 2.0 / c.a_max;
        for (std::size_t j = 0; j < line.n; ++j) {
            if (j == i) continue;
            const double dist = std::abs(line.ratio(i) - line.ratio(j));
            g = std::min(g, dist / 2);
            G = std::max(G, dist);
            if (!(2 * g <= dist)) throw Error(ErrorKind::AmbiguousCluster, "gamma balls overlap");
        }
        c.gamma.push_back(g);
        c.Gamma.push_back(G);
        c.gamma_table.push_back(G);
    }
    if (num_terms) {
        c.num_terms = *num_terms;
    } else {
        double binom = 1;
        for (std::size_t k = 1; k <= line.degree; ++k) binom = binom * double(line.n + k) / double(k);
        c.num_terms = std::round(binom);
    }
    return c;
}

double convergence_bound_log(const LineConstants& c, std::size_t i, double d_w, double log_t, bool table_gamma) {
    const double g = table_gamma ? c.gamma_table.at(i) : c.gamma.at(i);
    return -d_w * log_t + std::log(c.C * c.num_terms) +
           double(c.degree) * std::log(c.a_max / c.a_min * (1 + c.Gamma.at(i) / g));
}

double divergence_bound_log(const LineConstants& c, double d_w, double log_t, Eq17Variant variant) {
    const double denom = variant == Eq17Variant::Proof ? c.a_max + c.b_max : c.a_max + c.a_min;
    return d_w * log_t - std::log(c.C * c.num_terms) + double(c.degree) * std::log(c.a_min / (2 * denom));
}

std::vector<TrackedPath> track_paths(const LineBackend& backend, const WitnessLine& line, std::span<const double> w,
                                     const TrackOptions& options) {
    if (w.size() != line.n) throw Error(ErrorKind::InvalidArgument, "direction has the wrong dimension");
    if (!(options.t_max > 1)) throw Error(ErrorKind::InvalidArgument, "t_max must exceed 1");
    const double tau_max = std::log(options.t_max);
    double wmax = 0;
    for (double x : w) wmax = std::max(wmax, std::abs(x));

    // Checkpoints: every doubling, the requested sample times, and t_max.
    std::vector<std::pair<double, bool>> marks;  // (tau, is_doubling)
    for (int k = 1; k * std::numbers::ln2 < tau_max; ++k) marks.emplace_back(k * std::numbers::ln2, true);
    for (double t : options.sample_at)
        if (t > 1 && t < options.t_max) marks.emplace_back(std::log(t), false);
    marks.emplace_back(tau_max, true);
    std::sort(marks.begin(), marks.end());

    const std::size_t d = line.roots.size();
    std::vector<TrackedPath> paths(d);
    std::vector<Complex> s = line.roots;
    const auto zero_w = zero_direction(line.n);
    for (std::size_t k = 0; k < d; ++k)
        paths[k].samples.push_back({0.0, 1.0, s[k], line_residual(backend, line, zero_w, 0.0, s[k])});

    const double h_max = wmax > 0 ? std::min(std::numbers::ln2, 1.0 / wmax) : std::numbers::ln2;
    const double h_min = 1e-12 * std::max(1.0, tau_max);
    double h = std::min(h_max, wmax > 0 ? 0.05 / wmax : h_max);
    double tau = 0;
    std::size_t next_mark = 0;

    const auto freeze_check = [&](std::size_t k) {
        if (std::abs(s[k]) > kOverflow) return true;
        for (std::size_t i = 0; i < line.n; ++i) {
            const Complex rho = line.ratio(i);
            if (std::abs(s[k] - rho) < kFloor * (1 + std::abs(rho))) return true;
        }
        return false;
    };

    // Paths heading to the same b_i/a_i close in on each other at the rate they close in on it,
    // so separation is measured against the distance to the nearest ratio.
    const auto local_scale = [&](Complex z) {
        double sc = 1 + std::abs(z);
        for (std::size_t i = 0; i < line.n; ++i) sc = std::min(sc, std::abs(z - line.ratio(i)));
        return sc;
    };

    while (next_mark < marks.size()) {
        const double target = marks[next_mark].first;
        const double step = std::min(h, target - tau);
        const bool hits_mark = step == target - tau;
        const double tau1 = tau + step;

        std::vector<Complex> next = s;
        std::vector<double> resid(d, 0.0);
        std::string failure;
        bool crossing = false;
        bool slow = false;
        for (std::size_t k = 0; k < d && failure.empty(); ++k) {
            if (paths[k].frozen) continue;
            // RK4 predictor on ds/dtau = -g_tau / g_s.
            const auto k1 = tangent(backend, line, w, tau, s[k]);
            const auto k2 = k1 ? tangent(backend, line, w, tau + step / 2, s[k] + step / 2 * *k1) : std::nullopt;
            const auto k3 = k2 ? tangent(backend, line, w, tau + step / 2, s[k] + step / 2 * *k2) : std::nullopt;
            const auto k4 = k3 ? tangent(backend, line, w, tau1, s[k] + step * *k3) : std::nullopt;
            if (!k4) {
                failure = "singular tangent";
                break;
            }
            Complex z = s[k] + step / 6 * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) nearest = std::min(nearest, std::abs(s[j] - s[k]));
            double last = std::numeric_limits<double>::infinity();
            bool jumped = false;
            for (int it = 0; it < 6; ++it) {
                const auto dz = newton_step(eval_line(backend, line, w, tau1, z, false));
                if (!dz) {
                    last = std::numeric_limits<double>::infinity();
                    break;
                }
                const double size = std::abs(*dz);
                if (it == 0 && size > 0.1 * nearest) {  // would move toward another path
                    jumped = true;
                    break;
                }
                if (it > 0 && size > 0.5 * last) break;  // noise floor or divergence
                z -= *dz;
                last = size;
                if (size <= 1e-13 * (1 + std::abs(z))) break;
                if (it >= 2) slow = true;
            }
            if (jumped || !(last <= 1e-9 * (1 + std::abs(z)))) {
                failure = "corrector failed";
                break;
            }
            resid[k] = line_residual(backend, line, w, tau1, z);
            if (!(resid[k] < kTrackResidual)) {
                failure = "residual too large";
                break;
            }
            next[k] = z;
        }
        if (failure.empty()) {
            for (std::size_t i = 0; i < d && !crossing; ++i)
                for (std::size_t j = i + 1; j < d && !crossing; ++j) {
                    if (paths[i].frozen && paths[j].frozen) continue;
                    const double scale = std::max(local_scale(next[i]), local_scale(next[j]));
                    if (std::abs(next[i] - next[j]) <= kCrossing * scale) crossing = true;
                }
            if (crossing) failure = "paths crossed";
        }
        if (!failure.empty()) {
            h = step / 2;
            if (h < h_min)
                throw Error(crossing ? ErrorKind::PathCrossing : ErrorKind::TrackingFailure,
                            failure + " near t = " + std::to_string(std::exp(tau)));
            continue;
        }

        tau = tau1;
        s = next;
        for (std::size_t k = 0; k < d; ++k) {
            if (paths[k].frozen) continue;
            paths[k].samples.push_back({tau, std::exp(tau), s[k], resid[k]});
            if (freeze_check(k)) paths[k].frozen = true;
        }
        if (!slow) h = std::min(h_max, std::max(h, step) * 1.5);
        if (hits_mark) {
            const bool doubling = marks[next_mark].second;
            ++next_mark;
            if (doubling && options.stop && options.stop(paths)) break;
        }
        if (std::all_of(paths.begin(), paths.end(), [](const TrackedPath& p) { return p.frozen; })) break;
    }
    return paths;
}

namespace {

// Region index: i for the gamma ball around b_i/a_i, n for the divergence region, n+1 for none.
std::size_t region(const PathSample& sample, const WitnessLine& line, const LineConstants& consts) {
    std::optional<std::size_t> ball;
    for (std::size_t i = 0; i < line.n; ++i)
        if (std::abs(sample.s - line.ratio(i)) <= consts.gamma[i]) {
            if (ball) throw Error(ErrorKind::AmbiguousCluster, "path lies in two gamma balls");
            ball = i;
        }
    if (ball) return *ball;
    if (std::abs(sample.s) > 2 * consts.b_max / consts.a_min) return line.n;
    return line.n + 1;
}

double path_entry(const VertexCertificate& cert, std::size_t k) {
    return k < cert.path_log_t_entry.size() ? cert.path_log_t_entry[k] : cert.log_t_entry;
}

double slope_fit(const std::vector<std::pair<double, double>>& pts) {
    const double m = double(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    return den > 0 ? (m * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

VertexCertificate classify_paths(std::vector<TrackedPath>& paths, const WitnessLine& line,
                                 const LineConstants& consts) {
    VertexCertificate cert;
    cert.beta.assign(line.n, 0);
    double entry = 0;
    cert.path_log_t_entry.clear();
    for (auto& p : paths) {
        if (p.samples.empty()) throw Error(ErrorKind::Indeterminate, "empty path");
        const std::size_t final_region = region(p.samples.back(), line, consts);
        if (final_region > line.n) {
            p.status = PathStatus::Undecided;
            throw Error(ErrorKind::Indeterminate,
                        "a path lies in no convergence or divergence region at t = " +
                            std::to_string(p.samples.back().t));
        }
        std::size_t first = p.samples.size() - 1;
        while (first > 0 && region(p.samples[first - 1], line, consts) == final_region) --first;
        entry = std::max(entry, p.samples[first].log_t);
        cert.path_log_t_entry.push_back(p.samples[first].log_t);
        if (final_region == line.n) {
            p.status = PathStatus::Diverging;
            ++cert.diverging;
        } else {
            p.status = PathStatus::Converging;
            p.coordinate = final_region;
            ++cert.beta[final_region];
        }
    }
    std::int64_t total = std::int64_t(cert.diverging);
    for (auto b : cert.beta) total += b;
    if (total != std::int64_t(line.degree))
        throw Error(ErrorKind::Inconsistent, "path counts do not add up to the degree");
    cert.log_t_entry = entry;
    cert.t_entry = std::exp(entry);
    return cert;
}

VertexCertificate verify_rates(const std::vector<TrackedPath>& paths, VertexCertificate cert,
                               const LineConstants& consts, const WitnessLine& line, const RateOptions& options) {
    const double d = double(line.degree);
    std::int64_t beta_total = 0;
    for (auto b : cert.beta) beta_total += b;
    const double div_power = d - double(beta_total);

    // Per path: (log t, log distance or log |s|) past entry, and the exponent on the left side.
    struct Series {
        std::vector<std::pair<double, double>> pts;
        double power;
        bool converging;
        std::size_t coordinate;
    };
    std::vector<Series> series;
    for (std::size_t k = 0; k < paths.size(); ++k) {
        const auto& p = paths[k];
        const double entry = path_entry(cert, k);
        Series sr{{}, 0, p.status == PathStatus::Converging, p.coordinate};
        if (p.status == PathStatus::Undecided) throw Error(ErrorKind::Indeterminate, "unclassified path");
        sr.power = sr.converging ? double(cert.beta[p.coordinate]) : div_power;
        for (const auto& smp : p.samples) {
            if (!(smp.log_t > entry)) continue;
            const double v = sr.converging ? std::log(std::abs(smp.s - line.ratio(p.coordinate)))
                                           : std::log(std::abs(smp.s));
            sr.pts.emplace_back(smp.log_t, v);
        }
        if (sr.pts.size() < 3) throw Error(ErrorKind::Indeterminate, "fewer than three samples past t_entry");
        series.push_back(std::move(sr));
    }

    // Slopes over the last half of each post-entry series.
    cert.slopes.clear();
    double implied = std::numeric_limits<double>::infinity();
    for (const auto& sr : series) {
        std::vector<std::pair<double, double>> tail;
        for (std::size_t k = sr.pts.size() / 2; k < sr.pts.size(); ++k)
            if (std::isfinite(sr.pts[k].second)) tail.push_back(sr.pts[k]);
        if (tail.size() < 2) tail.clear();
        for (std::size_t k = 0; tail.empty() && k < sr.pts.size(); ++k)
            if (std::isfinite(sr.pts[k].second)) tail.push_back(sr.pts[k]);
        const double slope = tail.size() >= 2 ? slope_fit(tail) : std::numeric_limits<double>::quiet_NaN();
        cert.slopes.push_back(slope);
        if (std::isfinite(slope)) implied = std::min(implied, sr.power * (sr.converging ? -slope : slope));
    }

    if (options.d_w) {
        cert.d_w = *options.d_w;
    } else {
        if (!std::isfinite(implied) || !(options.group_gen > 0))
            throw Error(ErrorKind::Indeterminate, "no usable slopes to fit d_w");
        // Rates approach a multiple of the value-group generator; snap when close.
        const double k = implied / options.group_gen;
        const double snapped = std::round(k);
        cert.d_w = (std::abs(k - snapped) <= 0.15 ? snapped : std::floor(k)) * options.group_gen;
        cert.d_w_fitted = true;
        if (!(cert.d_w > 0))
            throw Error(ErrorKind::RateViolation, "observed rate " + std::to_string(implied) + " is below the value group");
    }

    cert.rate_checks.assign(paths.size(), true);
    cert.bound_samples = 0;
    std::string failure;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& sr = series[k];
        for (auto [lt, v] : sr.pts) {
            ++cert.bound_samples;
            if (sr.converging) {
                if (!std::isfinite(v)) continue;  // exactly at b_i/a_i
                const double bound = convergence_bound_log(consts, sr.coordinate, cert.d_w, lt, options.table_gamma);
                if (sr.power * v > bound + 1e-9) cert.rate_checks[k] = false;
            } else {
                const double bound = divergence_bound_log(consts, cert.d_w, lt, options.variant);
                if (sr.power * v < bound - 1e-9) cert.rate_checks[k] = false;
            }
        }
        const double slope = cert.slopes[k];
        if (std::isfinite(slope) && sr.power > 0) {
            const double expected = cert.d_w / sr.power;
            const bool ok = sr.converging ? -slope >= 0.9 * expected : slope >= 0.9 * expected;
            if (!ok) {
                cert.rate_checks[k] = false;
                failure = "slope " + std::to_string(slope) + " against expected rate " + std::to_string(expected);
            }
        }
        if (!cert.rate_checks[k] && failure.empty()) failure = "bound violated on path " + std::to_string(k + 1);
    }
    if (!failure.empty()) throw Error(ErrorKind::RateViolation, failure);
    return cert;
}

namespace {

// Slopes over the last half and last quarter of the post-entry samples agree within 2%.
bool slope_settled(const TrackedPath& p, double entry, const WitnessLine& line) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& smp : p.samples) {
        if (!(smp.log_t > entry)) continue;
        const double v = p.status == PathStatus::Converging ? std::log(std::abs(smp.s - line.ratio(p.coordinate)))
                                                            : std::log(std::abs(smp.s));
        if (std::isfinite(v)) pts.emplace_back(smp.log_t, v);
    }
    if (pts.size() < 8) return false;
    const std::vector<std::pair<double, double>> half(pts.begin() + pts.size() / 2, pts.end());
    const std::vector<std::pair<double, double>> quarter(pts.begin() + 3 * pts.size() / 4, pts.end());
    const double a = slope_fit(half), b = slope_fit(quarter);
    return std::isfinite(a) && std::isfinite(b) && std::abs(a - b) <= 0.02 * std::max(std::abs(a), std::abs(b));
}

bool enough_observed(const std::vector<TrackedPath>& paths, const WitnessLine& line, const LineConstants& consts) {
    auto copy = paths;
    VertexCertificate cert;
    try {
        cert = classify_paths(copy, line, consts);
    } catch (const Error&) {
        return false;
    }
    for (std::size_t k = 0; k < paths.size(); ++k) {
        const auto& p = paths[k];
        const double entry = path_entry(cert, k);
        std::size_t post = 0;
        for (const auto& smp : p.samples)
            if (smp.log_t > entry) ++post;
        if (post < (p.frozen ? 3u : 8u)) return false;
        if (p.frozen) continue;
        if (!slope_settled(p, entry, line)) return false;
        if (p.samples.back().log_t - entry < 2 * std::numbers::ln2) return false;
    }
    return true;
}

}  // namespace

WitnessAnswer witness_vertex_query(const LineBackend& backend, const WitnessLine& line, const LineConstants& consts,
                                   std::span<const Rational> w, const WitnessQueryConfig& config) {
    if (w.size() != line.n) throw Error(ErrorKind::InvalidArgument, "direction has the wrong dimension");
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<int> coin(-1, 1);
    RationalVector current(w.begin(), w.end());
    for (int attempt = 0;; ++attempt) {
        try {
            std::vector<double> wd;
            for (const auto& x : current) wd.push_back(to_double(x));
            TrackOptions opts;
            opts.t_max = config.t_max;
            if (config.early_stop)
                opts.stop = [&](const std::vector<TrackedPath>& p) { return enough_observed(p, line, consts); };
            WitnessAnswer ans;
            ans.paths = track_paths(backend, line, wd, opts);
            ans.certificate = classify_paths(ans.paths, line, consts);
            ans.certificate.w = wd;
            RateOptions ropts;
            ropts.d_w = attempt == 0 ? config.d_w : std::nullopt;
            Integer l = 1, g = 0;
            for (const auto& x : current) l = lcm(l, boost::multiprecision::denominator(x));
            for (const auto& x : current)
                g = gcd(g, abs(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x))));
            ropts.group_gen = g == 0 ? 1.0 : to_double(Rational(g, l));
            ans.certificate = verify_rates(ans.paths, ans.certificate, consts, line, ropts);
            ans.beta = ans.certificate.beta;
            ans.w = current;
            ans.attempts = attempt + 1;
            return ans;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Indeterminate || attempt >= config.retries) throw;
        }
        current.assign(w.begin(), w.end());
        bool moved = false;
        while (!moved) {
            for (std::size_t i = 0; i < current.size(); ++i) {
                const int r = coin(rng);
                if (r != 0) moved = true;
                current[i] = Rational(w[i]) + Rational(r, 8);
            }
        }
    }
}

WitnessConfig parse_witness_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("witness config: ") + e.what());
    }
    WitnessConfig c;
    try {
        const auto& be = j.at("backend");
        c.backend_type = be.at("type").get<std::string>();
        if (c.backend_type != "slp" && c.backend_type != "sparse")
            throw Error(ErrorKind::Parse, "witness config: backend type must be slp or sparse");
        c.backend_path = be.at("path").get<std::string>();
        if (c.backend_path.is_relative() && !base_dir.empty()) c.backend_path = base_dir / c.backend_path;
        if (j.contains("degree") && !j["degree"].is_null()) c.degree = j["degree"].get<std::size_t>();
        if (j.contains("C") && !j["C"].is_null()) c.C = j["C"].get<double>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("t_max")) c.t_max = j["t_max"].get<double>();
        if (j.contains("line") && !j["line"].is_null()) {
            const auto vec = [](const nlohmann::json& arr) {
                std::vector<Complex> v;
                for (const auto& z : arr) v.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
                return v;
            };
            c.line = std::make_pair(vec(j["line"].at("a")), vec(j["line"].at("b")));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("witness config: ") + e.what());
    }
    return c;
}

std::unique_ptr<LineBackend> load_backend(const WitnessConfig& config) {
    std::ifstream in(config.backend_path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + config.backend_path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    if (config.backend_type == "slp") return std::make_unique<SlpBackend>(parse_slp(ss.str()));
    return std::make_unique<SparseBackend>(parse_sparse(ss.str()));
}

void write_path_csv(std::ostream& os, const std::vector<TrackedPath>& paths) {
    os << "path_id,t,re_s,im_s,residual\n";
    const auto old = os.precision(17);
    for (std::size_t k = 0; k < paths.size(); ++k)
        for (const auto& s : paths[k].samples)
            os << k + 1 << ',' << s.t << ',' << s.s.real() << ',' << s.s.imag() << ',' << s.residual << '\n';
    os.precision(old);
}

}  // namespace newtonpoly
