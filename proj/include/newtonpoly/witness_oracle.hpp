#pragma once

#include "newtonpoly/numeric.hpp"
#include "newtonpoly/scaled_complex.hpp"
#include "newtonpoly/slp.hpp"
#include "newtonpoly/sparse_polynomial.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace newtonpoly {

using Complex = std::complex<double>;

/// Black-box access to f along lines: value and one directional derivative.
class LineBackend {
public:
    virtual ~LineBackend() = default;
    virtual std::size_t num_vars() const = 0;
    virtual std::pair<ScaledComplex, ScaledComplex> evaluate_dir(std::span<const ScaledComplex> x,
                                                                std::span<const ScaledComplex> v) const = 0;
    ScaledComplex evaluate(std::span<const ScaledComplex> x) const;
};

class SlpBackend final : public LineBackend {
public:
    explicit SlpBackend(Slp slp) : slp_(std::move(slp)) {}
    std::size_t num_vars() const override { return slp_.num_inputs(); }
    std::pair<ScaledComplex, ScaledComplex> evaluate_dir(std::span<const ScaledComplex> x,
                                                        std::span<const ScaledComplex> v) const override {
        return slp_.evaluate_dir(x, v);
    }
    const Slp& slp() const { return slp_; }

private:
    Slp slp_;
};

class SparseBackend final : public LineBackend {
public:
    explicit SparseBackend(SparsePolynomial p) : p_(std::move(p)) {}
    std::size_t num_vars() const override { return p_.num_vars(); }
    std::pair<ScaledComplex, ScaledComplex> evaluate_dir(std::span<const ScaledComplex> x,
                                                        std::span<const ScaledComplex> v) const override {
        return p_.evaluate_dir(x, v);
    }
    const SparsePolynomial& polynomial() const { return p_; }

private:
    SparsePolynomial p_;
};

/// l(s) = s*a - b, with the witness points (roots of f on the line) at t = 1.
struct WitnessLine {
    std::size_t n = 0;
    std::vector<Complex> a, b;
    std::size_t degree = 0;
    std::vector<Complex> roots;

    Complex ratio(std::size_t i) const { return b[i] / a[i]; }
};

/// Random line: a_i = (1 + u/5) e^{i theta}, b_i = a_i * rho_i with the ratios
/// rho_i spread around the unit circle. Redraws up to 5 times.
WitnessLine make_line(const LineBackend& backend, std::uint64_t seed, std::optional<std::size_t> degree = {});
/// Fixed line; throws GenericityFailure when some a_i = 0 or two ratios are within 1e-3.
WitnessLine make_line(const LineBackend& backend, std::vector<Complex> a, std::vector<Complex> b,
                      std::optional<std::size_t> degree = {});

/// Roots of s -> f(l(s)). The degree is line.degree when nonzero, otherwise
/// discovered by doubling the number of interpolation nodes.
std::vector<Complex> initial_roots(const LineBackend& backend, const WitnessLine& line);

/// Scale-free Newton residual |g/g_s| / (1 + |s|).
double line_residual(const LineBackend& backend, const WitnessLine& line, std::span<const double> w, double log_t,
                     Complex s);

enum class Eq17Variant { Proof, Statement };

struct LineConstants {
    double a_min = 1, a_max = 1, b_min = 1, b_max = 1;
    std::vector<double> gamma;        // min{a_min, |rho_i - rho_j|/2}
    std::vector<double> Gamma;        // max{2/a_max, |rho_i - rho_j|}
    std::vector<double> gamma_table;  // gamma_i = Gamma_i, as in the worked example
    double C = 10;
    double num_terms = 1;  // |A|
    std::size_t degree = 1;
};

/// |A| defaults to binom(n + d, d).
LineConstants line_constants(const WitnessLine& line, double C, std::optional<double> num_terms = {});

/// log of t^{-d_w} C |A| (a_max/a_min (1 + Gamma_i/gamma_i))^d
double convergence_bound_log(const LineConstants& c, std::size_t i, double d_w, double log_t,
                             bool table_gamma = false);
/// log of t^{d_w} / (C |A|) * (a_min / (2 (a_max + b_max)))^d, or a_max + a_min for the statement variant
double divergence_bound_log(const LineConstants& c, double d_w, double log_t,
                            Eq17Variant variant = Eq17Variant::Proof);

struct PathSample {
    double log_t = 0;
    double t = 1;
    Complex s;
    double residual = 0;
};

enum class PathStatus { Undecided, Converging, Diverging };

struct TrackedPath {
    std::vector<PathSample> samples;
    PathStatus status = PathStatus::Undecided;
    std::size_t coordinate = 0;  // for Converging
    bool frozen = false;         // stopped at the precision floor or the overflow guard
};

struct TrackOptions {
    double t_max = 1e8;
    std::vector<double> sample_at;  // extra t values hit exactly
    /// Called after every doubling of t; returning true ends tracking early.
    std::function<bool(const std::vector<TrackedPath>&)> stop;
};

std::vector<TrackedPath> track_paths(const LineBackend& backend, const WitnessLine& line, std::span<const double> w,
                                     const TrackOptions& options = {});

struct VertexCertificate {
    ExponentVector beta;
    std::vector<double> w;
    double t_entry = 1;
    double log_t_entry = 0;               // latest entry over the paths
    std::vector<double> path_log_t_entry;  // per path: first sample after which its region stays fixed
    std::size_t diverging = 0;
    double d_w = 0;
    bool d_w_fitted = false;
    std::vector<bool> rate_checks;
    std::vector<double> slopes;  // log-log slope of |s - rho_i| or |s|
    std::size_t bound_samples = 0;
};

/// Sets paths[k].status; throws Indeterminate or AmbiguousCluster.
VertexCertificate classify_paths(std::vector<TrackedPath>& paths, const WitnessLine& line, const LineConstants& consts);

struct RateOptions {
    std::optional<double> d_w;   // exact gap; fitted from the slopes when absent
    double group_gen = 1;        // value-group generator of w, for the fit
    bool table_gamma = false;
    Eq17Variant variant = Eq17Variant::Proof;
};

/// Throws RateViolation when a bound or slope check fails, Indeterminate when
/// some path has fewer than three samples past its own entry time.
VertexCertificate verify_rates(const std::vector<TrackedPath>& paths, VertexCertificate cert,
                               const LineConstants& consts, const WitnessLine& line, const RateOptions& options);

struct WitnessQueryConfig {
    double t_max = 1e8;
    std::optional<double> d_w;
    bool early_stop = true;
    int retries = 3;
    std::uint64_t seed = 0;
};

struct WitnessAnswer {
    ExponentVector beta;
    VertexCertificate certificate;
    std::vector<TrackedPath> paths;
    RationalVector w;  // direction actually certified
    int attempts = 1;
};

/// track, classify, verify; on Indeterminate retries with w + r/8, r in {-1,0,1}^n.
WitnessAnswer witness_vertex_query(const LineBackend& backend, const WitnessLine& line, const LineConstants& consts,
                                   std::span<const Rational> w, const WitnessQueryConfig& config = {});

struct WitnessConfig {
    std::string backend_type;  // "slp" or "sparse"
    std::filesystem::path backend_path;
    std::optional<std::size_t> degree;
    std::optional<double> C;
    std::uint64_t seed = 0;
    double t_max = 1e8;
    std::optional<std::pair<std::vector<Complex>, std::vector<Complex>>> line;
};

/// Relative backend paths resolve against base_dir.
WitnessConfig parse_witness_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
std::unique_ptr<LineBackend> load_backend(const WitnessConfig& config);

void write_path_csv(std::ostream& os, const std::vector<TrackedPath>& paths);

}  // namespace newtonpoly
