#pragma once

#include "newtonpoly/numeric.hpp"
#include "newtonpoly/polytope.hpp"
#include "newtonpoly/slp.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace newtonpoly {

/// delta caps log|c_alpha|, lambda caps log(|c_alpha|/|c_beta|), superset B contains the support.
struct EvalBounds {
    double delta = 1.0;
    double lambda = 1.0;
    std::vector<ExponentVector> superset;

    /// Throws InvalidArgument unless delta, lambda >= 1 and B is nonempty and duplicate-free.
    void validate() const;
};

struct DirectionGap {
    std::vector<double> w;
    double d_w = 0.0;
    std::optional<Rational> exact;  // set when w was rational
};

/// Minimum gap between distinct values w.beta over B. Throws NotGeneric when two
/// values coincide (exactly for rational w, within 1e-12 for floating w).
DirectionGap min_gap(std::span<const ExponentVector> b, std::span<const double> w);
DirectionGap min_gap(std::span<const ExponentVector> b, std::span<const Rational> w);

/// max{2 lambda, 2(delta + 1/e), lambda + log|B| + 1} / d_w
double threshold_log_t(const EvalBounds& bounds, const DirectionGap& gap);
double threshold_t(const EvalBounds& bounds, const DirectionGap& gap);

struct VertexAnswer {
    ExponentVector beta;
    double ratio = 0.0;  // log|f(t^w . x)| / log t
    double log_t = 0.0;
    double d_w = 0.0;
    std::vector<std::complex<double>> x;  // evaluation point actually used
};

/// Vertex of N(f) exposed by w: the unique beta in B with |w.beta - ratio| < d_w/2.
/// Evaluates at x = (1,...,1) first, then at up to two random unit-modulus points.
/// Throws InvalidArgument when log t is not above the threshold.
VertexAnswer vertex_query(const Slp& f, const EvalBounds& bounds, std::span<const double> w, double t,
                          std::uint64_t seed = 0);
VertexAnswer vertex_query_log(const Slp& f, const EvalBounds& bounds, std::span<const double> w, double log_t,
                              std::uint64_t seed = 0);

struct SupportEstimate {
    RationalVector w;
    Rational group_gen;
    std::vector<std::pair<double, double>> samples;  // (tau, log|f(e^{tau w}.x)| / tau)
    std::vector<std::pair<double, double>> slopes;   // (tau, difference quotient of log|f|)
    std::optional<Rational> h_value;
    std::vector<std::complex<double>> x;
};

/// Generator of the value group {w.beta : beta in Z^n}.
Rational value_group_generator(std::span<const Rational> w);

/// Geometric schedule tau_k = tau0 * ratio^k, truncated at `count` points and
/// where tau * max|w_i| would exceed 1e9.
std::vector<double> default_tau_schedule(std::span<const Rational> w, double tau0 = 4.0, double ratio = 1.5,
                                         std::size_t count = 200);

/// Throws NoConvergence (or EvaluationZero) when no multiple of the generator is
/// locked in over the schedule.
SupportEstimate support_estimate(const Slp& f, std::span<const Rational> w, std::span<const std::complex<double>> x,
                                 std::span<const double> tau_schedule, std::optional<double> tol = {});

/// Larger of support_estimate at two random unit-modulus points (up to four
/// draws when some fail to converge).
SupportEstimate support_value(const Slp& f, std::span<const Rational> w, std::uint64_t seed = 0);

struct BoundingResult {
    HalfspaceSystem system;
    std::vector<SupportEstimate> estimates;
    LatticePolytope polytope;  // integer hull of the system
    std::vector<LatticePoint> lattice_points;
};

/// The polytope {x >= 0, w.x <= h(w) for each direction}. Throws Unbounded
/// before any evaluation when the directions cannot bound it.
BoundingResult bounding_polytope(const Slp& f, std::size_t n, const std::vector<RationalVector>& directions,
                                 std::uint64_t seed = 0);

/// e_1, ..., e_n and (1, ..., 1).
std::vector<RationalVector> default_bounding_directions(std::size_t n);

struct AdaptiveAnswer {
    ExponentVector beta;
    SupportEstimate estimate;
};

/// h(w) by support_value, then the unique beta in B with w.beta = h(w).
/// Throws NoUniqueCandidate when zero or several elements of B attain it.
AdaptiveAnswer adaptive_vertex_query(const Slp& f, std::span<const ExponentVector> superset,
                                     std::span<const Rational> w, std::uint64_t seed = 0);

/// Parses a direction: comma- or space-separated entries `p/q` or decimals.
RationalVector parse_direction(std::string_view text);
/// One direction per nonblank line; `#` comments.
std::vector<RationalVector> parse_direction_file(std::string_view text);

std::vector<double> to_double_vector(std::span<const Rational> w);

}  // namespace newtonpoly
