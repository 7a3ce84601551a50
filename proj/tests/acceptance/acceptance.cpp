// Acceptance run: one line per criterion, "criterion N: PASS|FAIL ...".
// Usage: acceptance [N ...]   (no arguments runs all nine)

#include "../common/brute_force_hull.hpp"

#include "newtonpoly/errors.hpp"
#include "newtonpoly/eval_oracle.hpp"
#include "newtonpoly/polytope.hpp"
#include "newtonpoly/reconstruct.hpp"
#include "newtonpoly/slp.hpp"
#include "newtonpoly/sparse_polynomial.hpp"
#include "newtonpoly/witness_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace newtonpoly;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(NEWTONPOLY_FIXTURES) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---- certificate audit (shared by 2, 3, 7 and checked in 9) ----

// Everything needed to recheck one certified witness run.
struct AuditItem {
    std::string label;
    WitnessLine line;
    double C = 0;
    double num_terms = 0;
    VertexCertificate cert;
    std::vector<TrackedPath> paths;
};

struct AuditResult {
    std::size_t runs = 0, samples = 0, violations = 0;
    std::string first;
};

// Rechecks the convergence and divergence bounds (proof-variant constants) from the
// line data alone, at every sample strictly past t_entry.
AuditResult audit(const std::vector<AuditItem>& items) {
    AuditResult r;
    for (const auto& it : items) {
        ++r.runs;
        const auto& L = it.line;
        double a_min = 1, a_max = 1, b_max = 1;
        for (std::size_t i = 0; i < L.n; ++i) {
            a_min = std::min(a_min, std::abs(L.a[i]));
            a_max = std::max(a_max, std::abs(L.a[i]));
            b_max = std::max(b_max, std::abs(L.b[i]));
        }
        const double d = double(L.degree);
        std::int64_t beta_total = 0;
        for (auto b : it.cert.beta) beta_total += b;
        for (std::size_t k = 0; k < it.paths.size(); ++k) {
            const auto& p = it.paths[k];
            // The bounds hold past each path's own entry time, which is never later than the global one.
            const double entry =
                k < it.cert.path_log_t_entry.size() ? it.cert.path_log_t_entry[k] : it.cert.log_t_entry;
            for (const auto& smp : p.samples) {
                if (!(smp.log_t > entry)) continue;
                ++r.samples;
                bool ok = true;
                double lhs = 0, rhs = 0;
                if (p.status == PathStatus::Converging) {
                    const std::size_t i = p.coordinate;
                    const Complex rho_i = L.b[i] / L.a[i];
                    double g = a_min, G = 2 / a_max;
                    for (std::size_t j = 0; j < L.n; ++j) {
                        if (j == i) continue;
                        const double dist = std::abs(rho_i - L.b[j] / L.a[j]);
                        g = std::min(g, dist / 2);
                        G = std::max(G, dist);
                    }
                    const double dist = std::abs(smp.s - rho_i);
                    if (dist == 0) continue;
                    lhs = double(it.cert.beta[i]) * std::log(dist);
                    rhs = -it.cert.d_w * smp.log_t + std::log(it.C * it.num_terms) +
                          d * std::log(a_max / a_min * (1 + G / g));
                    ok = lhs <= rhs + 1e-9;
                } else if (p.status == PathStatus::Diverging) {
                    lhs = (d - double(beta_total)) * std::log(std::abs(smp.s));
                    rhs = it.cert.d_w * smp.log_t - std::log(it.C * it.num_terms) +
                          d * std::log(a_min / (2 * (a_max + b_max)));
                    ok = lhs >= rhs - 1e-9;
                } else {
                    ok = false;
                }
                if (!ok) {
                    ++r.violations;
                    if (r.first.empty())
                        r.first = it.label + " at t=" + fmt("%.3g", smp.t) + ": " + fmt("%.4g", lhs) + " vs " +
                                  fmt("%.4g", rhs);
                }
            }
        }
    }
    return r;
}

// ---- random polynomials ----

struct RandomPoly {
    SparsePolynomial p;
    double cmax = 0, cmin = 0;
};

// n <= 4, total degree <= 6, at most 10 terms, integer coefficients in [-9, 9].
// with_constant keeps a nonzero constant term so the hypersurface has no monomial factor.
RandomPoly random_poly(std::mt19937_64& rng, bool with_constant) {
    std::uniform_int_distribution<std::size_t> nvar(1, 4), nterms(2, 10);
    std::uniform_int_distribution<int> deg(1, 6), coef(1, 9), sign(0, 1);
    for (;;) {
        const std::size_t n = nvar(rng);
        const int max_deg = deg(rng);
        const std::size_t k = nterms(rng);
        std::map<ExponentVector, int> terms;
        if (with_constant) terms[ExponentVector(n, 0)] = 1;
        std::uniform_int_distribution<int> tdeg(0, max_deg);
        std::uniform_int_distribution<std::size_t> var(0, n - 1);
        for (int guard = 0; terms.size() < k && guard < 200; ++guard) {
            ExponentVector e(n, 0);
            const int t = tdeg(rng);
            for (int j = 0; j < t; ++j) ++e[var(rng)];
            terms[e] = 1;
        }
        std::vector<Term> out;
        RandomPoly r;
        r.cmin = 1e300;
        for (const auto& [e, unused] : terms) {
            const int c = coef(rng) * (sign(rng) ? 1 : -1);
            r.cmax = std::max(r.cmax, double(std::abs(c)));
            r.cmin = std::min(r.cmin, double(std::abs(c)));
            out.push_back({Coefficient(GaussianRational{Rational(c), Rational(0)}), e});
        }
        r.p = SparsePolynomial(n, std::move(out));
        if (r.p.total_degree() >= 1) return r;
    }
}

EvalBounds bounds_for(const RandomPoly& r, std::vector<ExponentVector> superset) {
    return {std::max(1.0, std::log(r.cmax)), std::max(1.0, std::log(r.cmax / r.cmin)), std::move(superset)};
}

// All exponents of total degree <= d in n variables.
std::vector<ExponentVector> simplex_points(std::size_t n, int d) {
    std::vector<ExponentVector> out;
    ExponentVector e(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == n) {
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(0, d);
    return out;
}

// ---- the worked witness example ----

struct Example {
    std::shared_ptr<SparseBackend> backend;
    WitnessLine line;
    LineConstants consts;
};

Example worked_example() {
    Example ex;
    ex.backend = std::make_shared<SparseBackend>(parse_sparse(fixture("quad.poly")));
    ex.line = make_line(*ex.backend, {{2, 1}, {3, -2}}, {{-1, -1}, {2, -3}});
    ex.consts = line_constants(ex.line, 5, 4);
    return ex;
}

const std::vector<double> kTableT{1e2, 1e4, 1e6, 1e8};

// Full tracking to 1e8 with the table rows as exact checkpoints; returns the
// squared quantity per path at each row.
struct TableRun {
    std::vector<std::vector<double>> rows;  // rows[k][path]
    double closed_form_error = 0;           // largest relative gap to the quadratic formula
    AuditItem item;
    std::string error;
};

TableRun table_run(const Example& ex, std::vector<double> w, double stated_d_w, bool converging) {
    TableRun r;
    TrackOptions opt;
    opt.t_max = 1e8;
    opt.sample_at = kTableT;
    auto paths = track_paths(*ex.backend, ex.line, w, opt);
    for (double t : kTableT) {
        std::vector<double> row;
        for (const auto& p : paths)
            for (const auto& smp : p.samples)
                if (std::abs(smp.log_t - std::log(t)) < 1e-9) {
                    const Complex s = smp.s;
                    const double v = converging ? std::abs(s - ex.line.ratio(0)) : std::abs(s);
                    row.push_back(v * v);
                    break;
                }
        std::sort(row.rbegin(), row.rend());
        // Closed form: f(x, y) = x^2 + 3x + 2y - 5 at x = t^w1 (s a1 - b1), y = t^w2 (s a2 - b2) is a quadratic in s.
        const Complex a1 = ex.line.a[0], a2 = ex.line.a[1], b1 = ex.line.b[0], b2 = ex.line.b[1];
        const double u = std::pow(t, w[0]), v = std::pow(t, w[1]);
        const Complex c2 = u * u * a1 * a1, c1 = -2.0 * u * u * a1 * b1 + 3.0 * u * a1 + 2.0 * v * a2,
                      c0 = u * u * b1 * b1 - 3.0 * u * b1 - 2.0 * v * b2 - 5.0;
        const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
        std::vector<double> exact;
        for (Complex root : {(-c1 + disc) / (2.0 * c2), (-c1 - disc) / (2.0 * c2)}) {
            const double q = converging ? std::abs(root - ex.line.ratio(0)) : std::abs(root);
            exact.push_back(q * q);
        }
        std::sort(exact.rbegin(), exact.rend());
        for (std::size_t i = 0; i < std::min(row.size(), exact.size()); ++i)
            r.closed_form_error = std::max(r.closed_form_error, std::abs(row[i] / exact[i] - 1));
        r.rows.push_back(row);
    }
    try {
        auto cert = classify_paths(paths, ex.line, ex.consts);
        RateOptions ro;
        ro.d_w = stated_d_w;
        cert = verify_rates(paths, cert, ex.consts, ex.line, ro);
        r.item = {converging ? "table w=(1,1)" : "table w=(-1,-1)", ex.line, 5, 4, cert, paths};
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

std::string row_text(const std::vector<double>& row) {
    std::string s;
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "/" : "") + fmt("%.3g", row[i]);
    return s;
}

// Matches a computed row against reference values (both sorted descending).
bool row_matches(const std::vector<double>& got, std::vector<double> ref) {
    std::sort(ref.rbegin(), ref.rend());
    if (got.size() != ref.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (!within(got[i], ref[i], 0.10)) return false;
    return true;
}

std::vector<AuditItem> g_table_audit;

// ---- criteria ----

Outcome criterion1() {
    const Slp f = sparse_to_slp(parse_sparse(fixture("disc.poly")));
    const EvalBounds b{2.0, 2.0, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};
    const std::vector<double> w{-1.2, 0.4, 3.7}, mw{1.2, -0.4, -3.7};
    const auto start = std::chrono::steady_clock::now();
    const auto up = vertex_query(f, b, w, 45.0);
    const auto down = vertex_query(f, b, mw, 45.0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = std::abs(up.ratio - 2.864) <= 0.005 && std::abs(-down.ratio - 0.8016) <= 0.005 &&
                    up.beta == ExponentVector{1, 0, 1} && down.beta == ExponentVector{0, 2, 0} && secs < 1.0;
    return {ok, "ratio " + fmt("%.4f", up.ratio) + " (2.864), -ratio " + fmt("%.4f", -down.ratio) +
                    " (0.8016), vertices " + (up.beta == ExponentVector{1, 0, 1} ? "(1,0,1)" : "wrong") + " " +
                    (down.beta == ExponentVector{0, 2, 0} ? "(0,2,0)" : "wrong") + ", " + fmt("%.3f", secs) + " s"};
}

Outcome criterion2() {
    const auto start = std::chrono::steady_clock::now();
    const auto ex = worked_example();
    const auto run = table_run(ex, {1, 1}, 1, true);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::vector<std::vector<double>> reference{{0.26, 0.19}, {2.2e-4, 2.2e-4}, {2.2e-6, 2.2e-6}, {2.2e-8, 2.2e-8}};
    const std::vector<double> table_bound{10.4, 0.104, 1.04e-3, 1.04e-5};
    bool values = true, bounds = true;
    std::string detail, bad_rows;
    for (std::size_t k = 0; k < kTableT.size(); ++k) {
        const bool vm = row_matches(run.rows[k], reference[k]);
        values = values && vm;
        if (!vm) bad_rows += " t=" + fmt("%.0e", kTableT[k]) + " got " + row_text(run.rows[k]) + " vs " + row_text(reference[k]);
        const double bound = std::exp(convergence_bound_log(ex.consts, 0, 1, std::log(kTableT[k]), true));
        bounds = bounds && within(bound, 1040 / kTableT[k], 1e-9) && within(bound, table_bound[k], 5e-3);
    }
    if (run.error.empty()) g_table_audit.push_back(run.item);
    const bool ok = values && bounds && run.error.empty() && secs < 5.0;
    detail = std::string("values ") + (values ? "match" : "mismatch:" + bad_rows) + "; tracked vs closed form " +
             fmt("%.1e", run.closed_form_error) + "; bound column 1040/t " +
             (bounds ? "exact" : "wrong") + (run.error.empty() ? "" : "; certificate: " + run.error) + ", " +
             fmt("%.2f", secs) + " s";
    return {ok, detail};
}

Outcome criterion3() {
    const auto start = std::chrono::steady_clock::now();
    const auto ex = worked_example();
    const auto run = table_run(ex, {-1, -1}, 2, false);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::vector<std::vector<double>> reference{{1.17e3, 1.13e3}, {1.15e7, 1.15e7}, {1.15e11, 1.15e11}, {1.15e15, 1.15e15}};
    const std::vector<double> table_bound{2.40, 2.40e4, 2.40e8, 2.40e12};
    bool values = true, bounds = true;
    std::string bad_rows;
    for (std::size_t k = 0; k < kTableT.size(); ++k) {
        const bool vm = row_matches(run.rows[k], reference[k]);
        values = values && vm;
        if (!vm) bad_rows += " t=" + fmt("%.0e", kTableT[k]) + " got " + row_text(run.rows[k]) + " vs " + row_text(reference[k]);
        const double t = kTableT[k];
        const double bound = std::exp(divergence_bound_log(ex.consts, 2, std::log(t), Eq17Variant::Proof));
        bounds = bounds && within(bound, t * t / 4160, 1e-9) && within(bound, table_bound[k], 5e-3);
    }
    // |s1 s2| = t^2 holds for the exact roots (product of roots of the restricted quadratic).
    double vieta = 0;
    for (std::size_t k = 0; k < kTableT.size(); ++k)
        if (run.rows[k].size() == 2)
            vieta = std::max(vieta, std::abs(std::sqrt(run.rows[k][0] * run.rows[k][1]) / (kTableT[k] * kTableT[k]) - 1));
    if (run.error.empty()) g_table_audit.push_back(run.item);
    const bool ok = values && bounds && run.error.empty() && secs < 5.0;
    return {ok, std::string("values ") + (values ? "match" : "mismatch:" + bad_rows) + "; bound column t^2/4160 " +
                    (bounds ? "exact" : "wrong") + "; tracked vs closed form " + fmt("%.1e", run.closed_form_error) +
                    "; computed |s1 s2|/t^2 - 1 <= " + fmt("%.1e", vieta) +
                    (run.error.empty() ? "" : "; certificate: " + run.error) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome criterion4() {
    const auto start = std::chrono::steady_clock::now();
    AdaptiveEvalOracle oracle(sparse_to_slp(parse_sparse(fixture("f1.poly"))), 6, 0);
    const auto r = reconstruct(oracle);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::vector<LatticePoint> table{
        {0, 0, 0, 1, 1, 1}, {0, 0, 1, 0, 0, 2}, {0, 1, 0, 0, 2, 0}, {1, 0, 0, 2, 0, 0}, {1, 1, 1, 0, 0, 0}};
    const std::vector<LatticePoint> bip{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    const bool verts = r.polytope.vertices() == table;
    const bool facets = r.polytope.facets().size() == 6;
    const bool iso = affinely_isomorphic(r.polytope, convex_hull(bip)).has_value();
    return {verts && facets && iso && r.complete && secs < 60,
            std::string("vertices ") + (verts ? "= reference" : "differ") + ", " +
                std::to_string(r.polytope.facets().size()) + " facets, bipyramid isomorphic " + (iso ? "yes" : "no") +
                ", " + std::to_string(r.queries) + " queries, " + fmt("%.2f", secs) + " s"};
}

Outcome criterion5() {
    const auto start = std::chrono::steady_clock::now();
    AdaptiveEvalOracle oracle(sparse_to_slp(parse_sparse(fixture("f5.poly"))), 6, 0);
    ReconstructConfig cfg;
    cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
    const auto r = reconstruct(oracle, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::vector<LatticePoint> delta{
        {0, 0, 0, 1, 1, 1}, {0, 0, 1, 0, 0, 2}, {0, 1, 0, 0, 2, 0}, {1, 0, 0, 2, 0, 0}, {1, 1, 1, 0, 0, 0}};
    const auto four = dilate(convex_hull(delta), 4);
    const std::size_t count = lattice_points(four).size();
    const bool eq = r.polytope == four;
    return {eq && count == 65 && r.complete && secs < 120,
            std::string("reconstruct(f5) ") + (eq ? "= 4 Delta" : "!= 4 Delta") + ", " + std::to_string(count) +
                " lattice points, " + fmt("%.1f", secs) + " s"};
}

Outcome criterion6() {
    std::mt19937_64 rng(6);
    std::size_t argmax_ok = 0, ratio_ok = 0, trials = 50;
    std::string first;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto rp = random_poly(rng, false);
        const auto support = rp.p.support();
        const std::size_t n = rp.p.num_vars();
        // Superset: the support plus a few extra lattice points of the same degree range.
        auto superset = support;
        const auto pool = simplex_points(n, int(rp.p.total_degree()));
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int k = 0; k < 5; ++k) {
            const auto& e = pool[pick(rng)];
            if (std::find(superset.begin(), superset.end(), e) == superset.end()) superset.push_back(e);
        }
        const auto b = bounds_for(rp, superset);
        std::uniform_int_distribution<int> wd(-10, 10);
        RationalVector w(n);
        DirectionGap gap;
        for (;;) {
            for (auto& x : w) x = wd(rng);
            try {
                gap = min_gap(b.superset, std::span<const Rational>(w));
                break;
            } catch (const Error&) {
            }
        }
        const auto wd_vec = to_double_vector(w);
        // Independent argmax over the true support.
        ExponentVector best;
        double best_val = -1e300;
        for (const auto& a : support) {
            double v = 0;
            for (std::size_t i = 0; i < n; ++i) v += wd_vec[i] * double(a[i]);
            if (v > best_val) best_val = v, best = a;
        }
        const double log_t = std::log(2.0) + threshold_log_t(b, gap);
        try {
            const auto ans = vertex_query_log(sparse_to_slp(rp.p), b, wd_vec, log_t, trial);
            if (ans.beta == best) ++argmax_ok;
            double wb = 0;
            for (std::size_t i = 0; i < n; ++i) wb += wd_vec[i] * double(ans.beta[i]);
            if (std::abs(ans.ratio - wb) < gap.d_w / 2) ++ratio_ok;
            else if (first.empty()) first = "trial " + std::to_string(trial) + " ratio off";
        } catch (const Error& e) {
            if (first.empty()) first = "trial " + std::to_string(trial) + ": " + e.what();
        }
    }
    return {argmax_ok == trials && ratio_ok == trials,
            std::to_string(argmax_ok) + "/" + std::to_string(trials) + " argmax, " + std::to_string(ratio_ok) + "/" +
                std::to_string(trials) + " ratio within d_w/2" + (first.empty() ? "" : "; " + first)};
}

struct EquivalenceRun {
    std::size_t trials = 0, certified = 0, agree = 0, line_failures = 0, incomplete = 0;
    std::size_t queries = 0, indeterminate = 0;
    double seconds = 0;
    std::string first;
    std::vector<AuditItem> audit;
};

const EquivalenceRun& equivalence_run() {
    static std::optional<EquivalenceRun> cached;
    if (cached) return *cached;
    EquivalenceRun r;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7);
    r.trials = 50;
    for (std::size_t trial = 0; trial < r.trials; ++trial) {
        const auto rp = random_poly(rng, true);
        const std::size_t n = rp.p.num_vars();
        const int deg = int(rp.p.total_degree());
        const auto expected = convex_hull(rp.p.support());
        ReconstructConfig cfg;
        cfg.seed = trial;

        EvalOracle eval(sparse_to_slp(rp.p), bounds_for(rp, simplex_points(n, deg)), trial);
        std::optional<LatticePolytope> from_eval;
        try {
            const auto er = reconstruct(eval, cfg);
            if (er.complete) from_eval = er.polytope;
        } catch (const Error& e) {
            if (r.first.empty()) r.first = "trial " + std::to_string(trial) + " eval: " + e.what();
        }

        auto backend = std::make_shared<SparseBackend>(rp.p);
        WitnessLine line;
        try {
            line = make_line(*backend, 1000 + trial, std::size_t(deg));
        } catch (const Error& e) {
            ++r.line_failures;
            if (r.first.empty()) r.first = "trial " + std::to_string(trial) + " line: " + e.what();
            continue;
        }
        const double C = rp.cmax / rp.cmin;
        const double terms = double(rp.p.terms().size());
        WitnessOracle witness(backend, line, line_constants(line, C, terms));
        std::optional<LatticePolytope> from_witness;
        try {
            const auto wr = reconstruct(witness, cfg);
            if (wr.complete) from_witness = wr.polytope;
            else ++r.incomplete;
        } catch (const Error& e) {
            ++r.incomplete;
            if (r.first.empty()) r.first = "trial " + std::to_string(trial) + " witness: " + e.what();
        }
        r.queries += witness.queries();
        r.indeterminate += witness.indeterminate();
        for (const auto& a : witness.answers())
            r.audit.push_back({"equivalence trial " + std::to_string(trial), line, C, terms, a.certificate, a.paths});
        if (from_witness) {
            ++r.certified;
            if (from_eval && *from_eval == expected && *from_witness == expected) ++r.agree;
            else if (r.first.empty()) r.first = "trial " + std::to_string(trial) + " disagrees";
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    cached = std::move(r);
    return *cached;
}

Outcome criterion7() {
    const auto& r = equivalence_run();
    const double rate = r.queries ? double(r.indeterminate) / double(r.queries) : 0;
    const bool ok = r.certified > 0 && r.agree == r.certified && rate < 0.20;
    return {ok, std::to_string(r.agree) + "/" + std::to_string(r.certified) + " certified trials agree (" +
                    std::to_string(r.trials) + " trials, " + std::to_string(r.line_failures) + " line failures, " +
                    std::to_string(r.incomplete) + " incomplete); witness indeterminate " +
                    std::to_string(r.indeterminate) + "/" + std::to_string(r.queries) + " = " +
                    fmt("%.1f", 100 * rate) + "%, " + fmt("%.1f", r.seconds) + " s" +
                    (r.first.empty() ? "" : "; " + r.first)};
}

Outcome criterion8() {
    std::mt19937_64 rng(8);
    std::size_t agree = 0, roundtrip = 0, trials = 100, constructed = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::uniform_int_distribution<std::size_t> nd(1, 4), cd(1, 20);
        std::uniform_int_distribution<int> coord(-4, 4);
        const std::size_t n = nd(rng), count = cd(rng);
        std::vector<LatticePoint> pts(count, LatticePoint(n));
        // Every fourth set lies in a hyperplane through a random point.
        const bool flat = trial % 4 == 3 && n > 1;
        for (auto& p : pts) {
            for (auto& x : p) x = coord(rng);
            if (flat) p[n - 1] = p[0];
        }
        const auto p = convex_hull(pts);
        const auto ref = brute::hull(pts);
        std::set<std::set<LatticePoint>> ours;
        for (const auto& f : p.facets()) {
            std::set<LatticePoint> on;
            for (const auto& x : ref.points) {
                Integer s = 0;
                for (std::size_t i = 0; i < n; ++i) s += f.normal[i] * x[i];
                if (s == f.offset) on.insert(x);
            }
            ours.insert(on);
        }
        const std::set<LatticePoint> verts(p.vertices().begin(), p.vertices().end());
        if (std::size_t(p.dim()) == ref.dim && verts == ref.vertices && (ref.dim == 0 || ours == ref.facets)) ++agree;
        ++constructed;
        if (convex_hull(p.vertices()) == p) ++roundtrip;
    }
    // Round trip on the other polytopes built in this run.
    for (const char* name : {"delta.json", "delta4.json", "bipyramid.json"}) {
        ++constructed;
        const auto q = polytope_from_json(nlohmann::json::parse(fixture(name)));
        if (convex_hull(q.vertices()) == q && polytope_from_json(to_json(q)) == q) ++roundtrip;
    }
    return {agree == trials && roundtrip == constructed,
            std::to_string(agree) + "/" + std::to_string(trials) + " match brute force, round trip " +
                std::to_string(roundtrip) + "/" + std::to_string(constructed)};
}

Outcome criterion9() {
    if (g_table_audit.size() < 2) {
        g_table_audit.clear();
        criterion2();
        criterion3();
    }
    auto items = g_table_audit;
    const auto& eq = equivalence_run();
    items.insert(items.end(), eq.audit.begin(), eq.audit.end());
    const auto a = audit(items);
    const bool ok = a.violations == 0 && g_table_audit.size() == 2 && a.runs > 2;
    return {ok, std::to_string(a.runs) + " certified runs (" + std::to_string(g_table_audit.size()) +
                    " table runs), " + std::to_string(a.samples) + " samples past t_entry, " +
                    std::to_string(a.violations) + " violations" + (a.first.empty() ? "" : "; first: " + a.first)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= 9; ++i) which.push_back(i);
    bool all = true;
    for (int k : which) {
        if (k < 1 || k > 9) {
            std::cerr << "unknown criterion " << k << "\n";
            return 2;
        }
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
