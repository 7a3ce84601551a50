#include "newtonpoly/reconstruct.hpp"

#include "newtonpoly/errors.hpp"
#include "newtonpoly/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

namespace newtonpoly {

namespace {

// Errors that mean "this direction did not certify", as opposed to bad input.
bool is_indeterminate(ErrorKind k) {
    switch (k) {
    case ErrorKind::NotGeneric:
    case ErrorKind::NoUniqueCandidate:
    case ErrorKind::EvaluationZero:
    case ErrorKind::NoConvergence:
    case ErrorKind::Indeterminate:
    case ErrorKind::RateViolation:
    case ErrorKind::PathCrossing:
    case ErrorKind::TrackingFailure:
    case ErrorKind::AmbiguousCluster:
        return true;
    default:
        return false;
    }
}

template <class Fn>
std::optional<ExponentVector> guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (is_indeterminate(e.kind())) return std::nullopt;
        throw;
    }
}

std::int64_t max_degree(const std::vector<LatticePoint>& pts) {
    std::int64_t d = 0;
    for (const auto& p : pts) d = std::max(d, degree(p));
    return d;
}

bool has_tie(const std::vector<LatticePoint>& pts, const IntVector& w) {
    std::vector<std::int64_t> values;
    values.reserve(pts.size());
    for (const auto& p : pts) {
        std::int64_t v = 0;
        for (std::size_t i = 0; i < w.size(); ++i) v += w[i] * p[i];
        values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) != values.end();
}

Integer dot_int(const IntegerVector& a, std::span<const std::int64_t> b) { return dot(a, b); }

}  // namespace

std::size_t OracleAdapter::queries() const {
    std::lock_guard lock(mutex_);
    return queries_;
}

std::size_t OracleAdapter::indeterminate() const {
    std::lock_guard lock(mutex_);
    return indeterminate_;
}

std::optional<ExponentVector> OracleAdapter::cached(std::span<const Rational> w,
                                                    const std::function<std::optional<ExponentVector>()>& compute) {
    RationalVector key(w.begin(), w.end());
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    auto result = compute();
    std::lock_guard lock(mutex_);
    ++queries_;
    if (!result) ++indeterminate_;
    memo_.emplace(std::move(key), result);
    return result;
}

EvalOracle::EvalOracle(Slp f, EvalBounds bounds, std::uint64_t seed)
    : f_(std::move(f)), bounds_(std::move(bounds)), seed_(seed) {
    bounds_.validate();
    degree_bound_ = max_degree(bounds_.superset);
}

std::optional<ExponentVector> EvalOracle::query(std::span<const Rational> w) {
    return cached(w, [&]() -> std::optional<ExponentVector> {
        return guarded([&] {
            if (bounds_.superset.size() == 1)
                return std::optional(vertex_query_log(f_, bounds_, to_double_vector(w), 1.0, seed_).beta);
            const auto gap = min_gap(bounds_.superset, w);
            const double log_t = std::log(2.0) + threshold_log_t(bounds_, gap);
            return std::optional(vertex_query_log(f_, bounds_, gap.w, log_t, seed_).beta);
        });
    });
}

std::optional<Rational> EvalOracle::support(std::span<const Rational> w) {
    try {
        return support_value(f_, w, seed_).h_value;
    } catch (const Error& e) {
        if (is_indeterminate(e.kind())) return std::nullopt;
        throw;
    }
}

AdaptiveEvalOracle::AdaptiveEvalOracle(Slp f, std::size_t n, std::uint64_t seed)
    : f_(std::move(f)), n_(n), seed_(seed) {
    if (f_.num_inputs() > n_) throw Error(ErrorKind::InvalidArgument, "program has more inputs than variables");
    f_ = f_.with_inputs(n_);
    bounding_ = bounding_polytope(f_, n_, default_bounding_directions(n_), seed_);
    degree_bound_ = max_degree(bounding_.lattice_points);
}

std::optional<ExponentVector> AdaptiveEvalOracle::query(std::span<const Rational> w) {
    return cached(w, [&]() -> std::optional<ExponentVector> {
        return guarded([&] { return std::optional(adaptive_vertex_query(f_, bounding_.lattice_points, w, seed_).beta); });
    });
}

std::optional<Rational> AdaptiveEvalOracle::support(std::span<const Rational> w) {
    try {
        return support_value(f_, w, seed_).h_value;
    } catch (const Error& e) {
        if (is_indeterminate(e.kind())) return std::nullopt;
        throw;
    }
}

WitnessOracle::WitnessOracle(std::shared_ptr<const LineBackend> backend, WitnessLine line, LineConstants consts,
                             WitnessQueryConfig config)
    : backend_(std::move(backend)), line_(std::move(line)), consts_(std::move(consts)), config_(config) {
    // Perturbation is the reconstruction loop's job, so each answer belongs to the direction asked.
    config_.retries = 0;
    // N(H) lies in the degree-d simplex; its lattice points serve as tie candidates when few enough.
    double count = 1;
    for (std::size_t k = 1; k <= line_.degree; ++k) count = count * double(line_.n + k) / double(k);
    if (count <= 5000) {
        LatticePoint e(line_.n, 0);
        std::function<void(std::size_t, std::int64_t)> fill = [&](std::size_t i, std::int64_t left) {
            if (i == line_.n) {
                candidates_.push_back(e);
                return;
            }
            for (std::int64_t k = 0; k <= left; ++k) {
                e[i] = k;
                fill(i + 1, left - k);
            }
            e[i] = 0;
        };
        fill(0, std::int64_t(line_.degree));
    }
}

std::optional<ExponentVector> WitnessOracle::query(std::span<const Rational> w) {
    return cached(w, [&]() -> std::optional<ExponentVector> {
        return guarded([&] {
            auto ans = witness_vertex_query(*backend_, line_, consts_, w, config_);
            auto beta = ans.beta;
            std::lock_guard lock(answers_mutex_);
            answers_.push_back(std::move(ans));
            return std::optional(beta);
        });
    });
}

std::vector<WitnessAnswer> WitnessOracle::answers() const {
    std::lock_guard lock(answers_mutex_);
    return answers_;
}

IntVector random_direction(std::size_t n, std::int64_t bound, std::mt19937_64& rng,
                           const std::vector<LatticePoint>* candidates) {
    if (bound < 1) throw Error(ErrorKind::InvalidArgument, "direction bound must be at least 1");
    // Many candidates can leave no tie-free vector in a small box; widen it after repeated rejections.
    for (int rejected = 0;; ++rejected) {
        const std::int64_t b = bound << std::min(rejected / 8, 20);
        std::uniform_int_distribution<std::int64_t> entry(-b, b);
        IntVector w(n);
        bool nonzero = false;
        for (auto& x : w) {
            x = entry(rng);
            nonzero = nonzero || x != 0;
        }
        if (!nonzero) continue;
        if (candidates && has_tie(*candidates, w)) continue;
        return w;
    }
}

namespace {

struct Target {
    IntegerVector normal;
    Integer offset;
    bool operator<(const Target& o) const { return std::tie(normal, offset) < std::tie(o.normal, o.offset); }
};

std::vector<Target> targets_of(const LatticePolytope& hull) {
    std::vector<Target> out;
    for (const auto& f : hull.facets()) out.push_back({f.normal, f.offset});
    for (const auto& e : hull.equalities()) {
        out.push_back({e.normal, e.offset});
        IntegerVector neg = e.normal;
        for (auto& x : neg) x = -x;
        out.push_back({neg, -e.offset});
    }
    return out;
}

RationalVector to_rational(const IntVector& w) {
    RationalVector out;
    for (auto x : w) out.emplace_back(x);
    return out;
}

}  // namespace

ReconstructResult reconstruct(OracleAdapter& oracle, const ReconstructConfig& config) {
    const std::size_t n = oracle.num_vars();
    const std::int64_t D = std::max<std::int64_t>(1, oracle.degree_bound());
    const std::int64_t R0 = std::max<std::int64_t>(1, config.perturbation);
    const std::size_t budget = config.seed_budget ? config.seed_budget : 8 * n;
    ReconstructResult result;

    // w = K u + r. A perturbation with |r_i| <= R + 1 moves w.(alpha - alpha') by at most
    // 2(R+1)D between lattice points of the degree-D simplex, so K = 2(R+1)D + 1 keeps the
    // answer on the face exposed by u. R grows with the attempt number, and r is redrawn
    // while candidate points tie under w.
    const auto perturbed = [&](const IntegerVector& normal, std::uint64_t attempt) {
        std::vector<std::uint32_t> seq{std::uint32_t(config.seed), std::uint32_t(config.seed >> 32),
                                       std::uint32_t(attempt)};
        for (const auto& x : normal) seq.push_back(std::uint32_t(to_int64(x) & 0xffffffff));
        std::seed_seq ss(seq.begin(), seq.end());
        std::mt19937_64 local(ss);
        const auto* cands = oracle.candidates();
        IntVector w(n);
        for (int draw = 0;; ++draw) {
            const int shift = std::min<int>(2 * int(attempt) + draw / 16, 24);
            const std::int64_t R = R0 << shift;
            const Integer K = 2 * (R + 1) * D + 1;
            std::uniform_int_distribution<std::int64_t> entry(-R, R);
            for (std::size_t i = 0; i < n; ++i) w[i] = to_int64(K * normal[i] + entry(local));
            if (!cands || shift == 24 || !has_tie(*cands, w)) break;
        }
        return w;
    };

    std::set<LatticePoint> vertices;
    const auto ask = [&](const IntVector& w) {
        auto v = oracle.query(to_rational(w));
        result.log.push_back({w, v});
        if (v && v->size() != n) throw Error(ErrorKind::Inconsistent, "oracle answered with the wrong dimension");
        return v;
    };

    // Seed phase: perturbed coordinate directions, then random ones until full rank or budget.
    std::size_t certified = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (int sign : {1, -1}) {
            IntegerVector e(n, 0);
            e[i] = sign;
            for (std::size_t attempt = 0; attempt < config.attempts; ++attempt)
                if (auto v = ask(perturbed(e, attempt))) {
                    vertices.insert(*v);
                    ++certified;
                    break;
                }
        }
    std::mt19937_64 rng(config.seed);
    const auto rank_of = [&] {
        std::vector<LatticePoint> pts(vertices.begin(), vertices.end());
        return affine_rank(pts);
    };
    for (std::size_t tries = 0; certified < budget && tries < 4 * budget && rank_of() < int(n); ++tries)
        if (auto v = ask(random_direction(n, 5, rng, oracle.candidates()))) {
            vertices.insert(*v);
            ++certified;
        }
    if (vertices.empty()) throw Error(ErrorKind::OracleExhausted, "no direction produced a certified vertex");

    // Facet loop. Equalities of the current hull are checked in both directions,
    // which also detects a hull of too low dimension.
    std::set<Target> confirmed, given_up;
    std::vector<LatticePoint> pts(vertices.begin(), vertices.end());
    LatticePolytope hull = convex_hull(pts);
    for (;;) {
        std::vector<Target> pending;
        for (auto& t : targets_of(hull))
            if (!confirmed.count(t) && !given_up.count(t)) pending.push_back(std::move(t));
        if (pending.empty()) break;

        struct Outcome {
            std::vector<QueryRecord> records;
            std::optional<ExponentVector> vertex;
        };
        std::vector<Outcome> outcomes(pending.size());
        const auto work = [&](std::size_t k) {
            for (std::size_t attempt = 0; attempt < config.attempts; ++attempt) {
                const auto w = perturbed(pending[k].normal, attempt);
                auto v = oracle.query(to_rational(w));
                outcomes[k].records.push_back({w, v});
                if (v) {
                    outcomes[k].vertex = std::move(v);
                    break;
                }
            }
        };
        const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, unsigned(pending.size())));
        if (jobs == 1) {
            for (std::size_t k = 0; k < pending.size(); ++k) work(k);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            std::exception_ptr failure;
            std::mutex failure_mutex;
            for (unsigned j = 0; j < jobs; ++j)
                pool.emplace_back([&] {
                    for (std::size_t k; (k = next++) < pending.size();) {
                        try {
                            work(k);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure) failure = std::current_exception();
                        }
                    }
                });
            for (auto& t : pool) t.join();
            if (failure) std::rethrow_exception(failure);
        }

        bool grew = false;
        for (std::size_t k = 0; k < pending.size(); ++k) {
            auto& out = outcomes[k];
            for (auto& r : out.records) result.log.push_back(std::move(r));
            if (!out.vertex) {
                given_up.insert(pending[k]);
                continue;
            }
            const auto& v = *out.vertex;
            if (v.size() != n) throw Error(ErrorKind::Inconsistent, "oracle answered with the wrong dimension");
            const Integer value = dot_int(pending[k].normal, v);
            if (value > pending[k].offset) {
                grew = vertices.insert(v).second || grew;
            } else if (value == pending[k].offset) {
                confirmed.insert(pending[k]);
            } else {
                throw Error(ErrorKind::Inconsistent,
                            "oracle returned a point strictly inside a facet of the current hull");
            }
        }
        if (grew) {
            pts.assign(vertices.begin(), vertices.end());
            hull = convex_hull(pts);
        }
    }

    result.polytope = hull;
    for (const auto& t : targets_of(hull)) {
        if (confirmed.count(t))
            ++result.confirmed_facets;
        else
            result.unconfirmed.push_back(t.normal);
    }
    result.complete = result.unconfirmed.empty();
    result.queries = result.log.size();
    result.indeterminate = std::size_t(std::count_if(result.log.begin(), result.log.end(),
                                                     [](const QueryRecord& r) { return !r.vertex; }));
    return result;
}

VerifyReport verify(const LatticePolytope& p, OracleAdapter& oracle, std::size_t k, std::mt19937_64& rng) {
    VerifyReport report;
    const std::size_t n = p.ambient_dim();
    for (std::size_t i = 0; i < k; ++i) {
        const auto w = random_direction(n, 5, rng, &p.vertices());
        const auto v = oracle.query(to_rational(w));
        ++report.queries;
        if (!v) {
            ++report.indeterminate;
            continue;
        }
        const auto h = support_function(p, std::span<const std::int64_t>(w)).value;
        Rational got = 0;
        for (std::size_t j = 0; j < n; ++j) got += Rational(w[j] * (*v)[j]);
        if (!p.is_vertex(*v) || got != h) report.discrepancies.push_back({w, v});
    }
    return report;
}

nlohmann::json to_json(const ReconstructResult& r) {
    nlohmann::json j = to_json(r.polytope);
    j["queries"] = r.queries;
    j["indeterminate"] = r.indeterminate;
    j["confirmed_facets"] = r.confirmed_facets;
    auto un = nlohmann::json::array();
    for (const auto& v : r.unconfirmed) {
        auto row = nlohmann::json::array();
        for (const auto& x : v) row.push_back(to_int64(x));
        un.push_back(row);
    }
    j["unconfirmed"] = un;
    j["complete"] = r.complete;
    return j;
}

}  // namespace newtonpoly
