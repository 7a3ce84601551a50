#pragma once

#include "newtonpoly/eval_oracle.hpp"
#include "newtonpoly/numeric.hpp"
#include "newtonpoly/polytope.hpp"
#include "newtonpoly/witness_oracle.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace newtonpoly {

enum class OracleKind { Eval, Witness };

/// Vertex oracle. query() returns the vertex exposed by w, or nothing when the
/// underlying module could not certify one. Implementations are safe to call
/// from several threads.
class OracleAdapter {
public:
    virtual ~OracleAdapter() = default;
    virtual OracleKind kind() const = 0;
    virtual std::size_t num_vars() const = 0;
    /// Upper bound on |alpha| over the support.
    virtual std::int64_t degree_bound() const = 0;
    /// Lattice points known to contain the support, if any (used to reject tied directions).
    virtual const std::vector<LatticePoint>* candidates() const { return nullptr; }
    virtual std::optional<ExponentVector> query(std::span<const Rational> w) = 0;
    virtual std::optional<Rational> support(std::span<const Rational>) { return std::nullopt; }

    std::size_t queries() const;
    std::size_t indeterminate() const;

protected:
    /// Memoized wrapper for subclasses: computes on a miss and counts outcomes.
    std::optional<ExponentVector> cached(std::span<const Rational> w,
                                         const std::function<std::optional<ExponentVector>()>& compute);

private:
    mutable std::mutex mutex_;
    std::map<RationalVector, std::optional<ExponentVector>> memo_;
    std::size_t queries_ = 0;
    std::size_t indeterminate_ = 0;
};

/// Theorem-mode evaluation oracle: t = 2 * threshold for the supplied bounds.
class EvalOracle final : public OracleAdapter {
public:
    EvalOracle(Slp f, EvalBounds bounds, std::uint64_t seed = 0);
    OracleKind kind() const override { return OracleKind::Eval; }
    std::size_t num_vars() const override { return f_.num_inputs(); }
    std::int64_t degree_bound() const override { return degree_bound_; }
    const std::vector<LatticePoint>* candidates() const override { return &bounds_.superset; }
    std::optional<ExponentVector> query(std::span<const Rational> w) override;
    std::optional<Rational> support(std::span<const Rational> w) override;

private:
    Slp f_;
    EvalBounds bounds_;
    std::uint64_t seed_;
    std::int64_t degree_bound_ = 0;
};

/// Evaluation oracle without coefficient bounds: a bounding polytope from
/// support estimates supplies the candidate set, and each query matches the
/// estimated support value against it.
class AdaptiveEvalOracle final : public OracleAdapter {
public:
    AdaptiveEvalOracle(Slp f, std::size_t n, std::uint64_t seed = 0);
    OracleKind kind() const override { return OracleKind::Eval; }
    std::size_t num_vars() const override { return n_; }
    std::int64_t degree_bound() const override { return degree_bound_; }
    const std::vector<LatticePoint>* candidates() const override { return &bounding_.lattice_points; }
    std::optional<ExponentVector> query(std::span<const Rational> w) override;
    std::optional<Rational> support(std::span<const Rational> w) override;
    const BoundingResult& bounding() const { return bounding_; }

private:
    Slp f_;
    std::size_t n_;
    std::uint64_t seed_;
    BoundingResult bounding_;
    std::int64_t degree_bound_ = 0;
};

class WitnessOracle final : public OracleAdapter {
public:
    WitnessOracle(std::shared_ptr<const LineBackend> backend, WitnessLine line, LineConstants consts,
                  WitnessQueryConfig config = {});
    OracleKind kind() const override { return OracleKind::Witness; }
    std::size_t num_vars() const override { return line_.n; }
    std::int64_t degree_bound() const override { return std::int64_t(line_.degree); }
    /// Lattice points of the degree-d simplex (empty, and not offered, above 5000 points).
    const std::vector<LatticePoint>* candidates() const override {
        return candidates_.empty() ? nullptr : &candidates_;
    }
    std::optional<ExponentVector> query(std::span<const Rational> w) override;

    /// Every certified answer so far, for certificate audits.
    std::vector<WitnessAnswer> answers() const;

private:
    std::shared_ptr<const LineBackend> backend_;
    WitnessLine line_;
    LineConstants consts_;
    WitnessQueryConfig config_;
    std::vector<LatticePoint> candidates_;
    mutable std::mutex answers_mutex_;
    std::vector<WitnessAnswer> answers_;
};

/// Nonzero integer vector, entries uniform in [-bound, bound]; redrawn while two
/// of the candidate points tie under it. The range doubles after every 8 rejections.
IntVector random_direction(std::size_t n, std::int64_t bound, std::mt19937_64& rng,
                           const std::vector<LatticePoint>* candidates = nullptr);

struct ReconstructConfig {
    std::uint64_t seed = 0;
    std::size_t seed_budget = 0;  // 0: 8n
    std::size_t attempts = 4;     // perturbations tried per facet normal
    std::int64_t perturbation = 2;
    unsigned jobs = 1;
};

struct QueryRecord {
    IntVector w;
    std::optional<ExponentVector> vertex;
};

struct ReconstructResult {
    LatticePolytope polytope;
    bool complete = false;
    std::size_t queries = 0;
    std::size_t indeterminate = 0;
    std::size_t confirmed_facets = 0;
    std::vector<IntegerVector> unconfirmed;
    std::vector<QueryRecord> log;
};

/// Seed phase, then facet confirmation. An incomplete result (some facet normal
/// indeterminate under every perturbation) has complete = false and lists the
/// unconfirmed normals. Throws Inconsistent when the oracle contradicts the hull,
/// OracleExhausted when no vertex at all could be certified.
ReconstructResult reconstruct(OracleAdapter& oracle, const ReconstructConfig& config = {});

struct VerifyReport {
    std::size_t queries = 0;
    std::size_t indeterminate = 0;
    std::vector<QueryRecord> discrepancies;
};

VerifyReport verify(const LatticePolytope& p, OracleAdapter& oracle, std::size_t k, std::mt19937_64& rng);

nlohmann::json to_json(const ReconstructResult& r);

}  // namespace newtonpoly
