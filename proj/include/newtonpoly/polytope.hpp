#pragma once

#include "newtonpoly/linalg.hpp"
#include "newtonpoly/numeric.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace newtonpoly {

/// Facet of a polytope inside its affine hull: normal . x <= offset, with
/// equality exactly on the incident vertices. The normal is primitive and lies
/// in the direction space of the affine hull, which makes it unique.
struct Facet {
    IntegerVector normal;
    Integer offset;
    std::vector<std::size_t> incident;  // indices into vertices()
};

/// normal . x == offset on the whole polytope.
struct Equality {
    IntegerVector normal;
    Integer offset;
};

struct Halfspace {
    IntegerVector normal;
    Integer offset;
};

struct HalfspaceRepresentation {
    std::vector<Halfspace> inequalities;
    std::vector<Equality> equalities;
};

struct SupportSample {
    RationalVector w;
    Rational value;
    int exposed_dim = 0;
};

class LatticePolytope {
public:
    std::size_t ambient_dim() const { return n_; }
    int dim() const { return dim_; }
    /// Sorted lexicographically.
    const std::vector<LatticePoint>& vertices() const { return vertices_; }
    /// Sorted by (normal, offset).
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Equality>& equalities() const { return equalities_; }

    bool contains(std::span<const std::int64_t> x) const;
    bool is_vertex(std::span<const std::int64_t> x) const;

    /// Same vertex set (which determines everything else).
    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
        return a.n_ == b.n_ && a.vertices_ == b.vertices_;
    }

private:
    friend LatticePolytope convex_hull(std::span<const LatticePoint> points);
    std::size_t n_ = 0;
    int dim_ = 0;
    std::vector<LatticePoint> vertices_;
    std::vector<Facet> facets_;
    std::vector<Equality> equalities_;
};

/// Exact beneath-beyond hull. Throws InvalidArgument on empty input or
/// mismatched point lengths.
LatticePolytope convex_hull(std::span<const LatticePoint> points);

SupportSample support_function(const LatticePolytope& p, std::span<const Rational> w);
SupportSample support_function(const LatticePolytope& p, std::span<const std::int64_t> w);

/// Integer points of p, sorted lexicographically.
std::vector<LatticePoint> lattice_points(const LatticePolytope& p);

LatticePolytope dilate(const LatticePolytope& p, std::int64_t k);

HalfspaceRepresentation halfspace_representation(const LatticePolytope& p);

/// General inequality system sum normal_j x_j <= offset, equalities allowed.
struct HalfspaceSystem {
    std::size_t n = 0;
    std::vector<Halfspace> inequalities;
    std::vector<Equality> equalities;

    bool contains(std::span<const std::int64_t> x) const;
    /// Throws Unbounded when the region is not bounded (or is empty: then
    /// it has no vertices and InvalidArgument is thrown instead).
    std::vector<RationalVector> vertices() const;
    bool bounded() const;
    std::vector<LatticePoint> lattice_points() const;
};

/// Lattice-affine map between affine-hull lattices, in chart coordinates:
/// a point x of P is written x = p_origin + sum_k y_k p_basis[k] with y integral,
/// and maps to q_origin + sum_k (linear y + translation)_k q_basis[k].
struct IsomorphismWitness {
    std::vector<std::size_t> vertex_map;  // P vertex index -> Q vertex index
    IntegerVector p_origin, q_origin;
    IntegerMatrix p_basis, q_basis;
    IntegerMatrix linear;  // dim x dim, determinant +-1
    IntegerVector translation;
};

std::optional<IsomorphismWitness> affinely_isomorphic(const LatticePolytope& p, const LatticePolytope& q);

nlohmann::json to_json(const LatticePolytope& p);
/// Uses "vertices" when present (rehulled), else the inequalities/equalities.
LatticePolytope polytope_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IsomorphismWitness& w);

}  // namespace newtonpoly
