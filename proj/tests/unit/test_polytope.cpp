#include "../common/brute_force_hull.hpp"
#include "fixtures.hpp"

#include "newtonpoly/errors.hpp"
#include "newtonpoly/polytope.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace newtonpoly;

namespace {

const std::vector<LatticePoint> kBipyramid{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
const std::vector<LatticePoint> kDelta{{0, 0, 0, 1, 1, 1}, {1, 0, 0, 2, 0, 0}, {0, 1, 0, 0, 2, 0},
                                       {0, 0, 1, 0, 0, 2}, {1, 1, 1, 0, 0, 0}};

std::set<std::set<LatticePoint>> facet_sets(const LatticePolytope& p, const std::vector<LatticePoint>& pts) {
    std::set<std::set<LatticePoint>> out;
    for (const auto& f : p.facets()) {
        std::set<LatticePoint> on;
        for (const auto& x : pts)
            if (dot(std::span<const Integer>(f.normal), std::span<const std::int64_t>(x)) == f.offset) on.insert(x);
        out.insert(on);
    }
    return out;
}

void check_structure(const LatticePolytope& p) {
    for (const auto& f : p.facets()) {
        CHECK(make_primitive(f.normal) == f.normal);
        std::vector<IntVector> tight;
        for (std::size_t v = 0; v < p.vertices().size(); ++v) {
            const Integer s = dot(std::span<const Integer>(f.normal), std::span<const std::int64_t>(p.vertices()[v]));
            CHECK(s <= f.offset);
            if (s == f.offset) tight.push_back(p.vertices()[v]);
        }
        CHECK(tight.size() == f.incident.size());
        CHECK(affine_rank(tight) == p.dim() - 1);
    }
    for (const auto& e : p.equalities())
        for (const auto& v : p.vertices())
            CHECK(dot(std::span<const Integer>(e.normal), std::span<const std::int64_t>(v)) == e.offset);
    CHECK(static_cast<int>(p.equalities().size()) == static_cast<int>(p.ambient_dim()) - p.dim());
}

std::vector<LatticePoint> random_points(std::mt19937_64& rng, std::size_t n, std::size_t count, int flat) {
    std::uniform_int_distribution<int> coord(0, 8);
    std::vector<LatticePoint> pts;
    if (flat == 0) {
        for (std::size_t i = 0; i < count; ++i) {
            LatticePoint p(n);
            for (auto& x : p) x = coord(rng);
            pts.push_back(p);
        }
        return pts;
    }
    // Points in a lower-dimensional affine lattice: base + small combos of `flat` generators.
    std::uniform_int_distribution<int> gen(-2, 2), mult(0, 3);
    LatticePoint base(n);
    for (auto& x : base) x = coord(rng);
    std::vector<LatticePoint> gens(flat, LatticePoint(n));
    for (auto& g : gens)
        for (auto& x : g) x = gen(rng);
    for (std::size_t i = 0; i < count; ++i) {
        LatticePoint p = base;
        for (const auto& g : gens) {
            const int m = mult(rng);
            for (std::size_t j = 0; j < n; ++j) p[j] += m * g[j];
        }
        pts.push_back(p);
    }
    return pts;
}

}  // namespace

TEST_CASE("bipyramid hull") {
    const auto p = convex_hull(kBipyramid);
    CHECK(p.dim() == 3);
    CHECK(p.vertices().size() == 5);
    CHECK(p.facets().size() == 6);
    for (const auto& f : p.facets()) CHECK(f.incident.size() == 3);
    check_structure(p);
    const auto ref = brute::hull(kBipyramid);
    CHECK(ref.facets.size() == 6);
    CHECK(facet_sets(p, kBipyramid) == ref.facets);
}

TEST_CASE("segment with duplicates") {
    const std::vector<LatticePoint> pts{{0, 2, 0}, {1, 0, 1}, {0, 2, 0}};
    const auto p = convex_hull(pts);
    CHECK(p.dim() == 1);
    CHECK(p.vertices() == std::vector<LatticePoint>{{0, 2, 0}, {1, 0, 1}});
    const auto h = halfspace_representation(p);
    CHECK(h.inequalities.size() == 2);
    CHECK(h.equalities.size() == 2);
    check_structure(p);
}

TEST_CASE("point and empty inputs") {
    const auto p = convex_hull(std::vector<LatticePoint>{{3, 4}});
    CHECK(p.dim() == 0);
    CHECK(p.vertices().size() == 1);
    const auto h = halfspace_representation(p);
    CHECK(h.inequalities.empty());
    CHECK(h.equalities.size() == 2);
    CHECK_THROWS_AS(convex_hull(std::vector<LatticePoint>{}), Error);
    CHECK_THROWS_AS(convex_hull(std::vector<LatticePoint>{{1, 2}, {1}}), Error);
}

TEST_CASE("Delta is a bipyramid with all integer points extreme") {
    const auto d = convex_hull(kDelta);
    CHECK(d.dim() == 3);
    CHECK(d.vertices().size() == 5);
    CHECK(d.facets().size() == 6);
    check_structure(d);
    CHECK(lattice_points(d).size() == 5);
    const auto d4 = dilate(d, 4);
    CHECK(lattice_points(d4).size() == 65);
    for (const auto& f : d4.facets()) {
        auto same = std::find_if(d.facets().begin(), d.facets().end(), [&](const Facet& g) { return g.normal == f.normal; });
        REQUIRE(same != d.facets().end());
        CHECK(f.offset == 4 * same->offset);
    }
    CHECK(dilate(d, 1) == d);
    CHECK_THROWS_AS(dilate(d, 0), Error);
}

TEST_CASE("support function") {
    const auto p = convex_hull(kBipyramid);
    auto s = support_function(p, std::vector<std::int64_t>{1, 1, 1});
    CHECK(s.value == 3);
    CHECK(s.exposed_dim == 0);
    s = support_function(p, std::vector<std::int64_t>{-1, -1, -1});
    CHECK(s.value == 0);
    CHECK(s.exposed_dim == 0);
    s = support_function(p, std::vector<std::int64_t>{1, 0, 0});
    CHECK(s.value == 1);
    CHECK(s.exposed_dim == 1);

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    for (int k = 0; k < 100; ++k) {
        RationalVector w;
        for (int i = 0; i < 3; ++i) w.emplace_back(num(rng), den(rng));
        Rational best = dot(std::span<const Rational>(w), std::span<const std::int64_t>(kBipyramid[0]));
        for (const auto& v : kBipyramid) best = std::max(best, dot(std::span<const Rational>(w), std::span<const std::int64_t>(v)));
        CHECK(support_function(p, std::span<const Rational>(w)).value == best);
    }
}

TEST_CASE("lattice points") {
    CHECK(lattice_points(convex_hull(std::vector<LatticePoint>{{0}, {2}})) ==
          std::vector<LatticePoint>{{0}, {1}, {2}});
    std::vector<LatticePoint> box;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 1; ++c) box.push_back({a, b, c});
    CHECK(lattice_points(convex_hull(box)).size() == 12);
    // A primitive segment in a non-saturated direction has no interior points.
    CHECK(lattice_points(convex_hull(std::vector<LatticePoint>{{0, 0}, {2, 4}})).size() == 3);
    CHECK(lattice_points(convex_hull(std::vector<LatticePoint>{{0, 0, 0}, {2, 4, 1}})).size() == 2);
}

TEST_CASE("beneath-beyond agrees with brute force on random point sets") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const std::size_t count = 1 + (trial * 7) % 20;
        const int flat = (trial % 5 == 4 && n > 1) ? 1 + trial % (int)(n - 1) : 0;
        const auto pts = random_points(rng, n, count, flat);
        const auto p = convex_hull(pts);
        const auto ref = brute::hull(pts);
        CHECK(p.dim() == static_cast<int>(ref.dim));
        CHECK(std::set<LatticePoint>(p.vertices().begin(), p.vertices().end()) == ref.vertices);
        if (ref.dim > 0) CHECK(facet_sets(p, ref.points) == ref.facets);
        check_structure(p);
        CHECK(convex_hull(p.vertices()) == p);
        for (const auto& x : pts) CHECK(p.contains(x));
    }
}

TEST_CASE("affine isomorphism") {
    const auto delta = convex_hull(kDelta);
    const auto bip = convex_hull(kBipyramid);
    const auto w = affinely_isomorphic(delta, bip);
    REQUIRE(w);
    CHECK(w->vertex_map.size() == 5);
    CHECK(abs(determinant(w->linear)) == 1);
    CHECK(affinely_isomorphic(convex_hull(std::vector<LatticePoint>{{0}, {1}}),
                              convex_hull(std::vector<LatticePoint>{{5}, {6}})));
    CHECK_FALSE(affinely_isomorphic(convex_hull(std::vector<LatticePoint>{{0, 0}, {1, 0}, {0, 1}}),
                                    convex_hull(std::vector<LatticePoint>{{0, 0}, {1, 0}, {0, 1}, {1, 1}})));
    // Same vertex count but not lattice-equivalent: the segment of length 2.
    CHECK_FALSE(affinely_isomorphic(convex_hull(std::vector<LatticePoint>{{0}, {1}}),
                                    convex_hull(std::vector<LatticePoint>{{0}, {2}})));
    // Unimodular triangles are all equivalent; a triangle of area 1 is not.
    CHECK(affinely_isomorphic(convex_hull(std::vector<LatticePoint>{{0, 0}, {1, 0}, {0, 1}}),
                              convex_hull(std::vector<LatticePoint>{{3, 1}, {4, 3}, {2, 0}})));
    CHECK_FALSE(affinely_isomorphic(convex_hull(std::vector<LatticePoint>{{0, 0}, {1, 0}, {0, 1}}),
                                    convex_hull(std::vector<LatticePoint>{{0, 0}, {2, 0}, {0, 1}})));
    CHECK_FALSE(affinely_isomorphic(delta, dilate(delta, 4)));
}

TEST_CASE("halfspace systems") {
    HalfspaceSystem box;
    box.n = 2;
    box.inequalities = {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 0}, 2}, {{0, 1}, 1}};
    CHECK(box.bounded());
    CHECK(box.lattice_points().size() == 6);
    HalfspaceSystem open;
    open.n = 2;
    open.inequalities = {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, -1}, 2}};
    CHECK_FALSE(open.bounded());
    CHECK_THROWS_AS(open.vertices(), Error);
    HalfspaceSystem tri;
    tri.n = 2;
    tri.inequalities = {{{-1, 0}, 0}, {{0, -1}, 0}, {{2, 3}, 6}};
    const auto v = tri.vertices();
    CHECK(v.size() == 3);
    CHECK(tri.lattice_points().size() == 7);
}

TEST_CASE("json round trip") {
    const auto bip = polytope_from_json(nlohmann::json::parse(read_fixture("bipyramid.json")));
    CHECK(bip == convex_hull(kBipyramid));
    const auto j = to_json(bip);
    CHECK(j["facets"].size() == 6);
    CHECK(polytope_from_json(j) == bip);
    nlohmann::json only_facets = j;
    only_facets.erase("vertices");
    CHECK(polytope_from_json(only_facets) == bip);
    const auto d4 = polytope_from_json(nlohmann::json::parse(read_fixture("delta4.json")));
    CHECK(d4 == dilate(convex_hull(kDelta), 4));
    CHECK_THROWS_AS(polytope_from_json(nlohmann::json::parse(R"({"n": 2, "vertices": [[1]]})")), Error);
}
