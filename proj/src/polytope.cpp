#include "newtonpoly/polytope.hpp"

#include "newtonpoly/errors.hpp"
#include "newtonpoly/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace newtonpoly {

namespace {

Integer idot(const IntegerVector& a, const IntegerVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational rdot(const RationalVector& a, const RationalVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntegerVector to_integer(const LatticePoint& p) { return IntegerVector(p.begin(), p.end()); }

// Normal of the hyperplane through `pts` (which must span one), or empty.
IntegerVector hyperplane_normal(const std::vector<const IntegerVector*>& pts, std::size_t d) {
    IntegerMatrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        IntegerVector row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = (*pts[i])[j] - (*pts[0])[j];
        diffs.push_back(std::move(row));
    }
    IntegerMatrix k = kernel_basis(diffs, d);
    if (k.size() != 1) return {};
    return k.front();
}

struct HullFacet {
    IntegerVector normal;
    Integer offset;
    std::vector<std::size_t> points;  // sorted indices of inserted points on the hyperplane
};

int affine_rank_of(const std::vector<IntegerVector>& q, const std::vector<std::size_t>& idx) {
    std::vector<IntegerVector> pts;
    pts.reserve(idx.size());
    for (auto i : idx) pts.push_back(q[i]);
    return affine_rank(pts);
}

// Beneath-beyond in Z^d for points spanning Z^d affinely (d >= 1). Returns
// facets with point sets; coplanar points are kept on their facets.
std::vector<HullFacet> full_dimensional_hull(const std::vector<IntegerVector>& q, std::size_t d) {
    std::vector<std::size_t> seed{0};
    for (std::size_t i = 1; i < q.size() && seed.size() < d + 1; ++i) {
        auto trial = seed;
        trial.push_back(i);
        if (affine_rank_of(q, trial) == static_cast<int>(seed.size())) seed = std::move(trial);
    }
    if (seed.size() != d + 1) throw Error(ErrorKind::Inconsistent, "hull seed is not affinely independent");

    IntegerVector ref(d, Integer(0));  // (d+1) times an interior point
    for (auto i : seed)
        for (std::size_t j = 0; j < d; ++j) ref[j] += q[i][j];
    const Integer scale = static_cast<long long>(d + 1);

    auto make_facet = [&](std::vector<std::size_t> on) -> HullFacet {
        std::sort(on.begin(), on.end());
        std::vector<const IntegerVector*> pts;
        for (auto i : on) pts.push_back(&q[i]);
        HullFacet f;
        f.normal = hyperplane_normal(pts, d);
        if (f.normal.empty()) throw Error(ErrorKind::Inconsistent, "degenerate facet hyperplane");
        f.offset = idot(f.normal, q[on.front()]);
        if (idot(f.normal, ref) > scale * f.offset) {
            for (auto& x : f.normal) x = -x;
            f.offset = -f.offset;
        }
        f.points = std::move(on);
        return f;
    };

    std::vector<HullFacet> facets;
    for (std::size_t skip = 0; skip <= d; ++skip) {
        std::vector<std::size_t> on;
        for (std::size_t k = 0; k <= d; ++k)
            if (k != skip) on.push_back(seed[k]);
        facets.push_back(make_facet(on));
    }

    std::vector<bool> inserted(q.size(), false);
    for (auto i : seed) inserted[i] = true;

    for (std::size_t i = 0; i < q.size(); ++i) {
        if (inserted[i]) continue;
        inserted[i] = true;
        std::vector<int> side(facets.size());
        bool any_visible = false;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            const Integer s = idot(facets[f].normal, q[i]) - facets[f].offset;
            side[f] = s > 0 ? 1 : (s == 0 ? 0 : -1);
            any_visible = any_visible || side[f] > 0;
        }
        std::vector<HullFacet> created;
        if (any_visible) {
            for (std::size_t f = 0; f < facets.size(); ++f) {
                if (side[f] <= 0) continue;
                for (std::size_t g = 0; g < facets.size(); ++g) {
                    if (side[g] != -1) continue;
                    std::vector<std::size_t> ridge;
                    std::set_intersection(facets[f].points.begin(), facets[f].points.end(), facets[g].points.begin(),
                                          facets[g].points.end(), std::back_inserter(ridge));
                    if (affine_rank_of(q, ridge) != static_cast<int>(d) - 2) continue;
                    ridge.push_back(i);
                    created.push_back(make_facet(std::move(ridge)));
                }
            }
        }
        std::vector<HullFacet> next;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (side[f] > 0) continue;
            if (side[f] == 0) {
                auto& pts = facets[f].points;
                pts.insert(std::upper_bound(pts.begin(), pts.end(), i), i);
            }
            next.push_back(std::move(facets[f]));
        }
        for (auto& c : created) {
            auto same = std::find_if(next.begin(), next.end(),
                                     [&](const HullFacet& h) { return h.normal == c.normal && h.offset == c.offset; });
            if (same == next.end()) {
                next.push_back(std::move(c));
            } else {
                std::vector<std::size_t> merged;
                std::set_union(same->points.begin(), same->points.end(), c.points.begin(), c.points.end(),
                               std::back_inserter(merged));
                same->points = std::move(merged);
            }
        }
        facets = std::move(next);
    }
    return facets;
}

bool lex_less(const IntegerVector& a, const IntegerVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

LatticePolytope convex_hull(std::span<const LatticePoint> points) {
    if (points.empty()) throw Error(ErrorKind::InvalidArgument, "convex hull of an empty point set");
    const std::size_t n = points.front().size();
    for (const auto& p : points)
        if (p.size() != n) throw Error(ErrorKind::InvalidArgument, "points have different lengths");

    std::vector<LatticePoint> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LatticePolytope out;
    out.n_ = n;

    RationalMatrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        RationalVector row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = Rational(pts[i][j] - pts[0][j]);
        diffs.push_back(std::move(row));
    }
    const RowEchelon ech = rref(diffs, n);
    const std::size_t d = ech.pivots.size();
    out.dim_ = static_cast<int>(d);

    const IntegerVector origin = to_integer(pts[0]);
    for (auto& e : kernel_basis(diffs, n)) {
        Equality eq{e, idot(e, origin)};
        out.equalities_.push_back(std::move(eq));
    }

    if (d == 0) {
        out.vertices_ = {pts[0]};
        return out;
    }

    // Project to the pivot coordinates, which chart the affine hull injectively.
    std::vector<IntegerVector> q;
    q.reserve(pts.size());
    for (const auto& p : pts) {
        IntegerVector y(d);
        for (std::size_t k = 0; k < d; ++k) y[k] = p[ech.pivots[k]];
        q.push_back(std::move(y));
    }
    const std::vector<HullFacet> hull = full_dimensional_hull(q, d);

    std::vector<std::vector<std::size_t>> on_facets(q.size());
    for (std::size_t f = 0; f < hull.size(); ++f)
        for (auto i : hull[f].points) on_facets[i].push_back(f);
    for (std::size_t i = 0; i < q.size(); ++i) {
        IntegerMatrix normals;
        for (auto f : on_facets[i]) normals.push_back(hull[f].normal);
        if (rank(normals, d) == d) out.vertices_.push_back(pts[i]);
    }

    // Lift each facet normal: put it on the pivot coordinates, then project
    // orthogonally onto the direction space of the affine hull.
    RationalMatrix gram(d, RationalVector(d));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) gram[a][b] = rdot(ech.rows[a], ech.rows[b]);
    for (const auto& hf : hull) {
        RationalVector lifted(n, Rational(0));
        for (std::size_t k = 0; k < d; ++k) lifted[ech.pivots[k]] = Rational(hf.normal[k]);
        RationalVector rhs(d);
        for (std::size_t a = 0; a < d; ++a) rhs[a] = rdot(ech.rows[a], lifted);
        const auto c = solve(gram, rhs, d);
        RationalVector proj(n, Rational(0));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t j = 0; j < n; ++j) proj[j] += (*c)[a] * ech.rows[a][j];
        Facet f;
        f.normal = integerize(proj);
        f.offset = dot(std::span<const Integer>(f.normal), std::span<const std::int64_t>(pts[hf.points.front()]));
        out.facets_.push_back(std::move(f));
    }
    std::sort(out.facets_.begin(), out.facets_.end(), [](const Facet& a, const Facet& b) {
        if (a.normal != b.normal) return lex_less(a.normal, b.normal);
        return a.offset < b.offset;
    });
    for (auto& f : out.facets_)
        for (std::size_t v = 0; v < out.vertices_.size(); ++v)
            if (dot(std::span<const Integer>(f.normal), std::span<const std::int64_t>(out.vertices_[v])) == f.offset)
                f.incident.push_back(v);
    return out;
}

bool LatticePolytope::contains(std::span<const std::int64_t> x) const {
    if (x.size() != n_) return false;
    for (const auto& e : equalities_)
        if (dot(std::span<const Integer>(e.normal), x) != e.offset) return false;
    for (const auto& f : facets_)
        if (dot(std::span<const Integer>(f.normal), x) > f.offset) return false;
    return true;
}

bool LatticePolytope::is_vertex(std::span<const std::int64_t> x) const {
    const LatticePoint p(x.begin(), x.end());
    return std::binary_search(vertices_.begin(), vertices_.end(), p);
}

SupportSample support_function(const LatticePolytope& p, std::span<const Rational> w) {
    if (w.size() != p.ambient_dim()) throw Error(ErrorKind::InvalidArgument, "direction length mismatch");
    SupportSample out;
    out.w.assign(w.begin(), w.end());
    std::vector<IntVector> argmax;
    for (const auto& v : p.vertices()) {
        const Rational val = dot(w, std::span<const std::int64_t>(v));
        if (argmax.empty() || val > out.value) {
            out.value = val;
            argmax.assign(1, v);
        } else if (val == out.value) {
            argmax.push_back(v);
        }
    }
    out.exposed_dim = affine_rank(argmax);
    return out;
}

SupportSample support_function(const LatticePolytope& p, std::span<const std::int64_t> w) {
    const RationalVector rw = to_rational_vector(w);
    return support_function(p, std::span<const Rational>(rw));
}

std::vector<LatticePoint> lattice_points(const LatticePolytope& p) {
    const std::size_t n = p.ambient_dim();
    const auto& verts = p.vertices();
    if (p.dim() == 0) return verts;
    RationalMatrix diffs;
    for (std::size_t i = 1; i < verts.size(); ++i) {
        RationalVector row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = Rational(verts[i][j] - verts[0][j]);
        diffs.push_back(std::move(row));
    }
    const RowEchelon ech = rref(diffs, n);
    const std::size_t d = ech.pivots.size();
    IntVector lo(d), hi(d);
    for (std::size_t k = 0; k < d; ++k) {
        lo[k] = hi[k] = verts[0][ech.pivots[k]];
        for (const auto& v : verts) {
            lo[k] = std::min(lo[k], v[ech.pivots[k]]);
            hi[k] = std::max(hi[k], v[ech.pivots[k]]);
        }
    }
    std::vector<LatticePoint> out;
    IntVector y = lo;
    LatticePoint x(n);
    RationalVector xr(n);
    while (true) {
        // x = v0 + sum_k (y_k - v0[pivot_k]) rows_k
        for (std::size_t j = 0; j < n; ++j) xr[j] = Rational(verts[0][j]);
        for (std::size_t k = 0; k < d; ++k) {
            const std::int64_t c = y[k] - verts[0][ech.pivots[k]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (ech.rows[k][j] != 0) xr[j] += ech.rows[k][j] * c;
        }
        bool integral = true;
        for (std::size_t j = 0; j < n && integral; ++j) {
            if (boost::multiprecision::denominator(xr[j]) != 1) {
                integral = false;
            } else {
                x[j] = to_int64(boost::multiprecision::numerator(xr[j]));
            }
        }
        if (integral && p.contains(x)) out.push_back(x);
        std::size_t k = 0;
        while (k < d && y[k] == hi[k]) {
            y[k] = lo[k];
            ++k;
        }
        if (k == d) break;
        ++y[k];
    }
    std::sort(out.begin(), out.end());
    return out;
}

LatticePolytope dilate(const LatticePolytope& p, std::int64_t k) {
    if (k <= 0) throw Error(ErrorKind::InvalidArgument, "dilation factor must be positive");
    std::vector<LatticePoint> scaled = p.vertices();
    for (auto& v : scaled)
        for (auto& x : v) x *= k;
    return convex_hull(scaled);
}

HalfspaceRepresentation halfspace_representation(const LatticePolytope& p) {
    HalfspaceRepresentation out;
    for (const auto& f : p.facets()) out.inequalities.push_back({f.normal, f.offset});
    out.equalities = p.equalities();
    return out;
}

namespace {

// Calls fn on every k-subset of {0..m-1} in lexicographic order; stops when fn returns false.
void for_each_subset(std::size_t m, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    if (k > m) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(idx)) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

bool HalfspaceSystem::contains(std::span<const std::int64_t> x) const {
    for (const auto& e : equalities)
        if (dot(std::span<const Integer>(e.normal), x) != e.offset) return false;
    for (const auto& h : inequalities)
        if (dot(std::span<const Integer>(h.normal), x) > h.offset) return false;
    return true;
}

std::vector<RationalVector> HalfspaceSystem::vertices() const {
    if (!bounded()) throw Error(ErrorKind::Unbounded, "inequality system is unbounded");
    RationalMatrix eq_rows;
    RationalVector eq_rhs;
    for (const auto& e : equalities) {
        eq_rows.push_back(to_rational_vector(std::span<const Integer>(e.normal)));
        eq_rhs.emplace_back(e.offset);
    }
    const std::size_t r = rank(eq_rows, n);
    std::set<RationalVector> found;
    for_each_subset(inequalities.size(), n - r, [&](const std::vector<std::size_t>& idx) {
        RationalMatrix rows = eq_rows;
        RationalVector rhs = eq_rhs;
        for (auto i : idx) {
            rows.push_back(to_rational_vector(std::span<const Integer>(inequalities[i].normal)));
            rhs.emplace_back(inequalities[i].offset);
        }
        if (rank(rows, n) != n) return true;
        auto x = solve(rows, rhs, n);
        if (!x) return true;
        for (const auto& h : inequalities)
            if (rdot(to_rational_vector(std::span<const Integer>(h.normal)), *x) > Rational(h.offset)) return true;
        found.insert(*x);
        return true;
    });
    if (found.empty()) throw Error(ErrorKind::InvalidArgument, "inequality system is empty");
    return {found.begin(), found.end()};
}

bool HalfspaceSystem::bounded() const {
    IntegerMatrix all;
    for (const auto& h : inequalities) all.push_back(h.normal);
    for (const auto& e : equalities) all.push_back(e.normal);
    if (rank(all, n) < n) return false;
    // Pointed recession cone {A r <= 0, E r = 0}: bounded iff it has no extreme ray.
    IntegerMatrix eqs;
    for (const auto& e : equalities) eqs.push_back(e.normal);
    const std::size_t r = rank(eqs, n);
    if (r >= n) return true;
    bool has_ray = false;
    for_each_subset(inequalities.size(), n - 1 - r, [&](const std::vector<std::size_t>& idx) {
        IntegerMatrix rows = eqs;
        for (auto i : idx) rows.push_back(inequalities[i].normal);
        const IntegerMatrix k = kernel_basis(rows, n);
        if (k.size() != 1) return true;
        for (int sgn : {1, -1}) {
            bool ok = true;
            for (const auto& h : inequalities) {
                if (sgn * idot(h.normal, k[0]) > 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                has_ray = true;
                return false;
            }
        }
        return true;
    });
    return !has_ray;
}

std::vector<LatticePoint> HalfspaceSystem::lattice_points() const {
    const auto verts = vertices();
    IntVector lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational mn = verts[0][j], mx = verts[0][j];
        for (const auto& v : verts) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = to_int64(ceil(mn));
        hi[j] = to_int64(floor(mx));
        if (lo[j] > hi[j]) return {};
    }
    // Small-integer fast path for the common case.
    std::vector<IntVector> a;
    IntVector b;
    bool small = true;
    auto fits = [](const Integer& x) { return abs(x) < (Integer(1) << 30); };
    for (const auto& h : inequalities) {
        IntVector row;
        for (const auto& x : h.normal) {
            small = small && fits(x);
            row.push_back(small ? x.convert_to<std::int64_t>() : 0);
        }
        small = small && fits(h.offset);
        a.push_back(std::move(row));
        b.push_back(small ? h.offset.convert_to<std::int64_t>() : 0);
    }
    for (auto v : hi) small = small && std::llabs(v) < (1LL << 30);
    for (auto v : lo) small = small && std::llabs(v) < (1LL << 30);

    std::vector<LatticePoint> out;
    LatticePoint x = lo;
    while (true) {
        bool in = true;
        if (small) {
            for (std::size_t i = 0; i < a.size() && in; ++i) {
                std::int64_t s = 0;
                for (std::size_t j = 0; j < n; ++j) s += a[i][j] * x[j];
                in = s <= b[i];
            }
            for (const auto& e : equalities)
                in = in && dot(std::span<const Integer>(e.normal), std::span<const std::int64_t>(x)) == e.offset;
        } else {
            in = contains(x);
        }
        if (in) out.push_back(x);
        std::size_t k = 0;
        while (k < n && x[k] == hi[k]) {
            x[k] = lo[k];
            ++k;
        }
        if (k == n) break;
        ++x[k];
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Chart {
    IntegerVector origin;
    IntegerMatrix basis;  // dim vectors of length n
    std::vector<IntegerVector> coords;
};

Chart make_chart(const LatticePolytope& p) {
    const std::size_t n = p.ambient_dim();
    Chart c;
    c.origin = to_integer(p.vertices().front());
    IntegerMatrix eqs;
    for (const auto& e : p.equalities()) eqs.push_back(e.normal);
    c.basis = lattice_kernel_basis(eqs, n);
    RationalMatrix cols(n, RationalVector(c.basis.size()));
    for (std::size_t k = 0; k < c.basis.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) cols[j][k] = Rational(c.basis[k][j]);
    for (const auto& v : p.vertices()) {
        RationalVector rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs[j] = Rational(Integer(v[j]) - c.origin[j]);
        auto y = solve(cols, rhs, c.basis.size());
        if (!y) throw Error(ErrorKind::Inconsistent, "vertex outside its own affine hull lattice");
        IntegerVector iy;
        for (const auto& t : *y) {
            if (boost::multiprecision::denominator(t) != 1)
                throw Error(ErrorKind::Inconsistent, "lattice basis does not span the hull lattice");
            iy.push_back(boost::multiprecision::numerator(t));
        }
        c.coords.push_back(std::move(iy));
    }
    return c;
}

}  // namespace

std::optional<IsomorphismWitness> affinely_isomorphic(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.dim() != q.dim() || p.vertices().size() != q.vertices().size()) return std::nullopt;
    const std::size_t d = static_cast<std::size_t>(p.dim());
    const Chart cp = make_chart(p), cq = make_chart(q);
    const std::size_t m = p.vertices().size();

    IsomorphismWitness w;
    w.p_origin = cp.origin;
    w.q_origin = cq.origin;
    w.p_basis = cp.basis;
    w.q_basis = cq.basis;
    if (d == 0) {
        w.vertex_map = {0};
        return w;
    }

    std::map<IntegerVector, std::size_t> q_index;
    for (std::size_t i = 0; i < m; ++i) q_index[cq.coords[i]] = i;

    // Affinely independent frame in P.
    std::vector<std::size_t> frame{0};
    for (std::size_t i = 1; i < m && frame.size() < d + 1; ++i) {
        std::vector<IntegerVector> pts;
        for (auto f : frame) pts.push_back(cp.coords[f]);
        pts.push_back(cp.coords[i]);
        if (affine_rank(pts) == static_cast<int>(frame.size())) frame.push_back(i);
    }
    // Inverse of the frame difference matrix (columns = differences).
    RationalMatrix mp(d, RationalVector(d));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j) mp[j][k] = Rational(cp.coords[frame[k + 1]][j] - cp.coords[frame[0]][j]);
    RationalMatrix inv(d, RationalVector(d));
    for (std::size_t k = 0; k < d; ++k) {
        RationalVector e(d, Rational(0));
        e[k] = 1;
        auto col = solve(mp, e, d);
        for (std::size_t j = 0; j < d; ++j) inv[j][k] = (*col)[j];
    }

    std::vector<std::size_t> target(d + 1);
    std::vector<bool> used(m, false);
    std::optional<IsomorphismWitness> result;

    std::function<bool(std::size_t)> search = [&](std::size_t level) -> bool {
        if (level <= d) {
            for (std::size_t g = 0; g < m; ++g) {
                if (used[g]) continue;
                used[g] = true;
                target[level] = g;
                if (search(level + 1)) return true;
                used[g] = false;
            }
            return false;
        }
        // U = Mq * Mp^{-1}
        IntegerMatrix u(d, IntegerVector(d));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                Rational s = 0;
                for (std::size_t k = 0; k < d; ++k)
                    s += Rational(cq.coords[target[k + 1]][i] - cq.coords[target[0]][i]) * inv[k][j];
                if (boost::multiprecision::denominator(s) != 1) return false;
                u[i][j] = boost::multiprecision::numerator(s);
            }
        }
        const Integer det = determinant(u);
        if (det != 1 && det != -1) return false;
        IntegerVector c(d);
        for (std::size_t i = 0; i < d; ++i) c[i] = cq.coords[target[0]][i] - idot(u[i], cp.coords[frame[0]]);
        std::vector<std::size_t> vmap(m);
        std::vector<bool> hit(m, false);
        for (std::size_t v = 0; v < m; ++v) {
            IntegerVector img(d);
            for (std::size_t i = 0; i < d; ++i) img[i] = idot(u[i], cp.coords[v]) + c[i];
            auto it = q_index.find(img);
            if (it == q_index.end() || hit[it->second]) return false;
            hit[it->second] = true;
            vmap[v] = it->second;
        }
        w.vertex_map = std::move(vmap);
        w.linear = std::move(u);
        w.translation = std::move(c);
        result = w;
        return true;
    };
    search(0);
    return result;
}

namespace {

nlohmann::json int_array(const IntegerVector& v) {
    auto a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(to_int64(x));
    return a;
}

IntegerVector read_int_array(const nlohmann::json& j, std::size_t n, const char* what) {
    if (!j.is_array() || j.size() != n)
        throw Error(ErrorKind::Parse, std::string(what) + " must be an array of " + std::to_string(n) + " integers");
    IntegerVector out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw Error(ErrorKind::Parse, std::string(what) + " entries must be integers");
        out.emplace_back(x.get<std::int64_t>());
    }
    return out;
}

}  // namespace

nlohmann::json to_json(const LatticePolytope& p) {
    nlohmann::json j;
    j["n"] = p.ambient_dim();
    j["dim"] = p.dim();
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : p.vertices()) j["vertices"].push_back(v);
    j["facets"] = nlohmann::json::array();
    for (const auto& f : p.facets()) j["facets"].push_back({{"normal", int_array(f.normal)}, {"offset", to_int64(f.offset)}});
    j["equalities"] = nlohmann::json::array();
    for (const auto& e : p.equalities())
        j["equalities"].push_back({{"normal", int_array(e.normal)}, {"offset", to_int64(e.offset)}});
    return j;
}

LatticePolytope polytope_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "polytope JSON must be an object");
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<std::int64_t>() < 0)
        throw Error(ErrorKind::Parse, "polytope JSON needs a nonnegative integer \"n\"");
    const auto n = static_cast<std::size_t>(j["n"].get<std::int64_t>());
    if (j.contains("vertices") && j["vertices"].is_array() && !j["vertices"].empty()) {
        std::vector<LatticePoint> pts;
        for (const auto& v : j["vertices"]) {
            const IntegerVector iv = read_int_array(v, n, "vertex");
            LatticePoint p;
            for (const auto& x : iv) p.push_back(to_int64(x));
            pts.push_back(std::move(p));
        }
        return convex_hull(pts);
    }
    HalfspaceSystem sys;
    sys.n = n;
    auto read_rows = [&](const char* key, auto&& sink) {
        if (!j.contains(key)) return;
        if (!j[key].is_array()) throw Error(ErrorKind::Parse, std::string("\"") + key + "\" must be an array");
        for (const auto& row : j[key]) {
            if (!row.is_object() || !row.contains("normal") || !row.contains("offset") ||
                !row["offset"].is_number_integer())
                throw Error(ErrorKind::Parse, std::string("malformed entry in \"") + key + "\"");
            sink(read_int_array(row["normal"], n, "normal"), Integer(row["offset"].get<std::int64_t>()));
        }
    };
    read_rows("facets", [&](IntegerVector a, Integer b) { sys.inequalities.push_back({std::move(a), std::move(b)}); });
    read_rows("equalities", [&](IntegerVector a, Integer b) { sys.equalities.push_back({std::move(a), std::move(b)}); });
    std::vector<LatticePoint> pts;
    for (const auto& v : sys.vertices()) {
        LatticePoint p;
        for (const auto& x : v) {
            if (boost::multiprecision::denominator(x) != 1)
                throw Error(ErrorKind::InvalidArgument, "inequalities define a polytope with non-integral vertices");
            p.push_back(to_int64(boost::multiprecision::numerator(x)));
        }
        pts.push_back(std::move(p));
    }
    return convex_hull(pts);
}

nlohmann::json to_json(const IsomorphismWitness& w) {
    auto rows = [](const IntegerMatrix& m) {
        auto a = nlohmann::json::array();
        for (const auto& r : m) a.push_back(int_array(r));
        return a;
    };
    return {{"vertex_map", w.vertex_map},   {"p_origin", int_array(w.p_origin)},
            {"q_origin", int_array(w.q_origin)}, {"p_basis", rows(w.p_basis)},
            {"q_basis", rows(w.q_basis)},    {"linear", rows(w.linear)},
            {"translation", int_array(w.translation)}};
}

}  // namespace newtonpoly
