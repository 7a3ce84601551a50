#include "newtonpoly/linalg.hpp"

#include "newtonpoly/errors.hpp"


#include <utility>

namespace newtonpoly {

RowEchelon rref(RationalMatrix m, std::size_t cols) {
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        const Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& m, std::size_t cols) { return rref(m, cols).pivots.size(); }

std::size_t rank(const IntegerMatrix& m, std::size_t cols) { return rank(to_rational(m), cols); }

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(to_rational_vector(std::span<const Integer>(row)));
    return out;
}

IntegerMatrix kernel_basis(const RationalMatrix& m, std::size_t cols) {
    const RowEchelon e = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    IntegerMatrix out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
        IntegerVector iv = integerize(v);
        for (const auto& x : iv) {
            if (x == 0) continue;
            if (x < 0)
                for (auto& y : iv) y = -y;
            break;
        }
        out.push_back(std::move(iv));
    }
    return out;
}

IntegerMatrix kernel_basis(const IntegerMatrix& m, std::size_t cols) { return kernel_basis(to_rational(m), cols); }

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& rhs, std::size_t cols) {
    if (m.size() != rhs.size()) throw Error(ErrorKind::InvalidArgument, "solve: dimension mismatch");
    RationalMatrix aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
    const RowEchelon e = rref(std::move(aug), cols + 1);
    RationalVector x(cols, Rational(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == cols) return std::nullopt;
        x[e.pivots[r]] = e.rows[r][cols];
    }
    return x;
}

Integer determinant(IntegerMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

IntegerMatrix lattice_kernel_basis(const IntegerMatrix& m, std::size_t cols) {
    // Column operations on m, mirrored on u = identity; columns of u beyond the
    // echelon part span the integer kernel.
    IntegerMatrix a = m;
    IntegerMatrix u(cols, IntegerVector(cols, Integer(0)));
    for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
    auto col_op = [&](std::size_t j, std::size_t k, const Integer& p, const Integer& q, const Integer& r,
                      const Integer& s) {
        // (col_j, col_k) <- (p col_j + q col_k, r col_j + s col_k)
        for (auto* mat : {&a, &u}) {
            for (auto& row : *mat) {
                const Integer x = row[j], y = row[k];
                row[j] = p * x + q * y;
                row[k] = r * x + s * y;
            }
        }
    };
    std::size_t lead = 0;
    for (std::size_t row = 0; row < a.size() && lead < cols; ++row) {
        for (std::size_t k = lead + 1; k < cols; ++k) {
            if (a[row][k] == 0) continue;
            const Integer x = a[row][lead], y = a[row][k];
            if (x == 0) {
                col_op(lead, k, 0, 1, 1, 0);
                continue;
            }
            // extended gcd: g = p x + q y
            Integer old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
            while (r != 0) {
                const Integer qt = old_r / r;
                Integer tmp = old_r - qt * r;
                old_r = r;
                r = tmp;
                tmp = old_s - qt * s;
                old_s = s;
                s = tmp;
                tmp = old_t - qt * t;
                old_t = t;
                t = tmp;
            }
            const Integer g = old_r;
            // [p r; q s] has determinant p*s - q*r = (old_s*x + old_t*y)/g = 1
            col_op(lead, k, old_s, old_t, -y / g, x / g);
        }
        if (a[row][lead] != 0) ++lead;
    }
    IntegerMatrix basis;
    for (std::size_t k = lead; k < cols; ++k) {
        IntegerVector v(cols);
        for (std::size_t i = 0; i < cols; ++i) v[i] = u[i][k];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

template <class Vec>
int affine_rank_impl(const std::vector<Vec>& points) {
    if (points.empty()) return -1;
    const std::size_t n = points.front().size();
    RationalMatrix diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        RationalVector d(n);
        for (std::size_t j = 0; j < n; ++j) d[j] = Rational(points[i][j]) - Rational(points[0][j]);
        diffs.push_back(std::move(d));
    }
    return static_cast<int>(rank(diffs, n));
}

}  // namespace

int affine_rank(const std::vector<IntVector>& points) { return affine_rank_impl(points); }
int affine_rank(const std::vector<IntegerVector>& points) { return affine_rank_impl(points); }

}  // namespace newtonpoly
