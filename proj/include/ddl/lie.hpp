#pragma once

#include "ddl/errors.hpp"
#include "ddl/group.hpp"
#include "ddl/matrix.hpp"

#include <vector>

namespace ddl {

/// Traceless rational matrix (element of sl(d, Q)).
struct LieElement {
    QMatrix matrix;

    explicit LieElement(QMatrix m) : matrix(std::move(m)) {
        if (!matrix.square()) fail("NonSquare", "rep", "Lie element must be square");
        Rational tr(0);
        for (int i = 0; i < matrix.rows(); ++i) tr += matrix(i, i);
        if (tr != 0) fail("NotTraceless", "rep", "Lie element must be traceless");
    }
};

inline QMatrix bracket(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

/// n^+(X): X placed in the (block 1, block 2) slot of sl(m+n), blocks [m|m|n-m].
inline QMatrix n_plus(const QMatrix& x, int n_total) {
    int m = x.rows();
    QMatrix g(n_total, n_total);
    g.set_block(0, m, x);
    return g;
}

/// n^-(X): X placed in the (block 2, block 1) slot.
inline QMatrix n_minus(const QMatrix& x, int n_total) {
    int m = x.rows();
    QMatrix g(n_total, n_total);
    g.set_block(m, 0, x);
    return g;
}

/// fraka = diag(I_m, -I_m, 0): the Cartan element of the embedded sl(2).
inline QMatrix fraka(int m, int n_total) {
    QMatrix g(n_total, n_total);
    for (int i = 0; i < m; ++i) {
        g(i, i) = Rational(1);
        g(m + i, m + i) = Rational(-1);
    }
    return g;
}

/// Flattens a matrix into a coordinate row (row-major).
inline std::vector<Rational> flatten(const QMatrix& m) {
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

/// Incremental rational span with exact rank tracking.
class SpanTracker {
public:
    explicit SpanTracker(std::size_t width) : width_(width) {}

    /// Returns true if v was independent of the current span.
    bool add(std::vector<Rational> v) {
        for (const auto& row : rows_) {
            std::size_t p = pivot_of(row);
            if (v[p] != 0) {
                Rational f = v[p] / row[p];
                for (std::size_t i = 0; i < width_; ++i) v[i] -= f * row[i];
            }
        }
        std::size_t p = 0;
        while (p < width_ && v[p] == 0) ++p;
        if (p == width_) return false;
        rows_.push_back(std::move(v));
        return true;
    }

    bool contains(std::vector<Rational> v) const {
        for (const auto& row : rows_) {
            std::size_t p = pivot_of(row);
            if (v[p] != 0) {
                Rational f = v[p] / row[p];
                for (std::size_t i = 0; i < width_; ++i) v[i] -= f * row[i];
            }
        }
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }

    int dim() const { return static_cast<int>(rows_.size()); }

private:
    static std::size_t pivot_of(const std::vector<Rational>& row) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        return p;
    }
    std::size_t width_;
    std::vector<std::vector<Rational>> rows_;
};

/// Dimension of the Lie algebra generated by the given matrices, computed
/// by iterated brackets until the span stabilizes.
inline int lie_closure_dim(const std::vector<QMatrix>& generators, int ambient_dim_cap) {
    if (generators.empty()) return 0;
    int d = generators.front().rows();
    SpanTracker span(static_cast<std::size_t>(d) * d);
    std::vector<QMatrix> basis;
    for (const auto& g : generators)
        if (span.add(flatten(g))) basis.push_back(g);
    std::size_t frontier_start = 0;
    while (frontier_start < basis.size() && span.dim() < ambient_dim_cap) {
        std::size_t frontier_end = basis.size();
        for (std::size_t i = frontier_start; i < frontier_end; ++i)
            for (std::size_t j = 0; j < frontier_end; ++j) {
                if (i == j) continue;
                QMatrix br = bracket(basis[i], basis[j]);
                if (span.add(flatten(br))) basis.push_back(br);
                if (span.dim() >= ambient_dim_cap) return span.dim();
            }
        frontier_start = frontier_end;
    }
    return span.dim();
}

/// The embedded sl(2) attached to an invertible X: n^+(X), n^-(X^{-1}), fraka.
struct SL2Triple {
    QMatrix X;      // invertible m x m
    int m = 0, n = 0;
    QMatrix nplus, nminus, a;
};

inline SL2Triple sl2_triple(const QMatrix& x, int m, int n) {
    if (x.rows() != m || x.cols() != m) fail("ShapeMismatch", "rep", "X must be m x m");
    if (2 * m > m + n) fail("ShapeMismatch", "rep", "need 2m <= m+n");
    QMatrix xi;
    try {
        xi = x.inverse();
    } catch (const std::domain_error&) {
        fail("SingularX", "rep", "sl2 triple needs X invertible");
    }
    int d = m + n;
    SL2Triple t;
    t.X = x;
    t.m = m;
    t.n = n;
    t.nplus = n_plus(x, d);
    t.nminus = n_minus(xi, d);
    t.a = fraka(m, d);
    // bracket relations are exact identities; verify them here
    if (!(bracket(t.a, t.nplus) == Rational(2) * t.nplus)) fail("BracketFailure", "rep", "[a, n+] != 2 n+");
    if (!(bracket(t.a, t.nminus) == Rational(-2) * t.nminus)) fail("BracketFailure", "rep", "[a, n-] != -2 n-");
    if (!(bracket(t.nplus, t.nminus) == t.a)) fail("BracketFailure", "rep", "[n+, n-] != a");
    return t;
}

/// Group elements of SL(2,X): u(r) = exp(r n^+(X)), u^-(r) = exp(r n^-(X^{-1})),
/// sigma(r) corresponding to [[0, r], [-1/r, 0]].
inline GroupElement sl2_u(const SL2Triple& t, const Rational& r) {
    QMatrix g = QMatrix::identity(t.m + t.n) + r * t.nplus;
    return {g, t.m, t.n, GroupElement::Role::UPlus};
}
inline GroupElement sl2_uminus(const SL2Triple& t, const Rational& r) {
    QMatrix g = QMatrix::identity(t.m + t.n) + r * t.nminus;
    return {g, t.m, t.n, GroupElement::Role::UMinus};
}
inline GroupElement sl2_a(const SL2Triple& t, const Rational& N) {
    // exp(log(N) a): diag(N I_m, N^{-1} I_m, I_{n-m})
    if (N <= 0) fail("InvalidN", "rep", "torus scale must be positive");
    QMatrix g = QMatrix::identity(t.m + t.n);
    for (int i = 0; i < t.m; ++i) {
        g(i, i) = N;
        g(t.m + i, t.m + i) = Rational(1) / N;
    }
    return {g, t.m, t.n, GroupElement::Role::Torus};
}
inline GroupElement sl2_sigma(const SL2Triple& t, const Rational& r) {
    if (r == 0) fail("ZeroR", "rep", "sigma(r) needs r != 0");
    return sl2_u(t, r) * sl2_uminus(t, Rational(-1) / r) * sl2_u(t, r);
}

}  // namespace ddl
