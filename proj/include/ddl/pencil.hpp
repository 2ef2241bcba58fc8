#pragma once

#include "ddl/curve.hpp"
#include "ddl/lie.hpp"

#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace ddl {

/// A candidate pencil P_{W,r}: a subspace W of R^{m+n} and the defect r,
/// constrained by 0 < r < m dim(W) / (m+n).
struct PencilCandidate {
    std::vector<std::vector<Rational>> w_basis;
    int r = 0;
};

/// M(s) = [I_m; phi(s)], the m x (m+n) matrix of the extremality criterion.
inline RFMatrix pencil_matrix(const MatrixCurve& curve) {
    RFMatrix M(curve.m(), curve.m() + curve.n());
    for (int i = 0; i < curve.m(); ++i) M(i, i) = RationalFunction(Rational(1));
    M.set_block(0, curve.m(), curve.entries());
    return M;
}

/// dim M(s) W if it is constant on the whole interval and lies strictly
/// between 0 and m dim(W)/(m+n); nullopt otherwise.
///
/// The symbolic rank r over Q(s) is the rank away from finitely many points;
/// constancy holds iff the r x r minors have no common root in the interval,
/// which reduces to a Sturm count on their gcd.
inline std::optional<int> pencil_membership(const MatrixCurve& curve,
                                            const std::vector<std::vector<Rational>>& w_basis) {
    const int d = curve.m() + curve.n();
    const int dw = static_cast<int>(w_basis.size());
    if (dw == 0) return std::nullopt;
    QMatrix W(d, dw);
    for (int j = 0; j < dw; ++j) {
        if (static_cast<int>(w_basis[static_cast<std::size_t>(j)].size()) != d)
            fail("ShapeMismatch", "curve", "pencil basis vectors must live in R^(m+n)");
        for (int i = 0; i < d; ++i) W(i, j) = w_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    if (W.rank() != dw) fail("DependentColumns", "curve", "pencil basis must be independent");

    RFMatrix MW = pencil_matrix(curve) * lift(W);
    const int r = MW.rank();
    if (r > 0) {
        // constancy: the r x r minors must not vanish simultaneously in I
        Polynomial g;  // gcd of the nonzero minor numerators
        std::vector<int> rowidx, colidx;
        std::function<void(int, int)> pick_cols;
        std::function<void(int, int)> pick_rows = [&](int start, int chosen) {
            if (chosen == r) {
                colidx.clear();
                pick_cols(0, 0);
                return;
            }
            for (int i = start; i <= MW.rows() - (r - chosen); ++i) {
                rowidx.push_back(i);
                pick_rows(i + 1, chosen + 1);
                rowidx.pop_back();
            }
        };
        pick_cols = [&](int start, int chosen) {
            if (chosen == r) {
                RFMatrix sub(r, r);
                for (int a = 0; a < r; ++a)
                    for (int b = 0; b < r; ++b) sub(a, b) = MW(rowidx[static_cast<std::size_t>(a)], colidx[static_cast<std::size_t>(b)]);
                RationalFunction det = sub.det();
                if (!det.is_zero()) g = g.is_zero() ? det.num() : Polynomial::gcd(g, det.num());
                return;
            }
            for (int j = start; j <= MW.cols() - (r - chosen); ++j) {
                colidx.push_back(j);
                pick_cols(j + 1, chosen + 1);
                colidx.pop_back();
            }
        };
        pick_rows(0, 0);
        if (!g.is_constant() && count_real_roots(g, curve.lo(), curve.hi()) > 0)
            return std::nullopt;  // rank drops somewhere in the interval
    }
    // bound: 0 < r < m dim(W) / (m+n)
    if (r <= 0) return std::nullopt;
    if (Rational(r) >= Rational(curve.m() * dw, d)) return std::nullopt;
    return r;
}

namespace detail {

using Subspace = std::vector<std::vector<Rational>>;  // basis rows

inline Subspace canonical(const Subspace& basis, int width) {
    if (basis.empty()) return {};
    QMatrix m(static_cast<int>(basis.size()), width);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < width; ++j) m(static_cast<int>(i), j) = basis[i][static_cast<std::size_t>(j)];
    auto [R, pivots] = m.rref();
    Subspace out;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::vector<Rational> row(static_cast<std::size_t>(width));
        for (int j = 0; j < width; ++j) row[static_cast<std::size_t>(j)] = R(static_cast<int>(r), j);
        out.push_back(std::move(row));
    }
    return out;
}

inline Subspace intersect(const Subspace& a, const Subspace& b, int width) {
    if (a.empty() || b.empty()) return {};
    QMatrix m(width, static_cast<int>(a.size() + b.size()));
    for (std::size_t j = 0; j < a.size(); ++j)
        for (int i = 0; i < width; ++i) m(i, static_cast<int>(j)) = a[j][static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < b.size(); ++j)
        for (int i = 0; i < width; ++i) m(i, static_cast<int>(a.size() + j)) = -b[j][static_cast<std::size_t>(i)];
    Subspace out;
    for (const auto& k : m.kernel()) {
        std::vector<Rational> v(static_cast<std::size_t>(width), Rational(0));
        for (std::size_t j = 0; j < a.size(); ++j)
            for (int i = 0; i < width; ++i) v[static_cast<std::size_t>(i)] += k[j] * a[j][static_cast<std::size_t>(i)];
        out.push_back(std::move(v));
    }
    return canonical(out, width);
}

inline Subspace join(const Subspace& a, const Subspace& b, int width) {
    Subspace all = a;
    all.insert(all.end(), b.begin(), b.end());
    return canonical(all, width);
}

inline std::string key_of(const Subspace& s) {
    std::string k;
    for (const auto& row : s) {
        for (const auto& v : row) k += to_string(v) + ",";
        k += ";";
    }
    return k;
}

}  // namespace detail

/// Kernel-intersection pencil search. Sound when positive: any returned
/// candidate has been verified by pencil_membership. A nullopt result is not
/// a proof of absence.
inline std::optional<PencilCandidate> pencil_search(const MatrixCurve& curve, int max_dim) {
    const int d = curve.m() + curve.n();
    if (max_dim > d) fail("ShapeMismatch", "curve", "max_dim must be <= m+n");
    // Kernels of M(s_i) at sampled points.
    std::vector<detail::Subspace> kernels;
    for (const auto& s : curve.grid(6)) {
        QMatrix M(curve.m(), d);
        for (int i = 0; i < curve.m(); ++i) M(i, i) = Rational(1);
        M.set_block(0, curve.m(), curve.eval(s));
        detail::Subspace ker;
        for (const auto& k : M.kernel()) ker.push_back(k);
        kernels.push_back(detail::canonical(ker, d));
    }
    std::vector<detail::Subspace> candidates;
    std::set<std::string> seen;
    auto offer = [&](const detail::Subspace& sub) {
        if (sub.empty() || static_cast<int>(sub.size()) > max_dim) return;
        auto key = detail::key_of(sub);
        if (seen.insert(key).second) candidates.push_back(sub);
    };
    for (const auto& k : kernels) offer(k);
    for (std::size_t i = 0; i < kernels.size(); ++i)
        for (std::size_t j = i + 1; j < kernels.size(); ++j) {
            offer(detail::intersect(kernels[i], kernels[j], d));
            offer(detail::join(kernels[i], kernels[j], d));
            for (std::size_t l = j + 1; l < kernels.size(); ++l) {
                offer(detail::intersect(detail::intersect(kernels[i], kernels[j], d), kernels[l], d));
                offer(detail::join(detail::join(kernels[i], kernels[j], d), kernels[l], d));
            }
        }
    for (const auto& cand : candidates) {
        auto r = pencil_membership(curve, cand);
        if (r) return PencilCandidate{cand, *r};
    }
    return std::nullopt;
}

}  // namespace ddl
