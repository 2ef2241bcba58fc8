#pragma once

#include "ddl/curve.hpp"
#include "ddl/genericity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ddl {

namespace detail {

/// Exact rational square root, if one exists.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    Int ns = boost::multiprecision::sqrt(num(r));
    Int ds = boost::multiprecision::sqrt(den(r));
    if (ns * ns != num(r) || ds * ds != den(r)) return std::nullopt;
    return Rational(ns, ds);
}

}  // namespace detail

/// z = (B, C) in Z_H(A) with B * M * C^{-1} = [E_b(m); 0], for a rank-b
/// matrix M.
///
/// For b < m the determinant constraint det(B) det(C) = 1 is absorbed into a
/// zero row of the normal form; for b = m < n into a kernel column. In the
/// forced case b = m = n the pair satisfies C = B M, so det(B)^2 det(M) = 1:
/// an exact rational z exists iff det(M) is the square of a rational.
inline GroupElement normalizer_for(const QMatrix& M) {
    const int m = M.rows(), n = M.cols();

    // Row reduction M -> R = B1 M, rref with pivot bookkeeping.
    QMatrix R = M, B1 = QMatrix::identity(m);
    int row = 0;
    std::vector<int> pivots;
    for (int c = 0; c < n && row < m; ++c) {
        int p = -1;
        for (int r = row; r < m; ++r)
            if (R(r, c) != 0) { p = r; break; }
        if (p < 0) continue;
        R.swap_rows(p, row);
        B1.swap_rows(p, row);
        Rational piv = R(row, c);
        for (int j = 0; j < n; ++j) R(row, j) /= piv;
        for (int j = 0; j < m; ++j) B1(row, j) /= piv;
        for (int r = 0; r < m; ++r) {
            if (r == row || R(r, c) == 0) continue;
            Rational f = R(r, c);
            for (int j = 0; j < n; ++j) R(r, j) -= f * R(row, j);
            for (int j = 0; j < m; ++j) B1(r, j) -= f * B1(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    const int b = static_cast<int>(pivots.size());
    if (b == 0) fail("ZeroDerivative", "curve", "matrix has rank 0");

    QMatrix B, C;
    if (b == m && m == n) {
        Rational detM = M.det();
        if (detM < 0)
            fail("NonSquareDeterminant", "curve",
                 "det(phi') = " + to_string(detM) + " < 0: det(B)^2 det(phi') = 1 unsolvable over R");
        auto root = detail::rational_sqrt(detM);
        if (!root)
            fail("NonSquareDeterminant", "curve",
                 "det(phi') = " + to_string(detM) + " is not a rational square: no exact z over Q");
        B = QMatrix::identity(m);
        B(0, 0) = Rational(1) / *root;
        C = B * M;  // forced: B M C^{-1} = I
    } else {
        // Column side: K = [pivot unit columns | kernel basis] gives R K = [E_b; 0].
        QMatrix K(n, n);
        for (int i = 0; i < b; ++i) K(pivots[static_cast<std::size_t>(i)], i) = Rational(1);
        auto ker = R.kernel();
        for (std::size_t j = 0; j < ker.size(); ++j)
            for (int i = 0; i < n; ++i) K(i, b + static_cast<int>(j)) = ker[j][static_cast<std::size_t>(i)];
        B = B1;
        C = K.inverse();
        Rational d = B.det() * C.det();
        if (d != 1) {
            if (b < m) {
                QMatrix T = QMatrix::identity(m);
                T(b, b) = Rational(1) / d;  // scales a zero row of [E_b; 0]
                B = T * B;
            } else {  // b == m < n: scale a kernel column direction
                QMatrix W = QMatrix::identity(n);
                W(b, b) = d;
                C = W.inverse() * C;
            }
        }
    }
    GroupElement z = GroupElement::z_block(B, C);
    if (!(B * M * C.inverse() == eb_target(b, m, n)))
        fail("Internal", "curve", "normalizer verification failed");
    return z;
}

/// z(s) of the flattened-measure construction: z . phi^(1)(s) = [E_b(m); 0].
inline GroupElement derivative_normalizer(const MatrixCurve& curve, const Rational& s) {
    RFMatrix d = curve.derivative_entries();
    if (!curve.contains(s)) fail("OutOfInterval", "curve", to_string(s) + " outside the interval");
    if (!defined_at(d, s)) fail("PoleAtPoint", "curve", "derivative undefined at " + to_string(s));
    QMatrix M = eval(d, s);
    if (M.rank() == 0) fail("ZeroDerivative", "curve", "phi^(1)(" + to_string(s) + ") = 0");
    return normalizer_for(M);
}

// ---------------------------------------------------------------------------
// Standard-form reduction for n = k m.
// ---------------------------------------------------------------------------

struct StandardFormResult {
    GroupElement zprime;              // z' in Z_H(A)
    Rational base_point;              // s0
    std::vector<Rational> witnesses;  // s_1, ..., s_k
    MatrixCurve conjugated_curve;     // z' . phi

    /// Exact re-check of the defining property: (z'.phi)(s_i) - (z'.phi)(s0)
    /// has the i-th m x m block invertible and all others zero.
    bool verify() const {
        const int m = conjugated_curve.m(), n = conjugated_curve.n();
        const int k = n / m;
        if (static_cast<int>(witnesses.size()) != k) return false;
        QMatrix at0 = conjugated_curve.eval(base_point);
        for (int i = 0; i < k; ++i) {
            QMatrix diff = conjugated_curve.eval(witnesses[static_cast<std::size_t>(i)]) - at0;
            for (int blk = 0; blk < k; ++blk) {
                QMatrix block = diff.block(0, blk * m, m, m);
                if (blk == i) {
                    if (block.rank() != m) return false;
                } else if (!block.is_zero()) {
                    return false;
                }
            }
        }
        return true;
    }
};

namespace detail {

struct StandardRec {
    QMatrix C;                        // z = (I_m, C); det C = 1 maintained
    std::vector<Rational> witnesses;  // s_1, ..., s_k
};

/// Induction of the reduction lemma. Precondition: work(s0) = 0.
inline std::optional<StandardRec> standard_rec(const MatrixCurve& work, const Rational& s0, int k) {
    const int m = work.m(), n = work.n();
    if (k == 1) {
        for (const auto& s1 : work.grid(24)) {
            if (s1 == s0) continue;
            if (work.eval(s1).rank() == m) return StandardRec{QMatrix::identity(n), {s1}};
        }
        return std::nullopt;
    }
    int attempts = 0;
    for (const auto& s1 : work.grid(24)) {
        if (s1 == s0) continue;
        if (eval(work.first_block(), s1).rank() != m) continue;
        MatrixCurve psi = psi_reduce(work, s0);  // = phi_1^{-1} phi_rest since work(s0) = 0
        if (!psi.defined_at(s1)) continue;
        MatrixCurve psi_t = psi.translated(s1);
        auto sub = standard_rec(psi_t, s1, k - 1);
        if (!sub) {
            if (++attempts >= 12) return std::nullopt;
            continue;
        }
        // Compose z = z_1 * diag(I_m, C_sub) * u'(psi(s1)); all B-parts are I_m.
        QMatrix C_uprime = QMatrix::identity(n);
        C_uprime.set_block(0, m, psi.eval(s1));

        QMatrix C_embedded = QMatrix::identity(n);
        C_embedded.set_block(m, m, sub->C);

        // psi_hat = (I_m, C_sub) . psi_t: the standardized sub-curve; its
        // invertible blocks define z_1.
        MatrixCurve psi_hat = psi_t.z_act(QMatrix::identity(m), sub->C);
        QMatrix C_z1 = QMatrix::identity(n);
        bool ok = true;
        for (int j = 1; j < k; ++j) {
            const Rational& sj = sub->witnesses[static_cast<std::size_t>(j - 1)];
            QMatrix blockj = psi_hat.eval(sj).block(0, (j - 1) * m, m, m);
            if (blockj.rank() != m) { ok = false; break; }
            C_z1.set_block(j * m, 0, blockj.inverse());
        }
        if (!ok) {
            if (++attempts >= 12) return std::nullopt;
            continue;
        }
        StandardRec out;
        out.C = C_z1 * C_embedded * C_uprime;
        out.witnesses.push_back(s1);
        for (const auto& s : sub->witnesses) out.witnesses.push_back(s);
        return out;
    }
    return std::nullopt;
}

}  // namespace detail

/// Conjugates the curve into standard form at s0 (n = k m), following the
/// inductive construction: psi-reduce, recurse on the (m, (k-1)m) curve, then
/// compose with the explicit block-lower-triangular correction.
inline StandardFormResult standard_form(const MatrixCurve& curve, const Rational& s0) {
    const int m = curve.m(), n = curve.n();
    if (n % m != 0) fail("ShapeMismatch", "curve", "standard form needs n = k m");
    const int k = n / m;
    if (!curve.contains(s0)) fail("OutOfInterval", "curve", "base point " + to_string(s0) + " outside the interval");
    if (!curve.defined_at(s0)) fail("PoleAtPoint", "curve", "curve undefined at base point");
    MatrixCurve work = curve.translated(s0);
    auto rec = detail::standard_rec(work, s0, k);
    if (!rec) fail("NotGenericAtPoint", "curve", "no standard form found at s0 = " + to_string(s0));

    GroupElement z = GroupElement::z_block(QMatrix::identity(m), rec->C);
    StandardFormResult result{z, s0, rec->witnesses, curve.z_act(z)};
    if (!result.verify()) fail("Internal", "curve", "standard form verification failed");
    return result;
}

}  // namespace ddl
