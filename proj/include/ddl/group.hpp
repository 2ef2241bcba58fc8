#pragma once

#include "ddl/errors.hpp"
#include "ddl/matrix.hpp"

namespace ddl {

/// Element of SL(m+n, Q) tagged with its block role.
struct GroupElement {
    enum class Role { UPlus, UMinus, Torus, ZBlock, Sigma, Other };

    QMatrix mat;
    int m = 0, n = 0;
    Role role = Role::Other;

    int dim() const { return m + n; }

    /// u(Phi) = [[I_m, Phi], [0, I_n]] for Phi in M(m x n).
    static GroupElement u_plus(const QMatrix& phi) {
        int m = phi.rows(), n = phi.cols();
        QMatrix g = QMatrix::identity(m + n);
        g.set_block(0, m, phi);
        return {g, m, n, Role::UPlus};
    }

    /// u^-(X) = [[I_m, 0], [X, I_n]] for X in M(n x m).
    static GroupElement u_minus(const QMatrix& x) {
        int n = x.rows(), m = x.cols();
        QMatrix g = QMatrix::identity(m + n);
        g.set_block(m, 0, x);
        return {g, m, n, Role::UMinus};
    }

    /// a(log N) = diag(N^n I_m, N^-m I_n), N rational > 0.
    static GroupElement torus(const Rational& N, int m, int n) {
        if (N <= 0) fail("InvalidN", "flow", "torus scale must be positive");
        QMatrix g(m + n, m + n);
        Rational up = rat_pow(N, n), down = rat_pow(N, -static_cast<long>(m));
        for (int i = 0; i < m; ++i) g(i, i) = up;
        for (int i = 0; i < n; ++i) g(m + i, m + i) = down;
        return {g, m, n, Role::Torus};
    }

    /// z = diag(B, C) in Z_H(A); requires det(B) det(C) = 1.
    static GroupElement z_block(const QMatrix& B, const QMatrix& C) {
        if (!B.square() || !C.square()) fail("NonSquare", "curve", "z blocks must be square");
        if (B.det() * C.det() != 1) fail("NotUnimodular", "curve", "z needs det(B) det(C) = 1");
        int m = B.rows(), n = C.rows();
        QMatrix g(m + n, m + n);
        g.set_block(0, 0, B);
        g.set_block(m, m, C);
        return {g, m, n, Role::ZBlock};
    }

    /// u'(Y) = diag(I_m, [[I_m, Y],[0, I_{n-m}]]) in Z_H(A), Y in M(m x (n-m)).
    static GroupElement u_prime(const QMatrix& y, int m, int n) {
        if (y.rows() != m || y.cols() != n - m) fail("ShapeMismatch", "curve", "u' block must be m x (n-m)");
        QMatrix c = QMatrix::identity(n);
        c.set_block(0, m, y);
        return z_block(QMatrix::identity(m), c);
    }

    /// sigma(X) = u(X) u^-(-X^{-1}) u(X); the Weyl-type element of SL(2,X).
    static GroupElement sigma(const QMatrix& x, int m, int n) {
        if (x.rows() != m || x.cols() != m) fail("ShapeMismatch", "rep", "sigma block must be m x m");
        QMatrix xi;
        try {
            xi = x.inverse();
        } catch (const std::domain_error&) {
            fail("SingularX", "rep", "sigma(X) needs X invertible");
        }
        int d = m + n;
        QMatrix g(d, d);
        g.set_block(0, m, x);
        g.set_block(m, 0, -xi);
        for (int i = 2 * m; i < d; ++i) g(i, i) = Rational(1);
        return {g, m, n, Role::Sigma};
    }

    QMatrix B() const { return mat.block(0, 0, m, m); }
    QMatrix C() const { return mat.block(m, m, n, n); }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        if (a.dim() != b.dim()) fail("ShapeMismatch", "rep", "group element dimension mismatch");
        return {a.mat * b.mat, a.m, a.n, Role::Other};
    }
};

/// [E_b(m); 0]: the m x n matrix with I_b in the top-left corner.
inline QMatrix eb_target(int b, int m, int n) {
    QMatrix t(m, n);
    for (int i = 0; i < b; ++i) t(i, i) = Rational(1);
    return t;
}

}  // namespace ddl
