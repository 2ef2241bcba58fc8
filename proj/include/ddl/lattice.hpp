#pragma once

#include "ddl/errors.hpp"
#include "ddl/matrix.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace ddl {

/// Full-rank lattice with a tracked scalar: the represented basis is
/// scale * cols. Columns stay integral; the scalar absorbs the huge
/// dynamic range of diagonal flows.
struct IntegerLatticeBasis {
    int dim = 0;
    std::vector<std::vector<Int>> cols;  // cols[j] is the j-th basis vector
    Rational scale = Rational(1);

    static IntegerLatticeBasis from_rational(const QMatrix& m) {
        if (m.rows() != m.cols()) fail("NonSquare", "exactalg", "lattice basis must be square");
        IntegerLatticeBasis b;
        b.dim = m.rows();
        Int d = 1;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) d = boost::multiprecision::lcm(d, den(m(i, j)));
        b.scale = Rational(1, d);
        b.cols.assign(b.dim, std::vector<Int>(b.dim));
        for (int j = 0; j < b.dim; ++j)
            for (int i = 0; i < b.dim; ++i) b.cols[j][static_cast<std::size_t>(i)] = num(m(i, j)) * (d / den(m(i, j)));
        return b;
    }

    static IntegerLatticeBasis identity(int n) {
        IntegerLatticeBasis b;
        b.dim = n;
        b.cols.assign(n, std::vector<Int>(n, 0));
        for (int i = 0; i < n; ++i) b.cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        return b;
    }

    QMatrix to_rational() const {
        QMatrix m(dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) m(i, j) = scale * Rational(cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        return m;
    }

    /// det of the integer columns (not including scale).
    Rational int_det() const {
        QMatrix m(dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) m(i, j) = Rational(cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        return m.det();
    }

    /// det of the represented basis: scale^dim * int_det.
    Rational represented_det() const { return rat_pow(scale, dim) * int_det(); }

    /// Gram determinant of the integer columns.
    Int gram_det() const {
        QMatrix g(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                Int s = 0;
                for (int k = 0; k < dim; ++k) s += cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                g(i, j) = Rational(s);
            }
        Rational d = g.det();
        return num(d);  // integer by construction
    }
};

namespace detail {

struct Gso {
    std::vector<std::vector<Rational>> mu;  // mu[i][j], j < i
    std::vector<Rational> q;                // squared norms of the GS vectors
};

inline Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Gso gram_schmidt(const std::vector<std::vector<Int>>& cols) {
    const int n = static_cast<int>(cols.size());
    Gso g;
    g.mu.assign(n, std::vector<Rational>(n, Rational(0)));
    g.q.assign(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            Rational m(dot(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]));
            for (int k = 0; k < j; ++k) m -= g.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * g.mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] * g.q[static_cast<std::size_t>(k)];
            if (g.q[static_cast<std::size_t>(j)] == 0) fail("DependentColumns", "exactalg", "Gram-Schmidt hit a zero vector");
            g.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m / g.q[static_cast<std::size_t>(j)];
        }
        Rational qi(dot(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(i)]));
        for (int k = 0; k < i; ++k) qi -= g.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * g.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * g.q[static_cast<std::size_t>(k)];
        if (qi == 0) fail("DependentColumns", "exactalg", "columns are linearly dependent");
        g.q[static_cast<std::size_t>(i)] = qi;
    }
    return g;
}

inline Int sup_norm(const std::vector<Int>& v) {
    Int m = 0;
    for (const auto& x : v) {
        Int a = int_abs(x);
        if (a > m) m = a;
    }
    return m;
}

/// Enumerates every nonzero integer coefficient vector x with
/// ||cols * x||_2^2 <= bound(), exact arithmetic throughout. bound() is
/// re-read at every pruning test, so the caller may shrink it mid-search.
class Enumerator {
public:
    Enumerator(const std::vector<std::vector<Int>>& cols, const Gso& gso)
        : cols_(cols), gso_(gso), n_(static_cast<int>(cols.size())) {}

    void run(const std::function<Rational()>& bound, const std::function<void(const std::vector<Int>&)>& visit) {
        x_.assign(static_cast<std::size_t>(n_), Int(0));
        center_.assign(static_cast<std::size_t>(n_), Rational(0));
        spent_.assign(static_cast<std::size_t>(n_) + 1, Rational(0));
        bound_ = &bound;
        visit_ = &visit;
        descend(n_ - 1);
    }

private:
    // Contribution of level i given x_i: (x_i + c_i)^2 * q_i.
    Rational level_cost(int i, const Int& xi) const {
        Rational t = Rational(xi) + center_[static_cast<std::size_t>(i)];
        return t * t * gso_.q[static_cast<std::size_t>(i)];
    }

    void descend(int i) {
        if (i < 0) {
            bool all_zero = true;
            for (const auto& v : x_)
                if (v != 0) { all_zero = false; break; }
            if (!all_zero) (*visit_)(x_);
            return;
        }
        Rational c(0);
        for (int j = i + 1; j < n_; ++j) c += Rational(x_[static_cast<std::size_t>(j)]) * gso_.mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        center_[static_cast<std::size_t>(i)] = c;
        const Rational spent = spent_[static_cast<std::size_t>(i) + 1];

        Int x0 = rat_round(-c);
        // zig-zag outward from the center of the window
        for (int dir = 0; dir < 2; ++dir) {
            Int xi = dir == 0 ? x0 : x0 + 1;
            Int step = dir == 0 ? -1 : 1;
            while (true) {
                Rational cost = level_cost(i, xi);
                if (spent + cost > (*bound_)()) break;
                x_[static_cast<std::size_t>(i)] = xi;
                spent_[static_cast<std::size_t>(i)] = spent + cost;
                descend(i - 1);
                xi += step;
            }
        }
        x_[static_cast<std::size_t>(i)] = 0;
    }

    const std::vector<std::vector<Int>>& cols_;
    const Gso& gso_;
    int n_;
    std::vector<Int> x_;
    std::vector<Rational> center_;
    std::vector<Rational> spent_;
    const std::function<Rational()>* bound_ = nullptr;
    const std::function<void(const std::vector<Int>&)>* visit_ = nullptr;
};

inline std::vector<Int> apply_cols(const std::vector<std::vector<Int>>& cols, const std::vector<Int>& x) {
    std::vector<Int> v(cols.size(), Int(0));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (x[j] == 0) continue;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += x[j] * cols[j][i];
    }
    return v;
}

}  // namespace detail

/// LLL with parameter delta in (1/4, 1); exact rational Gram-Schmidt.
/// Output generates the same lattice (unimodular transform).
inline IntegerLatticeBasis lll_reduce(const IntegerLatticeBasis& basis, const Rational& delta = Rational(3, 4)) {
    if (!(delta > Rational(1, 4) && delta < 1)) fail("InvalidDelta", "exactalg", "LLL needs 1/4 < delta < 1");
    IntegerLatticeBasis b = basis;
    const int n = b.dim;
    if (n <= 1) {
        detail::gram_schmidt(b.cols);  // dependence check
        return b;
    }
    auto gso = detail::gram_schmidt(b.cols);
    int k = 1;
    while (k < n) {
        for (int j = k - 1; j >= 0; --j) {
            Rational mu = gso.mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            if (rat_abs(mu) > Rational(1, 2)) {
                Int r = rat_round(mu);
                for (int i = 0; i < n; ++i) b.cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] -= r * b.cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                gso = detail::gram_schmidt(b.cols);
            }
        }
        Rational mu = gso.mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)];
        if (gso.q[static_cast<std::size_t>(k)] >= (delta - mu * mu) * gso.q[static_cast<std::size_t>(k - 1)]) {
            ++k;
        } else {
            std::swap(b.cols[static_cast<std::size_t>(k)], b.cols[static_cast<std::size_t>(k - 1)]);
            gso = detail::gram_schmidt(b.cols);
            k = std::max(k - 1, 1);
        }
    }
    return b;
}

/// Checks the Lovasz condition (after size reduction) for tests.
inline bool is_lll_reduced(const IntegerLatticeBasis& b, const Rational& delta = Rational(3, 4)) {
    auto gso = detail::gram_schmidt(b.cols);
    for (int k = 1; k < b.dim; ++k) {
        Rational mu = gso.mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)];
        if (gso.q[static_cast<std::size_t>(k)] < (delta - mu * mu) * gso.q[static_cast<std::size_t>(k - 1)]) return false;
    }
    return true;
}

struct SvpResult {
    Rational norm;                // sup-norm in represented units (scale applied)
    std::vector<Int> coeffs;      // coefficients w.r.t. the input basis
    std::vector<Rational> vector; // the short vector itself, represented units
};

/// Exact shortest nonzero vector in the sup-norm, dim <= 8.
///
/// LLL preconditions the basis; Fincke-Pohst enumeration then runs under
/// the Euclidean radius sqrt(dim) * best-sup, which is a certificate since
/// ||.||_inf <= ||.||_2 <= sqrt(dim) ||.||_inf.
inline SvpResult shortest_vector_sup(const IntegerLatticeBasis& basis) {
    if (basis.dim > 8) fail("DimensionTooLarge", "exactalg", "SVP enumeration limited to dim <= 8");
    if (basis.dim <= 0) fail("DependentColumns", "exactalg", "empty basis");
    IntegerLatticeBasis red = lll_reduce(basis);
    auto gso = detail::gram_schmidt(red.cols);

    Int best = detail::sup_norm(red.cols[0]);
    std::vector<Int> best_x(static_cast<std::size_t>(red.dim), Int(0));
    best_x[0] = 1;
    for (int j = 1; j < red.dim; ++j) {
        Int s = detail::sup_norm(red.cols[static_cast<std::size_t>(j)]);
        if (s < best) {
            best = s;
            std::fill(best_x.begin(), best_x.end(), Int(0));
            best_x[static_cast<std::size_t>(j)] = 1;
        }
    }

    detail::Enumerator en(red.cols, gso);
    auto bound = [&]() { return Rational(best) * Rational(best) * Rational(red.dim); };
    en.run(bound, [&](const std::vector<Int>& x) {
        std::vector<Int> v = detail::apply_cols(red.cols, x);
        Int s = detail::sup_norm(v);
        if (s != 0 && s < best) {
            best = s;
            best_x = x;
        }
    });

    // Express coefficients w.r.t. the original basis: solve B_orig z = B_red x.
    std::vector<Int> v = detail::apply_cols(red.cols, best_x);
    QMatrix m(basis.dim, basis.dim);
    for (int j = 0; j < basis.dim; ++j)
        for (int i = 0; i < basis.dim; ++i) m(i, j) = Rational(basis.cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    QMatrix rhs(basis.dim, 1);
    for (int i = 0; i < basis.dim; ++i) rhs(i, 0) = Rational(v[static_cast<std::size_t>(i)]);
    QMatrix z = m.inverse() * rhs;

    SvpResult res;
    res.norm = rat_abs(basis.scale) * Rational(best);
    res.coeffs.resize(static_cast<std::size_t>(basis.dim));
    for (int i = 0; i < basis.dim; ++i) res.coeffs[static_cast<std::size_t>(i)] = num(z(i, 0));  // integral by construction
    res.vector.resize(static_cast<std::size_t>(basis.dim));
    for (int i = 0; i < basis.dim; ++i) res.vector[static_cast<std::size_t>(i)] = basis.scale * Rational(v[static_cast<std::size_t>(i)]);
    return res;
}

/// Visits every nonzero lattice vector with sup-norm <= bound (represented
/// units). Callback receives coefficients w.r.t. this basis and the vector's
/// sup-norm in represented units. Both signs of each vector are visited.
inline void enumerate_sup_ball(const IntegerLatticeBasis& basis, const Rational& bound,
                               const std::function<void(const std::vector<Int>&, const Rational&)>& visit) {
    if (bound <= 0) return;
    IntegerLatticeBasis red = lll_reduce(basis);
    auto gso = detail::gram_schmidt(red.cols);
    Rational bound_int = bound / rat_abs(basis.scale);
    Rational r2 = bound_int * bound_int * Rational(red.dim);
    // Coefficients are remapped from the reduced basis to the original one.
    QMatrix m(basis.dim, basis.dim);
    for (int j = 0; j < basis.dim; ++j)
        for (int i = 0; i < basis.dim; ++i) m(i, j) = Rational(basis.cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    QMatrix minv = m.inverse();

    detail::Enumerator en(red.cols, gso);
    auto fixed = [&]() { return r2; };
    en.run(fixed, [&](const std::vector<Int>& x) {
        std::vector<Int> v = detail::apply_cols(red.cols, x);
        Int s = detail::sup_norm(v);
        if (Rational(s) > bound_int) return;
        std::vector<Int> coeffs(static_cast<std::size_t>(basis.dim));
        for (int i = 0; i < basis.dim; ++i) {
            Rational acc(0);
            for (int k = 0; k < basis.dim; ++k) acc += minv(i, k) * Rational(v[static_cast<std::size_t>(k)]);
            coeffs[static_cast<std::size_t>(i)] = num(acc);
        }
        visit(coeffs, rat_abs(basis.scale) * Rational(s));
    });
}

/// Number of nonzero lattice vectors v with r1 <= ||v||_inf <= r2.
inline long count_in_annulus(const IntegerLatticeBasis& basis, const Rational& r1, const Rational& r2) {
    long count = 0;
    enumerate_sup_ball(basis, r2, [&](const std::vector<Int>&, const Rational& s) {
        if (s >= r1) ++count;
    });
    return count;
}

}  // namespace ddl
