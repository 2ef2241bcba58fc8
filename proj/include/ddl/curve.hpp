#pragma once

#include "ddl/errors.hpp"
#include "ddl/group.hpp"
#include "ddl/matrix.hpp"

#include <string>
#include <vector>

namespace ddl {

/// Curve s -> M(m x n, Q(s)) on a closed rational interval.
///
/// User-constructed curves are checked pole-free on the interval (Sturm).
/// Curves derived by psi-reduction may carry excluded points: the finitely
/// many interval points where some entry denominator vanishes.
class MatrixCurve {
public:
    MatrixCurve(RFMatrix entries, Rational lo, Rational hi)
        : entries_(std::move(entries)), lo_(std::move(lo)), hi_(std::move(hi)) {
        if (!(lo_ < hi_)) fail("BadInterval", "curve", "interval needs a < b");
        check_pole_free();
    }

    /// Internal factory: skips the pole check, records exclusions instead.
    static MatrixCurve derived(RFMatrix entries, Rational lo, Rational hi,
                               std::vector<Rational> excluded_rational, int excluded_total) {
        MatrixCurve c;
        c.entries_ = std::move(entries);
        c.lo_ = std::move(lo);
        c.hi_ = std::move(hi);
        c.excluded_rational_ = std::move(excluded_rational);
        c.excluded_total_ = excluded_total;
        return c;
    }

    int m() const { return entries_.rows(); }
    int n() const { return entries_.cols(); }
    const RFMatrix& entries() const { return entries_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const std::vector<Rational>& excluded_points() const { return excluded_rational_; }
    int excluded_total() const { return excluded_total_; }

    bool contains(const Rational& s) const { return lo_ <= s && s <= hi_; }

    bool is_constant() const {
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < n(); ++j)
                if (!entries_(i, j).is_constant()) return false;
        return true;
    }

    bool defined_at(const Rational& s) const { return ddl::defined_at(entries_, s); }

    QMatrix eval(const Rational& s) const {
        if (!contains(s)) fail("OutOfInterval", "curve", to_string(s) + " outside [" + to_string(lo_) + ", " + to_string(hi_) + "]");
        if (!defined_at(s)) fail("PoleAtPoint", "curve", "curve has a pole at " + to_string(s));
        return ddl::eval(entries_, s);
    }

    MatrixCurve transposed() const {
        return derived(entries_.transpose(), lo_, hi_, excluded_rational_, excluded_total_);
    }

    /// phi(s) - phi(s0), same interval.
    MatrixCurve translated(const Rational& s0) const {
        RFMatrix e = entries_ - lift(eval(s0));
        return derived(std::move(e), lo_, hi_, excluded_rational_, excluded_total_);
    }

    /// The Z_H(A)-action z . phi = B phi C^{-1}.
    MatrixCurve z_act(const QMatrix& B, const QMatrix& C) const {
        RFMatrix e = lift(B) * entries_ * lift(C.inverse());
        return derived(std::move(e), lo_, hi_, excluded_rational_, excluded_total_);
    }
    MatrixCurve z_act(const GroupElement& z) const { return z_act(z.B(), z.C()); }

    RFMatrix first_block() const { return entries_.block(0, 0, m(), m()); }
    RFMatrix rest_block() const { return entries_.block(0, m(), m(), n() - m()); }

    RFMatrix derivative_entries() const { return derivative(entries_); }

    /// Largest degree data of the entries; used for exact sample-count bounds.
    int total_degree() const {
        int d = 0;
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < n(); ++j) {
                const auto& e = entries_(i, j);
                d += std::max(e.num().degree(), 0) + std::max(e.den().degree(), 0);
            }
        return d;
    }

    /// Deterministic small-denominator rationals in [lo, hi], skipping
    /// excluded and undefined points. Farey-style order: q = 1, 2, 3, ...
    std::vector<Rational> grid(std::size_t count) const {
        std::vector<Rational> pts;
        for (long q = 1; pts.size() < count && q <= 4096; ++q) {
            Int pmin = rat_ceil(lo_ * Rational(q));
            Int pmax = rat_floor(hi_ * Rational(q));
            for (Int p = pmin; p <= pmax && pts.size() < count; ++p) {
                if (boost::multiprecision::gcd(int_abs(p), Int(q)) != 1 && !(p == 0 && q == 1)) continue;
                if (p == 0 && q != 1) continue;
                Rational s(p, q);
                if (!defined_at(s)) continue;
                bool skip = false;
                for (const auto& x : excluded_rational_)
                    if (x == s) { skip = true; break; }
                if (!skip) pts.push_back(std::move(s));
            }
        }
        return pts;
    }

private:
    MatrixCurve() = default;

    void check_pole_free() {
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < n(); ++j) {
                const Polynomial& d = entries_(i, j).den();
                if (d.is_constant()) continue;
                if (count_real_roots(d, lo_, hi_) > 0)
                    fail("PoleInInterval", "curve",
                         "entry (" + std::to_string(i) + "," + std::to_string(j) + ") has a pole in the interval");
            }
    }

    RFMatrix entries_;
    Rational lo_, hi_;
    std::vector<Rational> excluded_rational_;
    int excluded_total_ = 0;
};

/// psi(s) = (phi_1(s) - phi_1(s0))^{-1} (phi_2(s) - phi_2(s0)) for m < n.
///
/// The returned curve's excluded points cover every interval point where the
/// reduction degenerates: zeros of det(phi_1(s) - phi_1(s0)) (even when the
/// reduced entries cancel them) plus any genuine poles of psi. Grids on the
/// reduced curve therefore stay inside the reduction's validity region.
inline MatrixCurve psi_reduce(const MatrixCurve& curve, const Rational& s0) {
    const int m = curve.m(), n = curve.n();
    if (m >= n) fail("ShapeMismatch", "curve", "psi reduction needs m < n");
    QMatrix at0 = curve.eval(s0);
    RFMatrix d1 = curve.first_block() - lift(at0.block(0, 0, m, m));
    RationalFunction det1 = d1.det();
    if (det1.is_zero()) fail("DegenerateFirstBlock", "curve", "det(phi_1(s) - phi_1(s0)) vanishes identically");
    RFMatrix d2 = curve.rest_block() - lift(at0.block(0, m, m, n - m));
    RFMatrix psi = d1.inverse() * d2;

    Polynomial guard = det1.num();
    for (int i = 0; i < psi.rows(); ++i)
        for (int j = 0; j < psi.cols(); ++j) {
            const Polynomial& den = psi(i, j).den();
            if (den.is_constant()) continue;
            Polynomial g = Polynomial::gcd(guard, den);
            auto [q, r] = Polynomial::divmod(den, g);
            guard = guard * q;  // lcm of the degeneracy loci
        }
    std::vector<Rational> excl = curve.excluded_points();
    int total = curve.excluded_total();
    if (!guard.is_constant()) {
        total += count_real_roots(guard, curve.lo(), curve.hi());
        for (const auto& rt : rational_roots(guard))
            if (curve.lo() <= rt && rt <= curve.hi() &&
                std::find(excl.begin(), excl.end(), rt) == excl.end())
                excl.push_back(rt);
    }
    return MatrixCurve::derived(std::move(psi), curve.lo(), curve.hi(), std::move(excl), total);
}

}  // namespace ddl
