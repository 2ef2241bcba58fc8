#pragma once

#include "ddl/errors.hpp"
#include "ddl/rational.hpp"

#include <vector>

namespace ddl {

/// Irreducible sl(2)-representation of dimension l+1, built abstractly from
/// the weight ladder: basis w_0, ..., w_l with a(t) w_i = e^{(l-2i)t} w_i,
/// f w_i = w_{i+1}, e w_i = i(l-i+1) w_{i-1}.
class Sl2Irrep {
public:
    using Vec = std::vector<Rational>;

    explicit Sl2Irrep(int dimension) : l_(dimension - 1) {
        if (dimension < 1) fail("DimensionBudgetExceeded", "rep", "irrep dimension must be >= 1");
    }

    int dim() const { return l_ + 1; }
    int highest() const { return l_; }
    int weight(int i) const { return l_ - 2 * i; }

    Vec zero() const { return Vec(static_cast<std::size_t>(l_ + 1), Rational(0)); }

    Vec apply_e(const Vec& v) const {
        Vec r = zero();
        for (int i = 1; i <= l_; ++i)
            r[static_cast<std::size_t>(i - 1)] = Rational(i) * Rational(l_ - i + 1) * v[static_cast<std::size_t>(i)];
        return r;
    }
    Vec apply_f(const Vec& v) const {
        Vec r = zero();
        for (int i = 0; i < l_; ++i) r[static_cast<std::size_t>(i + 1)] = v[static_cast<std::size_t>(i)];
        return r;
    }

    /// u(r) = exp(r e), exact.
    Vec act_u(const Rational& r, const Vec& v) const { return exp_nilpotent(r, v, /*use_e=*/true); }
    /// u^-(x) = exp(x f), exact.
    Vec act_uminus(const Rational& x, const Vec& v) const { return exp_nilpotent(x, v, /*use_e=*/false); }
    /// a acting at rational scale N = e^t: w_i -> N^{l-2i} w_i.
    Vec act_a(const Rational& N, const Vec& v) const {
        if (N <= 0) fail("InvalidN", "rep", "torus scale must be positive");
        Vec r = v;
        for (int i = 0; i <= l_; ++i) r[static_cast<std::size_t>(i)] *= rat_pow(N, weight(i));
        return r;
    }
    /// sigma(r) = u(r) u^-(-1/r) u(r).
    Vec act_sigma(const Rational& r, const Vec& v) const {
        if (r == 0) fail("ZeroR", "rep", "sigma(r) needs r != 0");
        return act_u(r, act_uminus(-Rational(1) / r, act_u(r, v)));
    }

    bool is_zero(const Vec& v) const {
        for (const auto& c : v)
            if (c != 0) return false;
        return true;
    }

    /// Largest weight with a nonzero component.
    int lambda_max(const Vec& v) const {
        if (is_zero(v)) fail("ZeroVector", "rep", "lambda_max of zero vector");
        for (int i = 0; i <= l_; ++i)
            if (v[static_cast<std::size_t>(i)] != 0) return weight(i);
        fail("Internal", "rep", "unreachable");
    }

    Vec vmax(const Vec& v) const {
        Vec r = zero();
        int lm = lambda_max(v);
        for (int i = 0; i <= l_; ++i)
            if (weight(i) == lm) r[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
        return r;
    }

    /// Weight-lambda component.
    Vec component(const Vec& v, int lambda) const {
        Vec r = zero();
        for (int i = 0; i <= l_; ++i)
            if (weight(i) == lambda) r[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
        return r;
    }

    /// True if every component has weight <= 0.
    bool in_nonpositive(const Vec& v) const {
        for (int i = 0; i <= l_; ++i)
            if (v[static_cast<std::size_t>(i)] != 0 && weight(i) > 0) return false;
        return true;
    }

private:
    Vec exp_nilpotent(const Rational& t, const Vec& v, bool use_e) const {
        Vec acc = v, term = v;
        for (int j = 1; j <= l_; ++j) {
            term = use_e ? apply_e(term) : apply_f(term);
            Rational c = t / Rational(j);
            bool all_zero = true;
            for (std::size_t i = 0; i < term.size(); ++i) {
                term[i] *= c;
                if (term[i] != 0) all_zero = false;
            }
            if (all_zero) break;
            for (std::size_t i = 0; i < term.size(); ++i) acc[i] += term[i];
        }
        return acc;
    }

    int l_;
};

}  // namespace ddl
