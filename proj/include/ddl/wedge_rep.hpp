#pragma once

#include "ddl/errors.hpp"
#include "ddl/group.hpp"
#include "ddl/lie.hpp"

#include <map>
#include <set>
#include <vector>

namespace ddl {

/// Sparse vector over the graded wedge basis of a WeightGradedRep.
struct RepVector {
    std::map<long, Rational> coords;

    bool is_zero() const { return coords.empty(); }
    void set(long i, Rational c) {
        if (c == 0) coords.erase(i);
        else coords[i] = std::move(c);
    }
    void add(long i, const Rational& c) {
        auto it = coords.find(i);
        if (it == coords.end()) {
            if (c != 0) coords.emplace(i, c);
        } else {
            it->second += c;
            if (it->second == 0) coords.erase(it);
        }
    }
    friend RepVector operator+(const RepVector& a, const RepVector& b) {
        RepVector r = a;
        for (const auto& [i, c] : b.coords) r.add(i, c);
        return r;
    }
    friend RepVector operator-(const RepVector& a, const RepVector& b) {
        RepVector r = a;
        for (const auto& [i, c] : b.coords) r.add(i, -c);
        return r;
    }
    friend RepVector operator*(const Rational& c, const RepVector& v) {
        RepVector r;
        if (c == 0) return r;
        for (const auto& [i, x] : v.coords) r.coords.emplace(i, c * x);
        return r;
    }
    friend bool operator==(const RepVector& a, const RepVector& b) { return a.coords == b.coords; }
};

/// V = (+)_{k in degrees} /\^k sl(m+n), with every wedge monomial graded by
/// its exact integer weights under the flow torus A (and the k-part tori A_i
/// when n is a multiple of m).
///
/// Basis of sl(m+n): the off-diagonal E_ij (row-major), then the Cartan
/// differences H_k = E_kk - E_{k+1,k+1}. Wedge monomials are k-subsets in
/// lexicographic order, indexed by the combinatorial number system.
class WeightGradedRep {
    struct GBasisElt {
        int i, j;
        bool cartan;
    };

public:
    WeightGradedRep(int m, int n, std::set<int> degrees) : m_(m), n_(n) {
        const int p = m + n;
        d_ = p * p - 1;
        bool full = static_cast<int>(degrees.size()) == d_;
        if (p > 5 || (p == 5 && degrees.size() > 1) || (p > 4 && full))
            fail("DimensionBudgetExceeded", "rep",
                 "full wedge sums need m+n <= 4; single degrees need m+n <= 5");
        for (int k : degrees) {
            if (k < 1 || k > d_) fail("DimensionBudgetExceeded", "rep", "degree out of range");
            degrees_.push_back(k);
        }
        // g-basis enumeration
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                if (i != j) gbasis_.push_back({i, j, false});
        for (int k = 0; k + 1 < p; ++k) gbasis_.push_back({k, k + 1, true});
        // binomials up to C(d, d)
        binom_.assign(static_cast<std::size_t>(d_) + 1, std::vector<long>(static_cast<std::size_t>(d_) + 1, 0));
        for (int i = 0; i <= d_; ++i) {
            binom_[static_cast<std::size_t>(i)][0] = 1;
            for (int j = 1; j <= i; ++j)
                binom_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    binom_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                    (j <= i - 1 ? binom_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] : 0);
        }
        long off = 0;
        for (int k : degrees_) {
            offsets_.push_back(off);
            off += binom_[static_cast<std::size_t>(d_)][static_cast<std::size_t>(k)];
        }
        total_dim_ = off;
    }

    int m() const { return m_; }
    int n() const { return n_; }
    int ambient() const { return m_ + n_; }
    int lie_dim() const { return d_; }
    long dim() const { return total_dim_; }
    const std::vector<int>& degrees() const { return degrees_; }

    /// The matrix of the idx-th basis element of sl(m+n).
    QMatrix gbasis_matrix(int idx) const {
        const auto& e = gbasis_[static_cast<std::size_t>(idx)];
        QMatrix g(ambient(), ambient());
        if (e.cartan) {
            g(e.i, e.i) = Rational(1);
            g(e.j, e.j) = Rational(-1);
        } else {
            g(e.i, e.j) = Rational(1);
        }
        return g;
    }

    /// Weight of the idx-th g-basis element under diag weights w (a(t) with
    /// t-exponents w_i per coordinate): weight(E_ij) = w_i - w_j, Cartan 0.
    int gweight(int idx, const std::vector<int>& w) const {
        const auto& e = gbasis_[static_cast<std::size_t>(idx)];
        if (e.cartan) return 0;
        return w[static_cast<std::size_t>(e.i)] - w[static_cast<std::size_t>(e.j)];
    }

    /// t-exponents of A: a(t) = diag(e^{nt} I_m, e^{-mt} I_n).
    std::vector<int> a_exponents() const {
        std::vector<int> w(static_cast<std::size_t>(ambient()));
        for (int i = 0; i < m_; ++i) w[static_cast<std::size_t>(i)] = n_;
        for (int i = 0; i < n_; ++i) w[static_cast<std::size_t>(m_ + i)] = -m_;
        return w;
    }

    /// t-exponents of A_i for n = k m: e^t on block 0, e^{-t} on block i.
    std::vector<int> ai_exponents(int i) const {
        if (n_ % m_ != 0) fail("GradingMissing", "rep", "k-torus grading needs n = k m");
        int k = n_ / m_;
        if (i < 1 || i > k) fail("GradingMissing", "rep", "torus index out of range");
        std::vector<int> w(static_cast<std::size_t>(ambient()), 0);
        for (int r = 0; r < m_; ++r) {
            w[static_cast<std::size_t>(r)] = 1;
            w[static_cast<std::size_t>(i * m_ + r)] = -1;
        }
        return w;
    }

    /// t-exponents of the sl(2)-triple Cartan fraka = diag(I_m, -I_m, 0).
    std::vector<int> fraka_exponents() const {
        std::vector<int> w(static_cast<std::size_t>(ambient()), 0);
        for (int r = 0; r < m_; ++r) {
            w[static_cast<std::size_t>(r)] = 1;
            w[static_cast<std::size_t>(m_ + r)] = -1;
        }
        return w;
    }

    // --- monomial indexing -------------------------------------------------

    int degree_of(long idx) const {
        for (std::size_t t = degrees_.size(); t-- > 0;)
            if (idx >= offsets_[t]) return degrees_[t];
        fail("Internal", "rep", "bad monomial index");
    }

    /// Sorted g-basis subset of the monomial with global index idx.
    std::vector<int> subset_of(long idx) const {
        std::size_t t = degrees_.size();
        while (t-- > 0)
            if (idx >= offsets_[t]) break;
        int k = degrees_[t];
        long r = idx - offsets_[t];
        // combinatorial number system, lexicographic subsets
        std::vector<int> out;
        int start = 0;
        for (int slot = 0; slot < k; ++slot) {
            for (int c = start; c < d_; ++c) {
                long count = binom_[static_cast<std::size_t>(d_ - 1 - c)][static_cast<std::size_t>(k - 1 - slot)];
                if (r < count) {
                    out.push_back(c);
                    start = c + 1;
                    break;
                }
                r -= count;
            }
        }
        return out;
    }

    long index_of(const std::vector<int>& subset) const {
        int k = static_cast<int>(subset.size());
        std::size_t t = 0;
        while (t < degrees_.size() && degrees_[t] != k) ++t;
        if (t == degrees_.size()) fail("Internal", "rep", "degree not in rep");
        long r = 0;
        int start = 0;
        for (int slot = 0; slot < k; ++slot) {
            for (int c = start; c < subset[static_cast<std::size_t>(slot)]; ++c)
                r += binom_[static_cast<std::size_t>(d_ - 1 - c)][static_cast<std::size_t>(k - 1 - slot)];
            start = subset[static_cast<std::size_t>(slot)] + 1;
        }
        return offsets_[t] + r;
    }

    /// Weight of a monomial under the torus with the given t-exponents.
    int weight(long idx, const std::vector<int>& exps) const {
        int w = 0;
        for (int g : subset_of(idx)) w += gweight(g, exps);
        return w;
    }

    int weight_A(long idx) const { return weight(idx, a_exponents()); }

    /// Weight vector under (A_1, ..., A_k).
    std::vector<int> weight_vector(long idx) const {
        if (n_ % m_ != 0) fail("GradingMissing", "rep", "k-torus grading needs n = k m");
        int k = n_ / m_;
        std::vector<int> dv(static_cast<std::size_t>(k));
        for (int i = 1; i <= k; ++i) dv[static_cast<std::size_t>(i - 1)] = weight(idx, ai_exponents(i));
        return dv;
    }

    RepVector basis_vector(long idx) const {
        RepVector v;
        v.set(idx, Rational(1));
        return v;
    }

private:
    int m_, n_, d_;
    std::vector<int> degrees_;
    std::vector<long> offsets_;
    long total_dim_ = 0;
    std::vector<GBasisElt> gbasis_;
    std::vector<std::vector<long>> binom_;
};

inline WeightGradedRep build_rep(int m, int n, const std::set<int>& degrees) {
    return WeightGradedRep(m, n, degrees);
}

/// Adjoint columns of g on the Lie algebra basis: Ad(g) e_j = g e_j g^{-1}.
inline std::vector<std::vector<std::pair<int, Rational>>> adjoint_columns(const WeightGradedRep& rep, const QMatrix& g) {
    const int p = rep.ambient(), d = rep.lie_dim();
    QMatrix gi = g.inverse();
    std::vector<std::vector<std::pair<int, Rational>>> cols(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        QMatrix y = g * rep.gbasis_matrix(j) * gi;
        std::vector<std::pair<int, Rational>> col;
        int idx = 0;
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                if (a == b) continue;
                if (y(a, b) != 0) col.emplace_back(idx, y(a, b));
                ++idx;
            }
        Rational partial(0);
        for (int k = 0; k + 1 < p; ++k) {
            partial += y(k, k);
            if (partial != 0) col.emplace_back(idx, partial);
            ++idx;
        }
        cols[static_cast<std::size_t>(j)] = std::move(col);
    }
    return cols;
}

/// Exact exterior-power adjoint action of g on v.
inline RepVector act(const GroupElement& g, const RepVector& v, const WeightGradedRep& rep) {
    if (g.mat.rows() != rep.ambient()) fail("ShapeMismatch", "rep", "group element size mismatch");
    auto cols = adjoint_columns(rep, g.mat);
    RepVector out;
    for (const auto& [idx, coeff] : v.coords) {
        std::vector<int> subset = rep.subset_of(idx);
        // iterated sparse wedge of the mapped factors
        std::map<std::vector<int>, Rational> acc;
        acc.emplace(std::vector<int>{}, Rational(1));
        for (int j : subset) {
            std::map<std::vector<int>, Rational> next;
            for (const auto& [mono, a] : acc) {
                for (const auto& [i, b] : cols[static_cast<std::size_t>(j)]) {
                    // insert i into the sorted monomial, tracking the sign
                    int greater = 0;
                    bool dup = false;
                    for (int t : mono) {
                        if (t == i) { dup = true; break; }
                        if (t > i) ++greater;
                    }
                    if (dup) continue;
                    std::vector<int> merged;
                    merged.reserve(mono.size() + 1);
                    bool placed = false;
                    for (int t : mono) {
                        if (!placed && i < t) {
                            merged.push_back(i);
                            placed = true;
                        }
                        merged.push_back(t);
                    }
                    if (!placed) merged.push_back(i);
                    Rational term = a * b;
                    if (greater % 2) term = -term;
                    auto it = next.find(merged);
                    if (it == next.end()) next.emplace(std::move(merged), term);
                    else {
                        it->second += term;
                        if (it->second == 0) next.erase(it);
                    }
                }
            }
            acc = std::move(next);
        }
        for (const auto& [mono, a] : acc) out.add(rep.index_of(mono), coeff * a);
    }
    return out;
}

// --- weight projections -----------------------------------------------------

/// Largest weight (under the given t-exponents) carrying a nonzero component.
inline int lambda_max(const RepVector& v, const WeightGradedRep& rep, const std::vector<int>& exps) {
    if (v.is_zero()) fail("ZeroVector", "rep", "lambda_max of zero vector");
    bool first = true;
    int best = 0;
    for (const auto& [idx, c] : v.coords) {
        int w = rep.weight(idx, exps);
        if (first || w > best) best = w;
        first = false;
    }
    return best;
}

inline int lambda_max_A(const RepVector& v, const WeightGradedRep& rep) {
    return lambda_max(v, rep, rep.a_exponents());
}

/// Projection onto the weight-lambda eigenspace.
inline RepVector weight_component(const RepVector& v, const WeightGradedRep& rep, const std::vector<int>& exps, int lambda) {
    RepVector out;
    for (const auto& [idx, c] : v.coords)
        if (rep.weight(idx, exps) == lambda) out.coords.emplace(idx, c);
    return out;
}

/// v^max with respect to the given torus.
inline RepVector vmax_component(const RepVector& v, const WeightGradedRep& rep, const std::vector<int>& exps) {
    return weight_component(v, rep, exps, lambda_max(v, rep, exps));
}

/// Projection onto weights satisfying pred.
template <typename Pred>
inline RepVector weight_filter(const RepVector& v, const WeightGradedRep& rep, const std::vector<int>& exps, Pred pred) {
    RepVector out;
    for (const auto& [idx, c] : v.coords)
        if (pred(rep.weight(idx, exps))) out.coords.emplace(idx, c);
    return out;
}

/// Projection q(delta) onto the common (A_1, ..., A_k) eigenspace V(delta).
inline RepVector q_projection(const RepVector& v, const WeightGradedRep& rep, const std::vector<int>& delta) {
    RepVector out;
    for (const auto& [idx, c] : v.coords)
        if (rep.weight_vector(idx) == delta) out.coords.emplace(idx, c);
    return out;
}

}  // namespace ddl
