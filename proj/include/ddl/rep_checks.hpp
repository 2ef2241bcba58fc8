#pragma once

#include "ddl/curve.hpp"
#include "ddl/sl2.hpp"
#include "ddl/wedge_rep.hpp"

#include <optional>
#include <vector>

namespace ddl {

/// Outcome of one executable lemma check, with the exact quantities compared.
struct LemmaVerdict {
    bool holds = false;      // the asserted inequality / invariance holds
    int lhs = 0, rhs = 0;    // compared weights, where applicable
    bool equality = false;   // lhs == rhs
    bool identity_vrec_ok = false;   // v = u^-(-1/r) v^max (equality case)
    bool identity_sigma_ok = false;  // (u(r)v)^max = sigma(r) v^max (equality case)
    std::string note;
};

// ---------------------------------------------------------------------------
// lambda^max inequality: lambda^max(u(r) v) >= -lambda^max(v), with the two
// equality-case identities checked exactly whenever equality occurs.
// ---------------------------------------------------------------------------

inline LemmaVerdict verify_max_inequality(const Sl2Irrep& rep, const Sl2Irrep::Vec& v, const Rational& r) {
    if (r == 0) fail("ZeroR", "rep", "lemma needs r != 0");
    if (rep.is_zero(v)) fail("ZeroVector", "rep", "lemma needs v != 0");
    LemmaVerdict verdict;
    auto uv = rep.act_u(r, v);
    verdict.lhs = rep.lambda_max(uv);
    verdict.rhs = -rep.lambda_max(v);
    verdict.holds = verdict.lhs >= verdict.rhs;
    verdict.equality = verdict.lhs == verdict.rhs;
    if (verdict.equality) {
        auto vmax = rep.vmax(v);
        auto rebuilt = rep.act_uminus(-Rational(1) / r, vmax);
        verdict.identity_vrec_ok = rebuilt == v;
        auto lhs_max = rep.vmax(uv);
        auto sigma_vmax = rep.act_sigma(r, vmax);
        verdict.identity_sigma_ok = lhs_max == sigma_vmax;
    }
    return verdict;
}

/// Same lemma, restricted through an embedded SL(2,X) acting on a wedge rep;
/// weights are taken under the triple's Cartan element.
inline LemmaVerdict verify_max_inequality(const WeightGradedRep& rep, const SL2Triple& triple,
                                          const RepVector& v, const Rational& r) {
    if (r == 0) fail("ZeroR", "rep", "lemma needs r != 0");
    if (v.is_zero()) fail("ZeroVector", "rep", "lemma needs v != 0");
    auto exps = rep.fraka_exponents();
    LemmaVerdict verdict;
    RepVector uv = act(sl2_u(triple, r), v, rep);
    verdict.lhs = lambda_max(uv, rep, exps);
    verdict.rhs = -lambda_max(v, rep, exps);
    verdict.holds = verdict.lhs >= verdict.rhs;
    verdict.equality = verdict.lhs == verdict.rhs;
    if (verdict.equality) {
        RepVector vmax = vmax_component(v, rep, exps);
        RepVector rebuilt = act(sl2_uminus(triple, -Rational(1) / r), vmax, rep);
        verdict.identity_vrec_ok = rebuilt == v;
        RepVector lhs_max = vmax_component(uv, rep, exps);
        RepVector sigma_vmax = act(sl2_sigma(triple, r), vmax, rep);
        verdict.identity_sigma_ok = lhs_max == sigma_vmax;
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// Corollary: if v and u(r) v both lie in V^{0-}(A) then lambda^max(v) = 0,
// v^0 != 0 and v = u^-(-1/r) v^0 (sign as in the lemma's equality case).
// ---------------------------------------------------------------------------

inline LemmaVerdict check_corollary(const Sl2Irrep& rep, const Sl2Irrep::Vec& v, const Rational& r) {
    if (r == 0) fail("ZeroR", "rep", "corollary needs r != 0");
    if (rep.is_zero(v)) fail("ZeroVector", "rep", "corollary needs v != 0");
    auto uv = rep.act_u(r, v);
    if (!rep.in_nonpositive(v) || !rep.in_nonpositive(uv))
        fail("PreconditionViolated", "rep", "v or u(r)v has a positive-weight component");
    LemmaVerdict verdict;
    verdict.lhs = rep.lambda_max(v);
    verdict.rhs = 0;
    verdict.equality = verdict.lhs == 0;
    auto v0 = rep.component(v, 0);
    bool v0_nonzero = !rep.is_zero(v0);
    auto rebuilt = rep.act_uminus(-Rational(1) / r, v0);
    verdict.identity_vrec_ok = rebuilt == v;
    verdict.holds = verdict.equality && v0_nonzero && verdict.identity_vrec_ok;
    if (!v0_nonzero) verdict.note = "v^0 = 0";
    return verdict;
}

inline LemmaVerdict check_corollary(const WeightGradedRep& rep, const SL2Triple& triple,
                                    const RepVector& v, const Rational& r) {
    if (r == 0) fail("ZeroR", "rep", "corollary needs r != 0");
    if (v.is_zero()) fail("ZeroVector", "rep", "corollary needs v != 0");
    auto exps = rep.fraka_exponents();
    RepVector uv = act(sl2_u(triple, r), v, rep);
    auto positive = [](int w) { return w > 0; };
    if (!weight_filter(v, rep, exps, positive).is_zero() || !weight_filter(uv, rep, exps, positive).is_zero())
        fail("PreconditionViolated", "rep", "v or u(r)v has a positive-weight component");
    LemmaVerdict verdict;
    verdict.lhs = lambda_max(v, rep, exps);
    verdict.rhs = 0;
    verdict.equality = verdict.lhs == 0;
    RepVector v0 = weight_component(v, rep, exps, 0);
    bool v0_nonzero = !v0.is_zero();
    RepVector rebuilt = act(sl2_uminus(triple, -Rational(1) / r), v0, rep);
    verdict.identity_vrec_ok = rebuilt == v;
    verdict.holds = verdict.equality && v0_nonzero && verdict.identity_vrec_ok;
    if (!v0_nonzero) verdict.note = "v^0 = 0";
    return verdict;
}

// ---------------------------------------------------------------------------
// Basic Lemma witness search: first grid point s with u(phi(s)) v not in
// V^-(A), i.e. with nonzero V^{+0}(A) projection.
// ---------------------------------------------------------------------------

inline std::optional<Rational> find_witness(const MatrixCurve& curve, const WeightGradedRep& rep,
                                            const RepVector& v, const std::vector<Rational>& grid) {
    if (v.is_zero()) fail("ZeroVector", "rep", "witness search needs v != 0");
    if (curve.m() != rep.m() || curve.n() != rep.n()) fail("ShapeMismatch", "rep", "curve/rep dimensions differ");
    auto exps = rep.a_exponents();
    auto nonneg = [](int w) { return w >= 0; };
    for (const auto& s : grid) {
        if (!curve.contains(s) || !curve.defined_at(s)) continue;
        RepVector moved = act(GroupElement::u_plus(curve.eval(s)), v, rep);
        if (!weight_filter(moved, rep, exps, nonneg).is_zero()) return s;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Admissibility: delta = c_1 e_1 + ... + c_k e_k with c_i >= 0 integers,
// where e_i = (-1, ..., -2, ..., -1) with -2 in slot i.
// Closed form: with sigma = sum(delta), admissible iff (k+1) | sigma and
// c_j = -delta_j + sigma/(k+1) >= 0 for all j.
// ---------------------------------------------------------------------------

struct AdmissibleQuery {
    int k = 0;
    std::vector<Int> delta;
};

inline std::optional<std::vector<Int>> admissible(const AdmissibleQuery& q) {
    if (q.k <= 0 || static_cast<int>(q.delta.size()) != q.k) return std::nullopt;
    Int sigma = 0;
    for (const auto& d : q.delta) sigma += d;
    if (sigma % (q.k + 1) != 0) return std::nullopt;
    Int shift = sigma / (q.k + 1);
    std::vector<Int> c(static_cast<std::size_t>(q.k));
    for (int j = 0; j < q.k; ++j) {
        c[static_cast<std::size_t>(j)] = -q.delta[static_cast<std::size_t>(j)] + shift;
        if (c[static_cast<std::size_t>(j)] < 0) return std::nullopt;
    }
    return c;
}

/// Membership of a weight vector in E_i = {c_1 e_1 + ... + c_i e_i : c >= 0}.
inline bool in_cone_Ei(const std::vector<int>& delta, int i) {
    const int k = static_cast<int>(delta.size());
    if (i == 0) {
        for (int d : delta)
            if (d != 0) return false;
        return true;
    }
    long total = 0;
    // All coordinates past i equal -(c_1 + ... + c_i).
    long S;
    if (i < k) {
        S = -delta[static_cast<std::size_t>(i)];
        for (int l = i; l < k; ++l)
            if (delta[static_cast<std::size_t>(l)] != -S) return false;
    } else {
        long sigma = 0;
        for (int d : delta) sigma += d;
        if (sigma % (k + 1) != 0) return false;
        S = -sigma / (k + 1);
    }
    if (S < 0) return false;
    for (int j = 0; j < i; ++j) {
        long c = -delta[static_cast<std::size_t>(j)] - S;
        if (c < 0) return false;
        total += c;
    }
    return total == S;
}

/// The chain v_0, ..., v_k with v_i = sum_{delta in E_i} q(delta) v.
inline std::vector<RepVector> project_chain(const RepVector& v, const WeightGradedRep& rep) {
    if (rep.n() % rep.m() != 0) fail("GradingMissing", "rep", "chain projection needs n = k m");
    const int k = rep.n() / rep.m();
    std::vector<RepVector> chain(static_cast<std::size_t>(k) + 1);
    for (const auto& [idx, c] : v.coords) {
        std::vector<int> delta = rep.weight_vector(idx);
        for (int i = 0; i <= k; ++i)
            if (in_cone_Ei(delta, i)) chain[static_cast<std::size_t>(i)].coords.emplace(idx, c);
    }
    return chain;
}

// ---------------------------------------------------------------------------
// Derivative lemma check: when u(phi(sigma)) v stays in V^{-0}(A) on the grid,
// the zero-weight part of u(phi(s)) v is fixed by u(h phi^(1)(s)).
// ---------------------------------------------------------------------------

inline LemmaVerdict check_zero_weight_invariance(const MatrixCurve& curve, const WeightGradedRep& rep,
                                                 const RepVector& v, const Rational& s,
                                                 const std::vector<Rational>& grid) {
    LemmaVerdict verdict;
    if (v.is_zero()) {  // vacuous
        verdict.holds = true;
        verdict.note = "v = 0";
        return verdict;
    }
    auto exps = rep.a_exponents();
    auto positive = [](int w) { return w > 0; };
    for (const auto& sg : grid) {
        if (!curve.contains(sg) || !curve.defined_at(sg)) continue;
        RepVector moved = act(GroupElement::u_plus(curve.eval(sg)), v, rep);
        if (!weight_filter(moved, rep, exps, positive).is_zero())
            fail("PreconditionViolated", "rep",
                 "u(phi(" + to_string(sg) + ")) v has a positive-weight component");
    }
    RepVector at_s = act(GroupElement::u_plus(curve.eval(s)), v, rep);
    RepVector w0 = weight_component(at_s, rep, exps, 0);
    QMatrix dphi = eval(curve.derivative_entries(), s);
    verdict.holds = true;
    for (int h : {1, -1, 2, -2}) {
        RepVector moved = act(GroupElement::u_plus(Rational(h) * dphi), w0, rep);
        if (!(moved == w0)) {
            verdict.holds = false;
            verdict.note = "not invariant at h = " + std::to_string(h);
            break;
        }
    }
    return verdict;
}

}  // namespace ddl
