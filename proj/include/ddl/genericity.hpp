#pragma once

#include "ddl/curve.hpp"
#include "ddl/lie.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ddl {

/// One stage of the genericity recursion, enough to replay it exactly.
struct GenericityStage {
    enum class Kind { Square, Reduce, Transpose };
    Kind kind;
    Rational s0;       // base point (unused for Transpose)
    std::string note;  // human-readable description of the reduced curve
};

struct GenericityReport {
    enum class Verdict { Generic, NotGeneric };
    Verdict verdict = Verdict::NotGeneric;
    std::vector<GenericityStage> witness_chain;
    std::string failing_stage;  // set when NotGeneric

    bool generic() const { return verdict == Verdict::Generic; }
};

namespace detail {

// Number of base-point samples that makes the symbolic zero test exact:
// if det(phi(s) - phi(s0)) vanishes identically in s for more than
// total_degree distinct regular s0, the cleared bivariate determinant is
// identically zero, so no base point can work.
inline int base_point_budget(const RFMatrix& block) {
    int d = 0;
    for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j)
            d += std::max(block(i, j).num().degree(), 0) + std::max(block(i, j).den().degree(), 0);
    return d + 1;
}

// Bound on how many distinct base points the psi recursion tries before
// giving up. Generic curves are generic at all but finitely many points,
// so a handful of attempts decides every desk-scale curve.
constexpr int kMaxPsiAttempts = 12;

inline bool generic_rec(const MatrixCurve& curve, std::vector<GenericityStage>& chain, std::string& failing) {
    const int m = curve.m(), n = curve.n();
    if (m > n) {
        chain.push_back({GenericityStage::Kind::Transpose, Rational(0), "transpose to " + std::to_string(n) + "x" + std::to_string(m)});
        return generic_rec(curve.transposed(), chain, failing);
    }
    if (m == n) {
        int budget = base_point_budget(curve.entries());
        auto grid = curve.grid(static_cast<std::size_t>(budget) + 8);
        int zeros = 0;
        for (const auto& s0 : grid) {
            RFMatrix diff = curve.entries() - lift(curve.eval(s0));
            if (!diff.det().is_zero()) {
                chain.push_back({GenericityStage::Kind::Square, s0, "det(phi(s) - phi(s0)) nonzero in Q(s)"});
                return true;
            }
            if (++zeros >= budget) {
                failing = "square stage: det(phi(s) - phi(s0)) vanishes identically for every base point";
                return false;
            }
        }
        failing = "square stage: sample grid exhausted";
        return false;
    }
    // m < n: first-block invertibility, then recurse on psi.
    int budget = base_point_budget(curve.first_block());
    auto grid = curve.grid(static_cast<std::size_t>(budget) + kMaxPsiAttempts + 8);
    int zeros = 0, attempts = 0;
    for (const auto& s0 : grid) {
        RFMatrix d1 = curve.first_block() - lift(curve.eval(s0).block(0, 0, m, m));
        if (d1.det().is_zero()) {
            if (++zeros >= budget) {
                failing = "reduction stage: first m x m block degenerate for every base point";
                return false;
            }
            continue;
        }
        MatrixCurve psi = psi_reduce(curve, s0);
        std::vector<GenericityStage> sub;
        if (generic_rec(psi, sub, failing)) {
            chain.push_back({GenericityStage::Kind::Reduce, s0,
                             "psi reduction to " + std::to_string(m) + "x" + std::to_string(n - m)});
            for (auto& st : sub) chain.push_back(std::move(st));
            return true;
        }
        if (++attempts >= kMaxPsiAttempts) {
            failing = "reduction stage: psi not generic for " + std::to_string(kMaxPsiAttempts) + " base points";
            return false;
        }
    }
    failing = "reduction stage: sample grid exhausted";
    return false;
}

}  // namespace detail

/// Full recursive genericity test of Definition-style conditions:
/// square curves need det(phi(s) - phi(s0)) nonzero as a rational function,
/// wide curves reduce through psi, tall curves go through the transpose.
inline GenericityReport is_generic(const MatrixCurve& curve) {
    GenericityReport report;
    std::string failing;
    if (detail::generic_rec(curve, report.witness_chain, failing)) {
        report.verdict = GenericityReport::Verdict::Generic;
    } else {
        report.verdict = GenericityReport::Verdict::NotGeneric;
        report.failing_stage = failing;
    }
    return report;
}

/// Re-verifies every stage of a Generic witness chain against the curve.
inline bool replay_witness_chain(const MatrixCurve& curve, const GenericityReport& report) {
    if (!report.generic()) return false;
    MatrixCurve current = curve;
    for (std::size_t i = 0; i < report.witness_chain.size(); ++i) {
        const auto& st = report.witness_chain[i];
        switch (st.kind) {
            case GenericityStage::Kind::Transpose:
                current = current.transposed();
                break;
            case GenericityStage::Kind::Square: {
                if (current.m() != current.n()) return false;
                RFMatrix diff = current.entries() - lift(current.eval(st.s0));
                if (diff.det().is_zero()) return false;
                if (i + 1 != report.witness_chain.size()) return false;
                break;
            }
            case GenericityStage::Kind::Reduce: {
                if (current.m() >= current.n()) return false;
                RFMatrix d1 = current.first_block() - lift(current.eval(st.s0).block(0, 0, current.m(), current.m()));
                if (d1.det().is_zero()) return false;
                current = psi_reduce(current, st.s0);
                break;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Supergenericity: sound sufficient tests only.
// ---------------------------------------------------------------------------

struct SupergenericityCertificate {
    enum class Status { Supergeneric, GenericUndetermined, NotGeneric };
    enum class Method { CoprimeShortcut, LieClosure, AffineSpan, None };

    Status status = Status::NotGeneric;
    Method method = Method::None;
    std::vector<Rational> sample_points;  // evidence: where differences were sampled
    int closure_dim = -1;                 // evidence: Lie closure dimension reached
    int affine_dim = -1;                  // evidence: affine span dimension reached
    GenericityReport genericity;
};

namespace detail {

/// Walks the witness chain down to the square core curve and its base point.
inline std::pair<MatrixCurve, Rational> square_core(const MatrixCurve& curve, const GenericityReport& report) {
    MatrixCurve current = curve;
    for (const auto& st : report.witness_chain) {
        switch (st.kind) {
            case GenericityStage::Kind::Transpose:
                current = current.transposed();
                break;
            case GenericityStage::Kind::Reduce:
                current = psi_reduce(current, st.s0);
                break;
            case GenericityStage::Kind::Square:
                return {current, st.s0};
        }
    }
    fail("Internal", "curve", "witness chain has no square stage");
}

/// Valid sample points around s0: curve defined, difference invertible.
inline std::vector<Rational> difference_samples(const MatrixCurve& core, const Rational& s0, int want) {
    std::vector<Rational> pts;
    QMatrix at0 = core.eval(s0);
    for (const auto& s : core.grid(static_cast<std::size_t>(want) * 4 + 16)) {
        if (s == s0) continue;
        QMatrix d = core.eval(s) - at0;
        if (d.rank() == d.rows()) pts.push_back(s);
        if (static_cast<int>(pts.size()) >= want) break;
    }
    return pts;
}

}  // namespace detail

/// Decides supergenericity where a sound test applies.
///
/// Never emits Supergeneric without a proof: either gcd(m, n) = 1 (the
/// generic condition already implies supergeneric), or the sampled
/// inverse-difference set together with E generates all of sl(2g) (no proper
/// subalgebra, observable or not, can contain it), or the affine span of the
/// sampled inverse differences is everything and the derivative is invertible
/// at the base point. Otherwise reports GenericUndetermined.
inline SupergenericityCertificate supergeneric_status(const MatrixCurve& curve, int grid_points = 12) {
    SupergenericityCertificate cert;
    cert.genericity = is_generic(curve);
    if (!cert.genericity.generic()) {
        cert.status = SupergenericityCertificate::Status::NotGeneric;
        return cert;
    }
    Int g = boost::multiprecision::gcd(Int(curve.m()), Int(curve.n()));
    if (g == 1) {
        cert.status = SupergenericityCertificate::Status::Supergeneric;
        cert.method = SupergenericityCertificate::Method::CoprimeShortcut;
        return cert;
    }

    auto [core, s0] = detail::square_core(curve, cert.genericity);
    const int gdim = core.m();
    auto samples = detail::difference_samples(core, s0, grid_points);
    cert.sample_points = samples;

    // Sufficient test 1: Lie closure of {E} u {n^-(X_i - X_j)} is all of sl(2g).
    if (samples.size() >= 2) {
        QMatrix at0 = core.eval(s0);
        std::vector<QMatrix> inv_diffs;
        for (const auto& s : samples) inv_diffs.push_back((core.eval(s) - at0).inverse());
        std::vector<QMatrix> gens;
        gens.push_back(fraka(gdim, 2 * gdim));  // E
        for (std::size_t i = 0; i < inv_diffs.size(); ++i)
            for (std::size_t j = i + 1; j < inv_diffs.size(); ++j)
                gens.push_back(n_minus(inv_diffs[i] - inv_diffs[j], 2 * gdim));
        int full = 4 * gdim * gdim - 1;
        cert.closure_dim = lie_closure_dim(gens, full);
        if (cert.closure_dim == full) {
            cert.status = SupergenericityCertificate::Status::Supergeneric;
            cert.method = SupergenericityCertificate::Method::LieClosure;
            return cert;
        }
    }

    // Sufficient test 2: affine span of the inverse differences is all of
    // M(g x g) and the derivative is invertible at the base point.
    RFMatrix deriv = core.derivative_entries();
    for (const auto& s0p : core.grid(static_cast<std::size_t>(detail::kMaxPsiAttempts))) {
        if (!ddl::defined_at(deriv, s0p)) continue;
        if (ddl::eval(deriv, s0p).rank() != gdim) continue;
        RFMatrix diff = core.entries() - lift(core.eval(s0p));
        if (diff.det().is_zero()) continue;
        auto pts = detail::difference_samples(core, s0p, grid_points);
        if (pts.size() < 2) continue;
        QMatrix at0 = core.eval(s0p);
        std::vector<QMatrix> inv;
        for (const auto& s : pts) inv.push_back((core.eval(s) - at0).inverse());
        SpanTracker span(static_cast<std::size_t>(gdim) * gdim);
        for (std::size_t i = 1; i < inv.size(); ++i) span.add(flatten(inv[i] - inv[0]));
        cert.affine_dim = span.dim();
        if (cert.affine_dim == gdim * gdim) {
            cert.status = SupergenericityCertificate::Status::Supergeneric;
            cert.method = SupergenericityCertificate::Method::AffineSpan;
            return cert;
        }
        break;  // one base point with full symbolic checks is representative
    }

    cert.status = SupergenericityCertificate::Status::GenericUndetermined;
    return cert;
}

}  // namespace ddl
