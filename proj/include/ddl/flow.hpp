#pragma once

#include "ddl/curve.hpp"
#include "ddl/lattice.hpp"
#include "ddl/parallel.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace ddl {

/// The lattice a(log N) u(phi(s)) Z^{m+n} at a rational point of the flow.
struct FlowPoint {
    Rational s;
    Rational N;
    int m = 0, n = 0;
    IntegerLatticeBasis basis;
};

/// Basis for a(log N) u(Phi) Z^{m+n} with the scale/denominator split:
/// [[N^n I_m, N^n Phi], [0, N^-m I_n]].
inline IntegerLatticeBasis lattice_basis_for(const QMatrix& phi, const Rational& N) {
    if (N <= 0) fail("InvalidN", "flow", "N must be positive");
    const int m = phi.rows(), n = phi.cols();
    QMatrix g(m + n, m + n);
    Rational up = rat_pow(N, n), down = rat_pow(N, -static_cast<long>(m));
    for (int i = 0; i < m; ++i) {
        g(i, i) = up;
        for (int j = 0; j < n; ++j) g(i, m + j) = up * phi(i, j);
    }
    for (int j = 0; j < n; ++j) g(m + j, m + j) = down;
    return IntegerLatticeBasis::from_rational(g);
}

inline FlowPoint lattice_at(const MatrixCurve& curve, const Rational& s, const Rational& N) {
    if (N <= 0) fail("InvalidN", "flow", "N must be positive");
    if (!curve.contains(s)) fail("OutOfInterval", "flow", to_string(s) + " outside the curve interval");
    if (!curve.defined_at(s)) fail("OutOfInterval", "flow", "curve has a pole at " + to_string(s));
    FlowPoint p;
    p.s = s;
    p.N = N;
    p.m = curve.m();
    p.n = curve.n();
    p.basis = lattice_basis_for(curve.eval(s), N);
    return p;
}

/// K_mu membership: no nonzero lattice point in the closed sup-norm ball of
/// radius mu, i.e. svp > mu. This closed-ball convention makes the
/// correspondence with Dirichlet's closed inequalities an exact biconditional.
struct KmuResult {
    bool in_K_mu = false;
    Rational svp_norm;
    std::vector<Int> svp_coeffs;
};

inline KmuResult in_K_mu(const FlowPoint& p, const Rational& mu) {
    if (!(mu > 0 && mu < 1)) fail("InvalidMu", "flow", "need 0 < mu < 1");
    SvpResult svp = shortest_vector_sup(p.basis);
    return {svp.norm > mu, svp.norm, svp.coeffs};
}

// ---------------------------------------------------------------------------
// Dirichlet solver
// ---------------------------------------------------------------------------

struct DirichletSolution {
    std::vector<Int> p;  // in Z^n, nonzero
    std::vector<Int> q;  // in Z^m
    Rational residual;   // ||Phi p - q||_inf
};

namespace detail {

inline Rational residual_sup(const QMatrix& phi, const std::vector<Int>& p, const std::vector<Int>& q) {
    Rational worst(0);
    for (int i = 0; i < phi.rows(); ++i) {
        Rational row(0);
        for (int j = 0; j < phi.cols(); ++j) row += phi(i, j) * Rational(p[static_cast<std::size_t>(j)]);
        Rational r = rat_abs(row - Rational(q[static_cast<std::size_t>(i)]));
        if (r > worst) worst = r;
    }
    return worst;
}

inline std::vector<Int> nearest_q(const QMatrix& phi, const std::vector<Int>& p) {
    std::vector<Int> q(static_cast<std::size_t>(phi.rows()));
    for (int i = 0; i < phi.rows(); ++i) {
        Rational row(0);
        for (int j = 0; j < phi.cols(); ++j) row += phi(i, j) * Rational(p[static_cast<std::size_t>(j)]);
        q[static_cast<std::size_t>(i)] = rat_round(row);
    }
    return q;
}

}  // namespace detail

/// Searches p != 0, q with ||p|| <= mu N^m and ||Phi p - q|| <= mu N^{-n}.
///
/// Small coefficient boxes are enumerated directly; otherwise the search runs
/// as a complete short-vector enumeration on a(log N) u(Phi) Z^{m+n} at
/// radius mu. Both paths are exact, so an empty result certifies that no
/// solution exists.
inline std::optional<DirichletSolution> dirichlet_check(const QMatrix& phi, const Rational& N, const Rational& mu) {
    if (!(mu > 0 && mu <= 1)) fail("InvalidMu", "flow", "need 0 < mu <= 1");
    if (N < 1) fail("InvalidN", "flow", "need N >= 1");
    const int m = phi.rows(), n = phi.cols();
    const Rational p_cap = mu * rat_pow(N, m);
    const Rational res_cap = mu * rat_pow(N, -static_cast<long>(n));
    const Int P = rat_floor(p_cap);
    if (P < 1) return std::nullopt;  // no nonzero p allowed

    // Direct path: enumerate the p box when it is small.
    double box = std::pow(2.0 * P.convert_to<double>() + 1.0, n);
    if (box <= 1e5) {
        std::vector<Int> p(static_cast<std::size_t>(n), -P);
        std::optional<DirichletSolution> best;
        while (true) {
            bool zero = true;
            for (const auto& c : p)
                if (c != 0) { zero = false; break; }
            if (!zero) {
                std::vector<Int> q = detail::nearest_q(phi, p);
                Rational r = detail::residual_sup(phi, p, q);
                if (r <= res_cap) best = DirichletSolution{p, q, r};  // first hit in lex order
            }
            int i = n - 1;
            while (i >= 0) {
                if (p[static_cast<std::size_t>(i)] < P) {
                    ++p[static_cast<std::size_t>(i)];
                    break;
                }
                p[static_cast<std::size_t>(i)] = -P;
                --i;
            }
            if (i < 0) break;
            if (best) break;
        }
        return best;
    }

    // Lattice path: any solution is a nonzero lattice vector of sup-norm <= mu
    // with nonzero p-part, and conversely.
    IntegerLatticeBasis basis = lattice_basis_for(phi, N);
    std::optional<DirichletSolution> best;
    Rational best_norm;
    enumerate_sup_ball(basis, mu, [&](const std::vector<Int>& x, const Rational& norm) {
        bool p_zero = true;
        for (int j = 0; j < n; ++j)
            if (x[static_cast<std::size_t>(m + j)] != 0) { p_zero = false; break; }
        if (p_zero) return;
        if (best && !(norm < best_norm)) return;
        DirichletSolution sol;
        sol.p.assign(x.begin() + m, x.end());
        sol.q.assign(static_cast<std::size_t>(m), Int(0));
        for (int i = 0; i < m; ++i) sol.q[static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(i)];
        sol.residual = detail::residual_sup(phi, sol.p, sol.q);
        best = std::move(sol);
        best_norm = norm;
    });
    return best;
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

struct TrajectoryRecord {
    Rational s;
    Rational N;
    Rational svp_norm;
    bool in_K_mu = false;
    std::optional<DirichletSolution> dirichlet;
};

struct ScanSummary {
    Rational s;
    double hit_frequency = 0.0;   // fraction of N values with in_K_mu true
    bool persistent = false;      // any hit in the top quartile of the N grid
};

struct DirichletScan {
    std::vector<TrajectoryRecord> records;  // grid order: s-major, N-minor
    std::vector<ScanSummary> per_s;
};

inline DirichletScan dirichlet_scan(const MatrixCurve& curve, const Rational& mu,
                                    const std::vector<Rational>& s_grid,
                                    const std::vector<Rational>& n_grid, int workers = 1) {
    if (s_grid.empty() || n_grid.empty()) fail("EmptyGrid", "flow", "scan needs nonempty grids");
    if (!(mu > 0 && mu < 1)) fail("InvalidMu", "flow", "need 0 < mu < 1");
    DirichletScan scan;
    scan.records.resize(s_grid.size() * n_grid.size());
    parallel_for(scan.records.size(), workers, [&](std::size_t cell) {
        std::size_t si = cell / n_grid.size(), ni = cell % n_grid.size();
        const Rational& s = s_grid[si];
        const Rational& N = n_grid[ni];
        FlowPoint p = lattice_at(curve, s, N);
        TrajectoryRecord rec;
        rec.s = s;
        rec.N = N;
        KmuResult k = in_K_mu(p, mu);
        rec.svp_norm = k.svp_norm;
        rec.in_K_mu = k.in_K_mu;
        if (!rec.in_K_mu && N >= 1) {
            // the SVP witness vector is itself a Dirichlet solution at level mu
            const auto& x = k.svp_coeffs;
            bool p_zero = true;
            for (int j = 0; j < curve.n(); ++j)
                if (x[static_cast<std::size_t>(curve.m() + j)] != 0) { p_zero = false; break; }
            if (!p_zero) {
                DirichletSolution sol;
                sol.p.assign(x.begin() + curve.m(), x.end());
                sol.q.assign(static_cast<std::size_t>(curve.m()), Int(0));
                for (int i = 0; i < curve.m(); ++i) sol.q[static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(i)];
                sol.residual = detail::residual_sup(curve.eval(s), sol.p, sol.q);
                rec.dirichlet = std::move(sol);
            }
        }
        scan.records[cell] = std::move(rec);
    });
    // per-s summaries; top quartile = the ceil(count/4) largest N values
    std::vector<Rational> sorted_n = n_grid;
    std::sort(sorted_n.begin(), sorted_n.end());
    std::size_t quart = (n_grid.size() + 3) / 4;
    Rational n_threshold = sorted_n[sorted_n.size() - quart];
    for (std::size_t si = 0; si < s_grid.size(); ++si) {
        ScanSummary sum;
        sum.s = s_grid[si];
        long hits = 0;
        for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
            const auto& rec = scan.records[si * n_grid.size() + ni];
            if (rec.in_K_mu) {
                ++hits;
                if (rec.N >= n_threshold) sum.persistent = true;
            }
        }
        sum.hit_frequency = static_cast<double>(hits) / static_cast<double>(n_grid.size());
        scan.per_s.push_back(sum);
    }
    return scan;
}

// ---------------------------------------------------------------------------
// Siegel-average equidistribution diagnostic
// ---------------------------------------------------------------------------

struct SiegelSpec {
    Rational r1, r2;   // annulus radii, 0 < r1 < r2 (sup-norm)
    Rational N;
    int s_samples = 0;

    Rational target_volume(int dim) const { return rat_pow(2 * r2, dim) - rat_pow(2 * r1, dim); }
};

struct SiegelResult {
    Rational mean;       // exact average count per sample
    Rational target;     // annulus volume
    double relative_deviation = 0.0;
    long samples = 0;
};

/// Averages the annulus point count over random curve points. The Siegel mean
/// value (all nonzero vectors, Haar-random lattice) equals the Lebesgue
/// volume of the annulus, which serves as the oracle.
inline SiegelResult siegel_average(const MatrixCurve& curve, const SiegelSpec& spec, std::uint64_t seed,
                                   int workers = 1) {
    if (!(spec.r1 > 0 && spec.r1 < spec.r2)) fail("InvalidAnnulus", "flow", "need 0 < r1 < r2");
    if (spec.N <= 0) fail("InvalidN", "flow", "need N > 0");
    if (spec.s_samples <= 0) fail("EmptyGrid", "flow", "need at least one sample");
    const long D = 1048573;  // prime denominator: no resonance with dyadic N
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(0, D - 1);
    std::vector<Rational> samples;
    samples.reserve(static_cast<std::size_t>(spec.s_samples));
    while (static_cast<int>(samples.size()) < spec.s_samples) {
        Rational s = curve.lo() + (curve.hi() - curve.lo()) * Rational(pick(rng), D);
        if (curve.defined_at(s)) samples.push_back(std::move(s));
    }
    std::vector<long> counts(samples.size(), 0);
    parallel_for(samples.size(), workers, [&](std::size_t i) {
        FlowPoint p = lattice_at(curve, samples[i], spec.N);
        counts[i] = count_in_annulus(p.basis, spec.r1, spec.r2);
    });
    long total = 0;
    for (long c : counts) total += c;
    SiegelResult res;
    res.samples = static_cast<long>(samples.size());
    res.mean = Rational(total, res.samples);
    res.target = spec.target_volume(curve.m() + curve.n());
    res.relative_deviation = std::abs(to_double(res.mean) - to_double(res.target)) / to_double(res.target);
    return res;
}

// ---------------------------------------------------------------------------
// Cusp-escape diagnostic
// ---------------------------------------------------------------------------

struct EscapeDiagnostic {
    double slope = 0.0;  // least-squares slope of log svp vs log N
    std::vector<Rational> svp_values;
};

inline EscapeDiagnostic escape_diagnostic(const MatrixCurve& curve, const Rational& s,
                                          const std::vector<Rational>& n_grid, int workers = 1) {
    if (n_grid.size() < 3) fail("EmptyGrid", "flow", "escape diagnostic needs >= 3 grid points");
    EscapeDiagnostic diag;
    diag.svp_values.resize(n_grid.size());
    parallel_for(n_grid.size(), workers, [&](std::size_t i) {
        FlowPoint p = lattice_at(curve, s, n_grid[i]);
        diag.svp_values[i] = shortest_vector_sup(p.basis).norm;
    });
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double cnt = static_cast<double>(n_grid.size());
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        double x = std::log(to_double(n_grid[i]));
        double y = std::log(to_double(diag.svp_values[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    diag.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return diag;
}

// ---------------------------------------------------------------------------
// Very-well-approximable scan
// ---------------------------------------------------------------------------

struct VwaHit {
    std::vector<Int> p;
    std::vector<Int> q;
    Rational residual;
};

/// All integer p with 0 < ||p|| <= p_bound admitting q (nearest integers to
/// Phi p) with ||Phi p - q|| <= ||p||^{-n/m - delta}, compared exactly via
/// residual^e_den * ||p||^e_num <= 1.
inline std::vector<VwaHit> vwa_scan(const QMatrix& phi, const Rational& delta, long p_bound) {
    if (p_bound < 1) fail("EmptyGrid", "flow", "p_bound must be >= 1");
    if (delta <= 0) fail("InvalidMu", "flow", "delta must be positive");
    const int m = phi.rows(), n = phi.cols();
    Rational e = Rational(n, m) + delta;
    const Int e_num = num(e), e_den = den(e);
    std::vector<VwaHit> hits;
    std::vector<Int> p(static_cast<std::size_t>(n), Int(-p_bound));
    while (true) {
        bool zero = true;
        for (const auto& c : p)
            if (c != 0) { zero = false; break; }
        if (!zero) {
            std::vector<Int> q = detail::nearest_q(phi, p);
            Rational r = detail::residual_sup(phi, p, q);
            Int pn = 0;
            for (const auto& c : p)
                if (int_abs(c) > pn) pn = int_abs(c);
            // r <= pn^{-e}  <=>  r^{e_den} * pn^{e_num} <= 1
            bool ok;
            if (r == 0) ok = true;
            else ok = rat_pow(r, e_den.convert_to<long>()) * rat_pow(Rational(pn), e_num.convert_to<long>()) <= 1;
            if (ok) hits.push_back({p, q, r});
        }
        int i = n - 1;
        while (i >= 0) {
            if (p[static_cast<std::size_t>(i)] < p_bound) {
                ++p[static_cast<std::size_t>(i)];
                break;
            }
            p[static_cast<std::size_t>(i)] = Int(-p_bound);
            --i;
        }
        if (i < 0) break;
    }
    return hits;
}

// ---------------------------------------------------------------------------
// (C, alpha)-good exponent estimation
// ---------------------------------------------------------------------------

struct CGoodEstimate {
    double alpha_hat = 0.0;
    double c_hat = 0.0;
    long points_used = 0;
};

/// Log-log regression of sublevel-set measure against epsilon / sup|f|,
/// from samples of |f| on a grid over J.
inline CGoodEstimate cgood_alpha_estimate(const std::vector<Rational>& abs_values,
                                          const std::vector<Rational>& epsilons) {
    if (abs_values.size() < 100) fail("EmptyGrid", "flow", "need at least 100 grid samples");
    Rational sup(0);
    for (const auto& v : abs_values)
        if (v > sup) sup = v;
    if (sup == 0) fail("ConstantZeroFunction", "flow", "|f| vanishes identically on the grid");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long used = 0;
    for (const auto& eps : epsilons) {
        if (!(eps > 0) || eps > sup) continue;
        long count = 0;
        for (const auto& v : abs_values)
            if (v < eps) ++count;
        if (count == 0) continue;
        double x = std::log(to_double(eps / sup));
        double y = std::log(static_cast<double>(count) / static_cast<double>(abs_values.size()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 2) fail("EmptyGrid", "flow", "not enough usable epsilon values");
    CGoodEstimate est;
    const double cnt = static_cast<double>(used);
    est.alpha_hat = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    est.c_hat = std::exp((sy - est.alpha_hat * sx) / cnt);
    est.points_used = used;
    return est;
}

}  // namespace ddl
