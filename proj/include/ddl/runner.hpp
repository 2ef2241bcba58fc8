#pragma once

#include "ddl/config.hpp"
#include "ddl/flow.hpp"
#include "ddl/genericity.hpp"
#include "ddl/normal_form.hpp"
#include "ddl/pencil.hpp"
#include "ddl/rep_checks.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

namespace ddl {

struct RunReport {
    nlohmann::json config_echo;
    nlohmann::json verdict;
    std::string csv_body;   // empty when the command produces no CSV
    std::string csv_path;   // where it was written, if anywhere
    long wall_ms = 0;
    long exact_fallback_count = 0;  // the engine is exact-only; kept for the report schema
};

namespace detail {

inline std::string join_ints(const std::vector<Int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ";";
        s += v[i].str();
    }
    return s;
}

inline nlohmann::json rational_list(const std::vector<Rational>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : v) a.push_back(to_string(r));
    return a;
}

inline nlohmann::json matrix_json(const QMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline nlohmann::json genericity_json(const GenericityReport& rep) {
    nlohmann::json j;
    j["verdict"] = rep.generic() ? "Generic" : "NotGeneric";
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& st : rep.witness_chain) {
        nlohmann::json sj;
        switch (st.kind) {
            case GenericityStage::Kind::Square: sj["kind"] = "square"; break;
            case GenericityStage::Kind::Reduce: sj["kind"] = "reduce"; break;
            case GenericityStage::Kind::Transpose: sj["kind"] = "transpose"; break;
        }
        if (st.kind != GenericityStage::Kind::Transpose) sj["s0"] = to_string(st.s0);
        sj["note"] = st.note;
        chain.push_back(sj);
    }
    j["witness_chain"] = chain;
    if (!rep.generic()) j["failing_stage"] = rep.failing_stage;
    return j;
}

inline nlohmann::json lemma_json(const LemmaVerdict& v) {
    nlohmann::json j;
    j["holds"] = v.holds;
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    j["equality"] = v.equality;
    if (v.equality) {
        j["identity_vrec"] = v.identity_vrec_ok;
        j["identity_sigma"] = v.identity_sigma_ok;
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline std::vector<Rational> uniform_s_grid(const MatrixCurve& curve, int count) {
    std::vector<Rational> g;
    for (int i = 1; i <= count; ++i) {
        Rational s = curve.lo() + (curve.hi() - curve.lo()) * Rational(i, count + 1);
        if (curve.defined_at(s)) g.push_back(std::move(s));
    }
    if (g.empty()) fail("EmptyGrid", "cli", "no usable s-grid points");
    return g;
}

}  // namespace detail

/// Executes a validated config; deterministic given (config, seed).
inline RunReport run(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.config_echo = cfg.echo;
    nlohmann::json& v = report.verdict;
    v["command"] = command_name(cfg.command);
    const int workers = cfg.effective_workers();

    switch (cfg.command) {
        case Command::CheckGeneric: {
            const MatrixCurve& curve = *cfg.curve;
            auto cert = supergeneric_status(curve);
            v["genericity"] = detail::genericity_json(cert.genericity);
            nlohmann::json sj;
            switch (cert.status) {
                case SupergenericityCertificate::Status::Supergeneric: sj["status"] = "Supergeneric"; break;
                case SupergenericityCertificate::Status::GenericUndetermined: sj["status"] = "GenericUndetermined"; break;
                case SupergenericityCertificate::Status::NotGeneric: sj["status"] = "NotGeneric"; break;
            }
            switch (cert.method) {
                case SupergenericityCertificate::Method::CoprimeShortcut: sj["method"] = "CoprimeShortcut"; break;
                case SupergenericityCertificate::Method::LieClosure: sj["method"] = "LieClosure"; break;
                case SupergenericityCertificate::Method::AffineSpan: sj["method"] = "AffineSpan"; break;
                case SupergenericityCertificate::Method::None: break;
            }
            if (cert.closure_dim >= 0) sj["closure_dim"] = cert.closure_dim;
            if (cert.affine_dim >= 0) sj["affine_dim"] = cert.affine_dim;
            if (!cert.sample_points.empty()) sj["samples"] = detail::rational_list(cert.sample_points);
            v["supergeneric"] = sj;
            break;
        }
        case Command::ReduceStandard: {
            auto res = standard_form(*cfg.curve, *cfg.at);
            v["base_point"] = to_string(res.base_point);
            v["witnesses"] = detail::rational_list(res.witnesses);
            v["z_B"] = detail::matrix_json(res.zprime.B());
            v["z_C"] = detail::matrix_json(res.zprime.C());
            v["verified"] = res.verify();
            break;
        }
        case Command::CheckPencil: {
            const MatrixCurve& curve = *cfg.curve;
            int max_dim = cfg.max_dim > 0 ? cfg.max_dim : curve.m() + curve.n();
            auto found = pencil_search(curve, max_dim);
            v["found"] = found.has_value();
            if (found) {
                nlohmann::json basis = nlohmann::json::array();
                for (const auto& row : found->w_basis) basis.push_back(detail::rational_list(row));
                v["w_basis"] = basis;
                v["r"] = found->r;
                v["dim_w"] = static_cast<int>(found->w_basis.size());
            }
            break;
        }
        case Command::DirichletScan: {
            const MatrixCurve& curve = *cfg.curve;
            auto s_grid = detail::uniform_s_grid(curve, cfg.s_samples);
            auto scan = dirichlet_scan(curve, cfg.mu, s_grid, cfg.n_grid(), workers);
            std::ostringstream csv;
            csv << "s,N,svp_norm,in_K_mu,p,q,residual\n";
            for (const auto& rec : scan.records) {
                csv << to_string(rec.s) << "," << to_string(rec.N) << "," << to_string(rec.svp_norm) << ","
                    << (rec.in_K_mu ? 1 : 0) << ",";
                if (rec.dirichlet) {
                    csv << detail::join_ints(rec.dirichlet->p) << "," << detail::join_ints(rec.dirichlet->q) << ","
                        << to_string(rec.dirichlet->residual);
                } else {
                    csv << ",,";
                }
                csv << "\n";
            }
            report.csv_body = csv.str();
            nlohmann::json per_s = nlohmann::json::array();
            for (const auto& sum : scan.per_s) {
                nlohmann::json sj;
                sj["s"] = to_string(sum.s);
                sj["hit_frequency"] = sum.hit_frequency;
                sj["persistent"] = sum.persistent;
                per_s.push_back(sj);
            }
            v["mu"] = to_string(cfg.mu);
            v["per_s"] = per_s;
            break;
        }
        case Command::Siegel: {
            const MatrixCurve& curve = *cfg.curve;
            if (!is_generic(curve).generic())
                fail("PreconditionViolated", "cli", "siegel requires a generic curve");
            SiegelSpec spec{cfg.r1, cfg.r2, cfg.N, cfg.s_samples};
            auto res = siegel_average(curve, spec, cfg.seed, workers);
            v["mean"] = to_string(res.mean);
            v["mean_approx"] = to_double(res.mean);
            v["target_volume"] = to_string(res.target);
            v["relative_deviation"] = res.relative_deviation;
            v["samples"] = res.samples;
            v["seed"] = cfg.seed;
            break;
        }
        case Command::Escape: {
            const MatrixCurve& curve = *cfg.curve;
            auto n_grid = cfg.n_grid();
            auto diag = escape_diagnostic(curve, *cfg.at, n_grid, workers);
            std::ostringstream csv;
            csv << "N,svp_norm\n";
            for (std::size_t i = 0; i < n_grid.size(); ++i)
                csv << to_string(n_grid[i]) << "," << to_string(diag.svp_values[i]) << "\n";
            report.csv_body = csv.str();
            v["s"] = to_string(*cfg.at);
            v["slope"] = diag.slope;
            v["svp"] = detail::rational_list(diag.svp_values);
            break;
        }
        case Command::Vwa: {
            QMatrix phi = cfg.phi ? *cfg.phi : cfg.curve->eval(*cfg.at);
            auto hits = vwa_scan(phi, cfg.delta, cfg.p_bound);
            std::ostringstream csv;
            csv << "p,q,residual\n";
            for (const auto& h : hits)
                csv << detail::join_ints(h.p) << "," << detail::join_ints(h.q) << "," << to_string(h.residual) << "\n";
            report.csv_body = csv.str();
            v["delta"] = to_string(cfg.delta);
            v["p_bound"] = cfg.p_bound;
            v["hits"] = static_cast<long>(hits.size());
            break;
        }
        case Command::RepVerify: {
            std::mt19937_64 rng(cfg.seed);
            std::uniform_int_distribution<int> numer(-20, 20);
            std::uniform_int_distribution<int> denom(1, 6);
            nlohmann::json per_dim = nlohmann::json::array();
            bool all_ok = true;
            for (int dim = cfg.dims_lo; dim <= cfg.dims_hi; ++dim) {
                Sl2Irrep rep(dim);
                long failures = 0, equalities = 0, identity_failures = 0;
                for (long t = 0; t < cfg.trials; ++t) {
                    Sl2Irrep::Vec vec = rep.zero();
                    bool nz = false;
                    for (auto& c : vec) {
                        c = Rational(numer(rng), denom(rng));
                        if (c != 0) nz = true;
                    }
                    if (!nz) vec[0] = Rational(1);
                    Rational r(0);
                    while (r == 0) r = Rational(numer(rng), denom(rng));
                    auto verdict = verify_max_inequality(rep, vec, r);
                    if (!verdict.holds) ++failures;
                    if (verdict.equality) {
                        ++equalities;
                        if (!verdict.identity_vrec_ok || !verdict.identity_sigma_ok) ++identity_failures;
                    }
                }
                nlohmann::json dj;
                dj["dim"] = dim;
                dj["trials"] = cfg.trials;
                dj["failures"] = failures;
                dj["equality_cases"] = equalities;
                dj["identity_failures"] = identity_failures;
                per_dim.push_back(dj);
                if (failures || identity_failures) all_ok = false;
            }
            v["per_dim"] = per_dim;
            v["all_ok"] = all_ok;
            v["seed"] = cfg.seed;
            break;
        }
        case Command::CGood: {
            const MatrixCurve& curve = *cfg.curve;
            if (cfg.entry_i < 0 || cfg.entry_i >= curve.m() || cfg.entry_j < 0 || cfg.entry_j >= curve.n())
                fail("ValidationError", "cli", "entry index out of range");
            const RationalFunction& f = curve.entries()(cfg.entry_i, cfg.entry_j);
            std::vector<Rational> samples;
            samples.reserve(static_cast<std::size_t>(cfg.grid_points));
            for (long i = 0; i < cfg.grid_points; ++i) {
                Rational s = curve.lo() + (curve.hi() - curve.lo()) * Rational(i, cfg.grid_points - 1);
                samples.push_back(rat_abs(f.eval(s)));
            }
            auto est = cgood_alpha_estimate(samples, cfg.epsilons);
            v["alpha_hat"] = est.alpha_hat;
            v["c_hat"] = est.c_hat;
            v["points_used"] = est.points_used;
            break;
        }
    }

    if (!cfg.output_csv.empty() && !report.csv_body.empty()) {
        std::ofstream out(cfg.output_csv);
        if (!out) fail("IoError", "cli", "cannot write " + cfg.output_csv);
        out << report.csv_body;
        report.csv_path = cfg.output_csv;
    }
    report.wall_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
    if (!cfg.output_json.empty()) {
        nlohmann::json full;
        full["config"] = report.config_echo;
        full["verdict"] = report.verdict;
        if (!report.csv_path.empty()) full["csv_path"] = report.csv_path;
        full["wall_ms"] = report.wall_ms;
        full["exact_fallback_count"] = report.exact_fallback_count;
        std::ofstream out(cfg.output_json);
        if (!out) fail("IoError", "cli", "cannot write " + cfg.output_json);
        out << full.dump(2) << "\n";
    }
    return report;
}

}  // namespace ddl
