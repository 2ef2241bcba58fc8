#pragma once

#include "ddl/catalog.hpp"
#include "ddl/curve.hpp"
#include "ddl/parallel.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ddl {

enum class Command {
    CheckGeneric,
    ReduceStandard,
    CheckPencil,
    DirichletScan,
    Siegel,
    Escape,
    Vwa,
    RepVerify,
    CGood,
};

inline std::optional<Command> command_from_string(const std::string& s) {
    if (s == "check-generic") return Command::CheckGeneric;
    if (s == "reduce-standard") return Command::ReduceStandard;
    if (s == "check-pencil") return Command::CheckPencil;
    if (s == "dirichlet-scan") return Command::DirichletScan;
    if (s == "siegel") return Command::Siegel;
    if (s == "escape") return Command::Escape;
    if (s == "vwa") return Command::Vwa;
    if (s == "rep-verify") return Command::RepVerify;
    if (s == "cgood") return Command::CGood;
    return std::nullopt;
}

inline std::string command_name(Command c) {
    switch (c) {
        case Command::CheckGeneric: return "check-generic";
        case Command::ReduceStandard: return "reduce-standard";
        case Command::CheckPencil: return "check-pencil";
        case Command::DirichletScan: return "dirichlet-scan";
        case Command::Siegel: return "siegel";
        case Command::Escape: return "escape";
        case Command::Vwa: return "vwa";
        case Command::RepVerify: return "rep-verify";
        case Command::CGood: return "cgood";
    }
    return "?";
}

struct ExperimentConfig {
    Command command = Command::CheckGeneric;
    std::optional<MatrixCurve> curve;
    std::string curve_label;

    Rational mu = Rational(1, 2);
    std::optional<Rational> at;           // s0 / s for reduce-standard, escape, vwa-from-curve
    int s_samples = 64;
    long n_base = 2;
    int n_exp_lo = 1, n_exp_hi = 20;
    Rational r1 = Rational(1, 2), r2 = Rational(3, 2), N = Rational(4096);
    Rational delta = Rational(1);
    long p_bound = 100;
    int dims_lo = 1, dims_hi = 8;
    long trials = 1000;
    std::vector<Rational> epsilons;
    long grid_points = 10000;
    int entry_i = 0, entry_j = 0;
    int max_dim = 0;                      // 0: use m+n
    std::optional<QMatrix> phi;           // explicit vwa target

    std::string output_csv, output_json;
    int workers = 0;                      // 0: available parallelism
    std::uint64_t seed = 1;

    nlohmann::json echo;

    std::vector<Rational> n_grid() const {
        std::vector<Rational> g;
        for (int e = n_exp_lo; e <= n_exp_hi; ++e) g.push_back(rat_pow(Rational(n_base), e));
        return g;
    }
    int effective_workers() const { return workers <= 0 ? default_workers() : workers; }
};

namespace detail {

inline std::optional<Rational> rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    return std::nullopt;
}

inline std::optional<MatrixCurve> curve_from_json(const nlohmann::json& j, std::vector<std::string>& errors) {
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name.rfind("catalog:", 0) == 0) name = name.substr(8);
        auto c = catalog_curve(name);
        if (!c) errors.push_back("unknown catalog curve: " + name);
        return c;
    }
    if (!j.is_object()) {
        errors.push_back("curve must be an object or a catalog name");
        return std::nullopt;
    }
    if (!j.contains("m") || !j.contains("n") || !j.contains("interval") || !j.contains("entries")) {
        errors.push_back("curve needs fields m, n, interval, entries");
        return std::nullopt;
    }
    int m = 0, n = 0;
    if (j["m"].is_number_integer()) m = j["m"].get<int>();
    else errors.push_back("curve.m must be an integer");
    if (j["n"].is_number_integer()) n = j["n"].get<int>();
    else errors.push_back("curve.n must be an integer");
    if (m < 1 || n < 1) errors.push_back("curve dimensions must be positive");
    std::optional<Rational> lo, hi;
    if (j["interval"].is_array() && j["interval"].size() == 2) {
        lo = rational_from_json(j["interval"][0]);
        hi = rational_from_json(j["interval"][1]);
        if (!lo || !hi) errors.push_back("curve.interval endpoints must be rationals");
        else if (!(*lo < *hi)) errors.push_back("curve.interval needs a < b");
    } else {
        errors.push_back("curve.interval must be [a, b]");
    }
    if (!j["entries"].is_array() || static_cast<int>(j["entries"].size()) != m) {
        errors.push_back("curve.entries must be an m x n array of polynomial strings");
        return std::nullopt;
    }
    if (!errors.empty()) return std::nullopt;
    RFMatrix e(m, n);
    for (int i = 0; i < m; ++i) {
        const auto& row = j["entries"][static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            errors.push_back("curve.entries row " + std::to_string(i) + " must have n entries");
            return std::nullopt;
        }
        for (int jj = 0; jj < n; ++jj) {
            const auto& cell = row[static_cast<std::size_t>(jj)];
            if (!cell.is_string()) {
                errors.push_back("curve entry (" + std::to_string(i) + "," + std::to_string(jj) + ") must be a polynomial string");
                continue;
            }
            auto p = parse_polynomial(cell.get<std::string>());
            if (!p) {
                errors.push_back("unparseable polynomial at (" + std::to_string(i) + "," + std::to_string(jj) + "): " + cell.get<std::string>());
                continue;
            }
            e(i, jj) = RationalFunction(*p);
        }
    }
    if (!errors.empty()) return std::nullopt;
    try {
        return MatrixCurve(e, *lo, *hi);
    } catch (const Error& err) {
        errors.push_back(std::string("invalid curve: ") + err.what());
        return std::nullopt;
    }
}

}  // namespace detail

struct ParseOutcome {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors;

    bool ok() const { return config.has_value(); }
};

/// Validates a JSON experiment document; on failure every detected problem is
/// reported, not just the first.
inline ParseOutcome parse_config(const std::string& text) {
    ParseOutcome out;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        out.errors.push_back(std::string("ParseError: ") + e.what());
        return out;
    }
    ExperimentConfig cfg;
    auto& errors = out.errors;
    if (!j.contains("command") || !j["command"].is_string()) {
        errors.push_back("missing command");
        return out;
    }
    auto cmd = command_from_string(j["command"].get<std::string>());
    if (!cmd) {
        errors.push_back("unknown command: " + j["command"].get<std::string>());
        return out;
    }
    cfg.command = *cmd;

    auto get_rational = [&](const char* key, Rational& slot) {
        if (!j.contains(key)) return;
        auto r = detail::rational_from_json(j[key]);
        if (r) slot = *r;
        else errors.push_back(std::string(key) + " must be a rational (\"p/q\" or integer)");
    };
    auto get_int = [&](const char* key, auto& slot) {
        if (!j.contains(key)) return;
        if (j[key].is_number_integer()) slot = j[key].get<long>();
        else errors.push_back(std::string(key) + " must be an integer");
    };

    if (j.contains("curve")) {
        cfg.curve = detail::curve_from_json(j["curve"], errors);
        cfg.curve_label = j["curve"].is_string() ? j["curve"].get<std::string>() : "inline";
    }
    get_rational("mu", cfg.mu);
    if (j.contains("at")) {
        auto r = detail::rational_from_json(j["at"]);
        if (r) cfg.at = *r;
        else errors.push_back("at must be a rational");
    }
    long tmp;
    if (j.contains("s_samples")) { get_int("s_samples", tmp); cfg.s_samples = static_cast<int>(tmp); }
    get_int("n_base", cfg.n_base);
    if (j.contains("n_exp") && j["n_exp"].is_array() && j["n_exp"].size() == 2) {
        cfg.n_exp_lo = j["n_exp"][0].get<int>();
        cfg.n_exp_hi = j["n_exp"][1].get<int>();
    }
    get_rational("r1", cfg.r1);
    get_rational("r2", cfg.r2);
    get_rational("N", cfg.N);
    get_rational("delta", cfg.delta);
    get_int("p_bound", cfg.p_bound);
    if (j.contains("dims") && j["dims"].is_array() && j["dims"].size() == 2) {
        cfg.dims_lo = j["dims"][0].get<int>();
        cfg.dims_hi = j["dims"][1].get<int>();
    }
    get_int("trials", cfg.trials);
    if (j.contains("epsilons") && j["epsilons"].is_array()) {
        for (const auto& e : j["epsilons"]) {
            auto r = detail::rational_from_json(e);
            if (r) cfg.epsilons.push_back(*r);
            else errors.push_back("epsilons entries must be rationals");
        }
    }
    get_int("grid_points", cfg.grid_points);
    if (j.contains("entry") && j["entry"].is_array() && j["entry"].size() == 2) {
        cfg.entry_i = j["entry"][0].get<int>();
        cfg.entry_j = j["entry"][1].get<int>();
    }
    if (j.contains("max_dim")) { get_int("max_dim", tmp); cfg.max_dim = static_cast<int>(tmp); }
    if (j.contains("phi") && j["phi"].is_array()) {
        int rows = static_cast<int>(j["phi"].size());
        int cols = rows > 0 && j["phi"][0].is_array() ? static_cast<int>(j["phi"][0].size()) : 0;
        if (rows < 1 || cols < 1) {
            errors.push_back("phi must be a nonempty 2d array of rationals");
        } else {
            QMatrix phi(rows, cols);
            bool ok = true;
            for (int i = 0; i < rows; ++i)
                for (int jj = 0; jj < cols; ++jj) {
                    auto r = detail::rational_from_json(j["phi"][static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)]);
                    if (r) phi(i, jj) = *r;
                    else ok = false;
                }
            if (ok) cfg.phi = phi;
            else errors.push_back("phi entries must be rationals");
        }
    }
    if (j.contains("output_csv")) cfg.output_csv = j["output_csv"].get<std::string>();
    if (j.contains("output_json")) cfg.output_json = j["output_json"].get<std::string>();
    if (j.contains("workers")) { get_int("workers", tmp); cfg.workers = static_cast<int>(tmp); }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();

    // command-specific validation
    auto need_curve = [&]() {
        if (!cfg.curve) errors.push_back(command_name(cfg.command) + " requires a valid curve");
    };
    switch (cfg.command) {
        case Command::CheckGeneric:
        case Command::CheckPencil:
            need_curve();
            break;
        case Command::ReduceStandard:
            need_curve();
            if (!cfg.at) errors.push_back("reduce-standard requires at (the base point s0)");
            if (cfg.curve && cfg.curve->n() % cfg.curve->m() != 0)
                errors.push_back("reduce-standard requires n = k m");
            break;
        case Command::DirichletScan:
            need_curve();
            if (!(cfg.mu > 0 && cfg.mu < 1)) errors.push_back("mu must be in (0,1)");
            if (cfg.s_samples < 1) errors.push_back("s_samples must be >= 1");
            if (cfg.n_exp_lo > cfg.n_exp_hi) errors.push_back("n_exp range is empty");
            break;
        case Command::Siegel:
            need_curve();
            if (!(cfg.r1 > 0 && cfg.r1 < cfg.r2)) errors.push_back("need 0 < r1 < r2");
            if (cfg.N <= 0) errors.push_back("N must be positive");
            if (cfg.s_samples < 1) errors.push_back("s_samples must be >= 1");
            break;
        case Command::Escape:
            need_curve();
            if (!cfg.at) errors.push_back("escape requires at (the curve point s)");
            if (cfg.n_exp_hi - cfg.n_exp_lo + 1 < 3) errors.push_back("escape needs >= 3 N-grid points");
            break;
        case Command::Vwa:
            if (!cfg.phi && !(cfg.curve && cfg.at)) errors.push_back("vwa requires phi, or a curve plus at");
            if (cfg.delta <= 0) errors.push_back("delta must be positive");
            if (cfg.p_bound < 1) errors.push_back("p_bound must be >= 1");
            break;
        case Command::RepVerify:
            if (cfg.dims_lo < 1 || cfg.dims_hi < cfg.dims_lo || cfg.dims_hi > 8)
                errors.push_back("dims must satisfy 1 <= lo <= hi <= 8");
            if (cfg.trials < 1) errors.push_back("trials must be >= 1");
            break;
        case Command::CGood:
            need_curve();
            if (cfg.epsilons.empty()) errors.push_back("cgood requires epsilons");
            if (cfg.grid_points < 100) errors.push_back("cgood needs >= 100 grid points");
            break;
    }
    if (cfg.at && cfg.curve && !cfg.curve->contains(*cfg.at))
        errors.push_back("at is outside the curve interval");

    if (!errors.empty()) return out;
    cfg.echo = j;
    out.config = std::move(cfg);
    return out;
}

}  // namespace ddl
