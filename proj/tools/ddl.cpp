// Command-line front end: exact Diophantine / lattice-flow experiments.

#include "ddl/runner.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// "lo..hi" -> [lo, hi]
bool parse_range(const std::string& text, int& lo, int& hi) {
    auto pos = text.find("..");
    if (pos == std::string::npos) return false;
    try {
        lo = std::stoi(text.substr(0, pos));
        hi = std::stoi(text.substr(pos + 2));
    } catch (...) {
        return false;
    }
    return true;
}

// "a,b;c,d" -> JSON 2d array of rational strings
nlohmann::json parse_matrix_arg(const std::string& text) {
    nlohmann::json rows = nlohmann::json::array();
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        nlohmann::json r = nlohmann::json::array();
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) r.push_back(cell);
        rows.push_back(r);
    }
    return rows;
}

nlohmann::json curve_arg_to_json(const std::string& arg) {
    if (arg.rfind("catalog:", 0) == 0 || ddl::catalog_curve(arg)) return arg;
    std::ifstream in(arg);
    if (!in) throw ddl::Error("ValidationError", "cli", "cannot open curve file " + arg);
    nlohmann::json j;
    in >> j;
    return j;
}

int run_config(nlohmann::json doc) {
    if (const char* seed_env = std::getenv("DDL_SEED"); seed_env && !doc.contains("seed"))
        doc["seed"] = std::strtoull(seed_env, nullptr, 10);
    auto outcome = ddl::parse_config(doc.dump());
    if (!outcome.ok()) {
        for (const auto& e : outcome.errors) std::cerr << "config error: " << e << "\n";
        return 2;
    }
    ddl::RunReport report = ddl::run(*outcome.config);
    nlohmann::json printed;
    printed["verdict"] = report.verdict;
    if (!report.csv_path.empty()) printed["csv_path"] = report.csv_path;
    printed["wall_ms"] = report.wall_ms;
    printed["exact_fallback_count"] = report.exact_fallback_count;
    std::cout << printed.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Dirichlet-improvability and lattice-flow experiments"};
    app.require_subcommand(1);

    std::string curve_arg, at_arg, mu_arg = "1/2", nexp_arg = "1..20", dims_arg = "1..8";
    std::string r1_arg = "1/2", r2_arg = "3/2", nn_arg = "4096", delta_arg = "1";
    std::string eps_arg, phi_arg, entry_arg = "0,0", csv_arg, json_arg, config_arg;
    long nbase = 2, pbound = 100, trials = 1000, grid_points = 10000;
    int s_samples = 64, workers = 0, max_dim = 0;

    auto add_common = [&](CLI::App* cmd, bool with_curve) {
        if (with_curve) cmd->add_option("--curve", curve_arg, "curve JSON file or catalog:NAME")->required();
        cmd->add_option("--csv", csv_arg, "CSV output path");
        cmd->add_option("--json", json_arg, "summary JSON output path");
        cmd->add_option("--workers", workers, "worker count (1 = serial, 0 = auto)");
    };

    auto* check = app.add_subcommand("check-generic", "genericity and supergenericity verdicts");
    add_common(check, true);

    auto* reduce = app.add_subcommand("reduce-standard", "standard-form reduction at a base point");
    add_common(reduce, true);
    reduce->add_option("--at", at_arg, "base point s0 (rational)")->required();

    auto* pencil = app.add_subcommand("check-pencil", "kernel-intersection pencil search");
    add_common(pencil, true);
    pencil->add_option("--max-dim", max_dim, "largest candidate subspace dimension (default m+n)");

    auto* scan = app.add_subcommand("dirichlet-scan", "K_mu hit frequencies along the flow");
    add_common(scan, true);
    scan->add_option("--mu", mu_arg, "improvement factor in (0,1)");
    scan->add_option("--n-base", nbase, "N grid base");
    scan->add_option("--n-exp", nexp_arg, "N grid exponent range lo..hi");
    scan->add_option("--s-samples", s_samples, "number of s samples");

    auto* siegel = app.add_subcommand("siegel", "annulus point-count average vs Lebesgue volume");
    add_common(siegel, true);
    siegel->add_option("--r1", r1_arg, "inner radius");
    siegel->add_option("--r2", r2_arg, "outer radius");
    siegel->add_option("--n", nn_arg, "flow time N = e^t");
    siegel->add_option("--s-samples", s_samples, "number of random s samples");

    auto* escape = app.add_subcommand("escape", "cusp-escape slope of log svp vs log N");
    add_common(escape, true);
    escape->add_option("--at", at_arg, "curve point s (rational)")->required();
    escape->add_option("--n-base", nbase, "N grid base");
    escape->add_option("--n-exp", nexp_arg, "N grid exponent range lo..hi");

    auto* vwa = app.add_subcommand("vwa", "very-well-approximable scan");
    vwa->add_option("--curve", curve_arg, "curve JSON file or catalog:NAME");
    vwa->add_option("--at", at_arg, "evaluate the curve here to get Phi");
    vwa->add_option("--phi", phi_arg, "explicit Phi, rows 'a,b;c,d'");
    vwa->add_option("--delta", delta_arg, "exponent excess delta > 0");
    vwa->add_option("--p-bound", pbound, "search box bound for p");
    vwa->add_option("--csv", csv_arg, "CSV output path");
    vwa->add_option("--json", json_arg, "summary JSON output path");

    auto* rep = app.add_subcommand("rep-verify", "lambda^max lemma sweep over sl(2)-irreps");
    rep->add_option("--dims", dims_arg, "irrep dimension range lo..hi");
    rep->add_option("--trials", trials, "random trials per dimension");
    rep->add_option("--json", json_arg, "summary JSON output path");

    auto* cgood = app.add_subcommand("cgood", "(C, alpha)-good exponent estimate for a curve entry");
    add_common(cgood, true);
    cgood->add_option("--epsilons", eps_arg, "comma-separated epsilon list")->required();
    cgood->add_option("--grid-points", grid_points, "sample count over the interval");
    cgood->add_option("--entry", entry_arg, "which entry |phi_ij|, as i,j");

    auto* runc = app.add_subcommand("run", "run a full experiment config");
    runc->add_option("--config", config_arg, "experiment JSON document")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json doc;
        if (runc->parsed()) {
            std::ifstream in(config_arg);
            if (!in) {
                std::cerr << "cannot open config " << config_arg << "\n";
                return 2;
            }
            in >> doc;
            return run_config(doc);
        }
        auto* sub = app.get_subcommands().front();
        doc["command"] = sub->get_name();
        if (!curve_arg.empty()) doc["curve"] = curve_arg_to_json(curve_arg);
        if (!at_arg.empty()) doc["at"] = at_arg;
        if (sub == scan) {
            doc["mu"] = mu_arg;
            doc["n_base"] = nbase;
            doc["s_samples"] = s_samples;
        }
        if (sub == scan || sub == escape) {
            int lo, hi;
            if (!parse_range(nexp_arg, lo, hi)) {
                std::cerr << "bad --n-exp range: " << nexp_arg << "\n";
                return 2;
            }
            doc["n_exp"] = {lo, hi};
            doc["n_base"] = nbase;
        }
        if (sub == siegel) {
            doc["r1"] = r1_arg;
            doc["r2"] = r2_arg;
            doc["N"] = nn_arg;
            doc["s_samples"] = s_samples;
        }
        if (sub == pencil && max_dim > 0) doc["max_dim"] = max_dim;
        if (sub == vwa) {
            doc["delta"] = delta_arg;
            doc["p_bound"] = pbound;
            if (!phi_arg.empty()) doc["phi"] = parse_matrix_arg(phi_arg);
        }
        if (sub == rep) {
            int lo, hi;
            if (!parse_range(dims_arg, lo, hi)) {
                std::cerr << "bad --dims range: " << dims_arg << "\n";
                return 2;
            }
            doc["dims"] = {lo, hi};
            doc["trials"] = trials;
        }
        if (sub == cgood) {
            nlohmann::json eps = nlohmann::json::array();
            std::stringstream ss(eps_arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) eps.push_back(tok);
            doc["epsilons"] = eps;
            doc["grid_points"] = grid_points;
            auto comma = entry_arg.find(',');
            if (comma != std::string::npos)
                doc["entry"] = {std::stoi(entry_arg.substr(0, comma)), std::stoi(entry_arg.substr(comma + 1))};
        }
        if (!csv_arg.empty()) doc["output_csv"] = csv_arg;
        if (!json_arg.empty()) doc["output_json"] = json_arg;
        if (workers != 0) doc["workers"] = workers;
        return run_config(doc);
    } catch (const ddl::Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == "Internal" || e.kind() == "IoError" ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
