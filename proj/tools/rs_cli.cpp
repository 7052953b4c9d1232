#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rs/core.hpp"
#include "rs/dual_picture.hpp"
#include "rs/erasure.hpp"
#include "rs/errors.hpp"
#include "rs/examples_suite.hpp"
#include "rs/geometry.hpp"
#include "rs/json_io.hpp"
#include "rs/lr.hpp"
#include "rs/majorization.hpp"
#include "rs/potential.hpp"

namespace {

using rs::io::json;

constexpr int kExitOk = 0;
constexpr int kExitAssert = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw rs::ArgumentError("empty integer list: '" + s + "'");
    return out;
}

rs::RVec parse_double_list(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        vals.push_back(std::stod(item));
    }
    if (vals.empty()) throw rs::ArgumentError("empty number list: '" + s + "'");
    rs::RVec v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v(i) = vals[i];
    return v;
}

/// Flat key=value config file; '#' starts a comment line.
void apply_config_file(rs::Config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rs::StructuralError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw rs::StructuralError(path + ":" + std::to_string(lineno) +
                                      ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "certified")
            cfg.certified = (value == "true" || value == "1");
        else if (key == "cache_dir")
            cfg.cache_dir = value;
        else
            cfg.set_tolerance(key, std::stod(value));
    }
}

struct GlobalOpts {
    rs::Config cfg;
    bool json_out = false;
};

void emit(const GlobalOpts& g, const json& payload, const std::string& text) {
    if (g.json_out) {
        json out = payload;
        out["config"] = rs::io::config_to_json(g.cfg);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string format_vec(const rs::RVec& v, int prec = 9) {
    std::ostringstream os;
    os.precision(prec);
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
    os << ")";
    return os.str();
}

rs::Parameters params_from_flags(const std::string& kstr, int d) {
    return rs::Parameters::make(parse_int_list(kstr), d);
}

rs::Weights weights_from_flags(const std::string& vstr, const rs::Parameters& p) {
    return rs::Weights::make(parse_double_list(vstr), p);
}

int cmd_analyze(const GlobalOpts& g, const std::string& path) {
    const auto file = rs::io::load_system(path);
    const auto& sys = file.system;
    const auto lam = rs::spectrum(sys);
    const auto [a, b] = rs::bounds(sys, g.cfg);
    const auto weights = rs::projective_check(sys, g.cfg.projective_tol);
    const auto gram_rank = [&] {
        const rs::RVec s = rs::singular_values(rs::gram(sys));
        int r = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > g.cfg.rank_tol_rel * s(0)) ++r;
        return r;
    }();
    const auto comm = rs::potential::commutant(sys, g.cfg);
    const auto dual = rs::canonical_dual(sys, g.cfg);
    const auto dual_lam = rs::spectrum(dual);

    json j;
    j["params"] = {{"m", sys.params.m}, {"k", sys.params.k}, {"d", sys.params.d},
                   {"n", sys.params.n}};
    j["spectrum"] = rs::io::spectrum_to_json(lam.entries);
    j["bounds"] = {{"A", a}, {"B", b}};
    j["tight"] = (b - a) <= 1e-10 * std::max(1.0, b);
    if (weights) {
        json wv = json::array();
        for (Eigen::Index i = 0; i < weights->v.size(); ++i) wv.push_back(weights->v(i));
        j["projective"] = true;
        j["weights"] = std::move(wv);
        j["tau"] = weights->tau;
    } else {
        j["projective"] = false;
        j["weights"] = nullptr;
    }
    j["gram_rank"] = gram_rank;
    j["commutant_dimension"] = comm.dimension;
    j["irreducible"] = comm.dimension == 1;
    j["canonical_dual_spectrum"] = rs::io::spectrum_to_json(dual_lam.entries);

    std::ostringstream os;
    os.precision(9);
    os << "system: m=" << sys.params.m << " k=(";
    for (int i = 0; i < sys.params.m; ++i) os << (i ? "," : "") << sys.params.k[i];
    os << ") d=" << sys.params.d << " n=" << sys.params.n << "\n"
       << "spectrum lambda(S_V): " << format_vec(lam.entries) << "\n"
       << "bounds: A=" << a << " B=" << b << (j["tight"].get<bool>() ? " (tight)" : "")
       << "\n"
       << "projective: " << (weights ? "yes, weights " + format_vec(weights->v) : "no")
       << "\n"
       << "gram rank: " << gram_rank << "\n"
       << "commutant dimension: " << comm.dimension
       << (comm.dimension == 1 ? " (irreducible)" : " (reducible)") << "\n"
       << "canonical dual spectrum: " << format_vec(dual_lam.entries) << "\n";
    emit(g, j, os.str());
    return kExitOk;
}

int cmd_erase(const GlobalOpts& g, const std::string& path, const std::string& j_flag,
              bool scan) {
    const auto file = rs::io::load_system(path);
    const auto& sys = file.system;
    if (scan) {
        const auto reports = rs::erasure::scan(sys, rs::erasure::Exec::OpenMP, g.cfg);
        if (g.json_out) {
            json arr = json::array();
            for (const auto& r : reports) arr.push_back(rs::io::erasure_report_to_json(r));
            emit(g, json{{"scan", arr}}, "");
        } else {
            std::cout << rs::io::erasure_csv(reports);
        }
        return kExitOk;
    }
    auto j1 = parse_int_list(j_flag);
    std::vector<int> j0;
    for (int i : j1) j0.push_back(i - 1);  // CLI takes 1-based indices
    const auto rep = rs::erasure::erase(sys, j0, g.cfg);
    std::ostringstream os;
    os.precision(9);
    os << "J = {" << j_flag << "}: survives=" << (rep.survives ? "yes" : "no") << "\n";
    auto line = [&](const char* name, const std::optional<double>& v) {
        os << "  " << name << ": ";
        if (v)
            os << *v;
        else
            os << "n/a";
        os << "\n";
    };
    line("bound_ck", rep.bound_ck);
    line("bound_asgari", rep.bound_asgari);
    line("bound_new", rep.bound_new);
    line("exact_A", rep.exact_a);
    line("B_trunc", rep.b_trunc);
    emit(g, rs::io::erasure_report_to_json(rep), os.str());
    return kExitOk;
}

int cmd_dual_picture(const GlobalOpts& g, const std::string& path,
                     const std::string& mu_flag, bool construct,
                     const std::string& out_path) {
    const auto file = rs::io::load_system(path);
    const auto& sys = file.system;
    const auto mu = rs::SpectrumVector::make(parse_double_list(mu_flag));
    const auto [member, cert] = rs::dualpic::contains(sys, mu, g.cfg);

    json j = rs::io::certificate_to_json(cert);
    std::ostringstream os;
    os.precision(9);
    os << "mu " << format_vec(mu.entries) << (member ? " is" : " is NOT")
       << " in Lambda(D(V))\n";
    if (cert.violated)
        os << "  violated: " << cert.violated->family << " index " << cert.violated->index
           << " (lhs=" << cert.violated->lhs << ", rhs=" << cert.violated->rhs << ")\n";

    if (construct && member) {
        const auto w = rs::dualpic::construct_dual_with_spectrum(sys, mu, g.cfg);
        const rs::RVec got = rs::spectrum(w).entries;
        const double res = (got - mu.entries).cwiseAbs().maxCoeff();
        const double defect = rs::spectral_norm(
            rs::synthesis(w) * rs::analysis(sys) -
            rs::Mat::Identity(sys.params.d, sys.params.d));
        j["constructed"] = {{"spectrum", rs::io::spectrum_to_json(got)},
                            {"spectrum_residual", res},
                            {"duality_defect", defect}};
        os << "constructed dual: spectrum residual " << res << ", duality defect "
           << defect << "\n";
        if (!out_path.empty()) {
            rs::io::save_system(out_path, w);
            os << "wrote " << out_path << "\n";
        }
    }
    emit(g, j, os.str());
    return kExitOk;
}

int cmd_op_picture(const GlobalOpts& g, const std::string& kstr, int d,
                   const std::string& vstr, const std::string& mu_flag) {
    const auto params = params_from_flags(kstr, d);
    const auto w = weights_from_flags(vstr, params);
    const auto mu = rs::SpectrumVector::make(parse_double_list(mu_flag));
    const auto [member, cert] = rs::lr::op_picture_contains(params, w, mu, g.cfg);
    std::ostringstream os;
    os.precision(9);
    os << "mu " << format_vec(mu.entries) << (member ? " is" : " is NOT")
       << " in Lambda(O_v)\n";
    if (cert.violated) {
        os << "  violated: " << cert.violated->family;
        if (cert.violated->family == "klyachko") {
            os << " tuple [";
            for (std::size_t t = 0; t < cert.violated->tuple.size(); ++t) {
                os << (t ? " | " : "");
                for (std::size_t q = 0; q < cert.violated->tuple[t].size(); ++q)
                    os << (q ? "," : "") << cert.violated->tuple[t][q];
            }
            os << "]";
        }
        os << " (lhs=" << cert.violated->lhs << ", rhs=" << cert.violated->rhs << ")\n";
    }
    emit(g, rs::io::certificate_to_json(cert), os.str());
    return kExitOk;
}

int cmd_lambda(const GlobalOpts& g, const std::string& kstr, int d,
               const std::string& vstr, bool construct, int restarts) {
    const auto params = params_from_flags(kstr, d);
    const auto w = weights_from_flags(vstr, params);
    rs::potential::MinimizerCertificate cert;
    try {
        cert = rs::potential::optimal_spectrum(params, w, g.cfg);
    } catch (const rs::CapError& e) {
        std::cerr << "error: " << e.what()
                  << " (rerun with --no-certified for sampling mode)\n";
        return kExitCap;
    }

    json j = rs::io::minimizer_certificate_to_json(cert);
    std::ostringstream os;
    os.precision(10);
    os << "lambda_v = " << format_vec(cert.lambda_v.entries, 10) << "\n"
       << "p_v = " << cert.p_v << "\n"
       << "certified: " << (cert.certified ? "yes" : "no") << "\n"
       << "universal lower bound: " << rs::potential::universal_lower_bound(params, w)
       << "\n";

    bool construct_failed = false;
    if (construct) {
        const auto built = rs::potential::construct_with_spectrum(
            params, w, cert.lambda_v.entries, g.cfg.seed, restarts,
            rs::batch::Exec::OpenMP, g.cfg);
        j["construct"] = {{"success", built.success}, {"residual", built.residual}};
        if (built.success) {
            const auto rep = rs::potential::tight_decomposition(*built.sys, g.cfg);
            j["construct"]["system"] = rs::io::system_to_json(*built.sys);
            j["construct"]["decomposition"] = rs::io::decomposition_to_json(rep);
            os << "constructed minimizer with spectrum residual " << built.residual
               << "; " << rep.components.size() << " tight component(s)\n";
            for (const auto& c : rep.components)
                os << "  sigma=" << c.sigma << " dim=" << c.dim
                   << " tight_residual=" << c.tight_residual << "\n";
        } else {
            construct_failed = true;
            os << "minimizer construction FAILED (best spectrum residual "
               << built.residual << ")\n";
        }
    }
    emit(g, j, os.str());
    return construct_failed ? kExitAssert : kExitOk;
}

int cmd_conjecture(const GlobalOpts& g, const std::string& kstr, int d,
                   const std::string& vstr, int samples) {
    const auto params = params_from_flags(kstr, d);
    const auto w = weights_from_flags(vstr, params);
    const auto rep = rs::maj::conjecture_harness(params, w, samples, g.cfg.seed,
                                                 rs::batch::Exec::OpenMP, g.cfg);
    std::ostringstream os;
    os.precision(9);
    os << "conjecture harness: " << rep.passes << "/" << rep.samples
       << " samples majorize lambda_v, worst partial-sum margin " << rep.worst_margin
       << "\n";
    if (rep.counterexample) os << "counterexample found (see JSON output)\n";
    emit(g, rs::io::harness_report_to_json(rep), os.str());
    return kExitOk;
}

int cmd_examples(const GlobalOpts& g, const std::string& only) {
    std::vector<rs::examples::ScenarioResult> results;
    if (only.empty()) {
        results = rs::examples::run_all(g.cfg);
    } else {
        results.push_back(rs::examples::run_scenario(only, g.cfg));
    }
    bool all_pass = true;
    json arr = json::array();
    std::ostringstream os;
    for (const auto& r : results) {
        json js;
        js["name"] = r.name;
        js["passed"] = r.passed();
        json checks = json::array();
        for (const auto& c : r.checks) {
            checks.push_back(json{{"label", c.label}, {"pass", c.pass},
                                  {"detail", c.detail}});
            os << (c.pass ? "  [ok]   " : "  [FAIL] ") << c.label;
            if (!c.pass && !c.detail.empty()) os << "  -- " << c.detail;
            os << "\n";
        }
        js["checks"] = std::move(checks);
        arr.push_back(std::move(js));
        os << (r.passed() ? "[PASS] " : "[FAIL] ") << r.name << "\n";
        if (!r.passed()) all_pass = false;
    }
    emit(g, json{{"scenarios", arr}, {"all_passed", all_pass}}, os.str());
    return all_pass ? kExitOk : kExitAssert;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reconstruction-systems toolkit: operators, duals, erasures, "
                 "spectral pictures and joint-potential minimizers"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    std::string config_path;
    std::vector<std::string> tol_overrides;
    std::string cache_dir;
    bool no_certified = false;

    app.add_option("--seed", g.cfg.seed, "RNG seed (default 1)");
    app.add_flag("--json", g.json_out, "emit machine-readable JSON");
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--tol", tol_overrides, "tolerance override name=value")
        ->take_all();
    app.add_option("--cache-dir", cache_dir, "LR cache directory (or RS_CACHE_DIR)");
    app.add_flag("--no-certified", no_certified,
                 "allow sampling fallbacks when enumeration is capped");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "spectral report for a system file");
    std::string analyze_path;
    analyze->add_option("path", analyze_path, "system JSON file")->required();

    // erase
    auto* erase = app.add_subcommand("erase", "erasure-resilience analysis");
    std::string erase_path, erase_j;
    bool erase_scan = false;
    erase->add_option("path", erase_path, "system JSON file")->required();
    erase->add_option("--J", erase_j, "comma-separated 1-based block indices");
    erase->add_flag("--scan", erase_scan, "full subset scan (CSV)");

    // dual-picture
    auto* dual = app.add_subcommand("dual-picture",
                                    "membership in Lambda(D(V)) and dual synthesis");
    std::string dual_path, dual_mu, dual_out;
    bool dual_construct = false;
    dual->add_option("path", dual_path, "system JSON file")->required();
    dual->add_option("--mu", dual_mu, "candidate spectrum, non-increasing")->required();
    dual->add_flag("--construct", dual_construct, "synthesize a dual attaining mu");
    dual->add_option("--out", dual_out, "write the constructed dual here");

    // op-picture
    auto* op = app.add_subcommand("op-picture", "membership in Lambda(O_v)");
    std::string op_k, op_v, op_mu;
    int op_d = 0;
    op->add_option("-k", op_k, "block dimensions, comma-separated")->required();
    op->add_option("-d", op_d, "ambient dimension")->required();
    op->add_option("-v", op_v, "weights, comma-separated")->required();
    op->add_option("--mu", op_mu, "candidate spectrum")->required();

    // lambda
    auto* lambda = app.add_subcommand("lambda", "optimal spectrum lambda_v and p_v");
    std::string la_k, la_v;
    int la_d = 0, la_restarts = 100;
    bool la_construct = false;
    lambda->add_option("-k", la_k, "block dimensions")->required();
    lambda->add_option("-d", la_d, "ambient dimension")->required();
    lambda->add_option("-v", la_v, "weights")->required();
    lambda->add_flag("--construct", la_construct,
                     "attempt minimizer synthesis and tight decomposition");
    lambda->add_option("--restarts", la_restarts, "descent restarts for --construct");

    // conjecture
    auto* conj = app.add_subcommand("conjecture",
                                    "majorization-minimality sampling harness");
    std::string cj_k, cj_v;
    int cj_d = 0, cj_samples = 1000;
    conj->add_option("-k", cj_k, "block dimensions")->required();
    conj->add_option("-d", cj_d, "ambient dimension")->required();
    conj->add_option("-v", cj_v, "weights")->required();
    conj->add_option("--samples", cj_samples, "number of sampled systems");

    // examples
    auto* ex = app.add_subcommand("examples", "run the worked-example suite");
    std::string ex_only;
    ex->add_option("--only", ex_only, "run a single named scenario");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) apply_config_file(g.cfg, config_path);
        for (const auto& ov : tol_overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos)
                throw rs::ArgumentError("--tol expects name=value, got '" + ov + "'");
            g.cfg.set_tolerance(ov.substr(0, eq), std::stod(ov.substr(eq + 1)));
        }
        if (!cache_dir.empty()) g.cfg.cache_dir = cache_dir;
        if (no_certified) g.cfg.certified = false;

        if (*analyze) return cmd_analyze(g, analyze_path);
        if (*erase) {
            if (!erase_scan && erase_j.empty())
                throw rs::ArgumentError("erase: provide exactly one of --J or --scan");
            return cmd_erase(g, erase_path, erase_j, erase_scan);
        }
        if (*dual) return cmd_dual_picture(g, dual_path, dual_mu, dual_construct, dual_out);
        if (*op) return cmd_op_picture(g, op_k, op_d, op_v, op_mu);
        if (*lambda) return cmd_lambda(g, la_k, la_d, la_v, la_construct, la_restarts);
        if (*conj) return cmd_conjecture(g, cj_k, cj_d, cj_v, cj_samples);
        if (*ex) return cmd_examples(g, ex_only);
    } catch (const rs::CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const rs::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (residual " << e.residual << ")\n";
        return kExitAssert;
    } catch (const rs::SingularityError& e) {
        std::cerr << "error: " << e.what() << " (lambda_min " << e.lambda_min << ")\n";
        return kExitInput;
    } catch (const rs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
