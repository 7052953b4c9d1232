#include "rs/json_io.hpp"

#include <fstream>
#include <sstream>

#include "rs/errors.hpp"

namespace rs::io {

namespace {

json complex_pair(const Cplx& z) { return json::array({z.real(), z.imag()}); }

Cplx parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw StructuralError("system json: " + where + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json system_to_json(const ReconstructionSystem& sys,
                    const std::optional<Weights>& weights) {
    const Parameters& p = sys.params;
    json j;
    j["m"] = p.m;
    j["d"] = p.d;
    j["k"] = p.k;
    if (weights) {
        std::vector<double> v(weights->v.data(), weights->v.data() + weights->v.size());
        j["weights"] = v;
    } else {
        j["weights"] = nullptr;
    }
    json blocks = json::array();
    for (const Mat& b : sys.blocks) {
        json entries = json::array();
        for (Eigen::Index r = 0; r < b.rows(); ++r)
            for (Eigen::Index c = 0; c < b.cols(); ++c)
                entries.push_back(complex_pair(b(r, c)));
        blocks.push_back(std::move(entries));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

SystemFile system_from_json(const json& j) {
    if (!j.is_object()) throw StructuralError("system json: top level must be an object");
    for (const char* field : {"m", "d", "k", "blocks"})
        if (!j.contains(field))
            throw StructuralError(std::string("system json: missing field '") + field + "'");
    if (!j["m"].is_number_integer() || !j["d"].is_number_integer())
        throw StructuralError("system json: 'm' and 'd' must be integers");
    const int m = j["m"].get<int>();
    const int d = j["d"].get<int>();
    if (!j["k"].is_array() || static_cast<int>(j["k"].size()) != m)
        throw StructuralError("system json: 'k' must be an array of length m");
    std::vector<int> k;
    for (const auto& ki : j["k"]) {
        if (!ki.is_number_integer())
            throw StructuralError("system json: 'k' entries must be integers");
        k.push_back(ki.get<int>());
    }
    Parameters params = Parameters::make(k, d);

    if (!j["blocks"].is_array() || static_cast<int>(j["blocks"].size()) != m)
        throw StructuralError("system json: 'blocks' must be an array of length m");
    std::vector<Mat> blocks;
    for (int i = 0; i < m; ++i) {
        const auto& jb = j["blocks"][i];
        const std::string where = "blocks[" + std::to_string(i) + "]";
        if (!jb.is_array() || static_cast<int>(jb.size()) != k[i] * d)
            throw StructuralError("system json: " + where + " must hold k_i*d = " +
                                  std::to_string(k[i] * d) + " row-major entries");
        Mat b(k[i], d);
        for (int r = 0; r < k[i]; ++r)
            for (int c = 0; c < d; ++c)
                b(r, c) = parse_complex(jb[r * d + c],
                                        where + "[" + std::to_string(r * d + c) + "]");
        blocks.push_back(std::move(b));
    }
    SystemFile out{ReconstructionSystem::make(std::move(params), std::move(blocks)),
                   std::nullopt};

    if (j.contains("weights") && !j["weights"].is_null()) {
        if (!j["weights"].is_array() ||
            static_cast<int>(j["weights"].size()) != m)
            throw StructuralError("system json: 'weights' must be null or length-m array");
        RVec v(m);
        for (int i = 0; i < m; ++i) {
            if (!j["weights"][i].is_number())
                throw StructuralError("system json: weights entries must be numbers");
            v(i) = j["weights"][i].get<double>();
        }
        out.weights = Weights::make(std::move(v), out.system.params);
    }
    return out;
}

SystemFile load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open system file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw StructuralError("parse error in " + path + ": " + e.what());
    }
    return system_from_json(j);
}

void save_system(const std::string& path, const ReconstructionSystem& sys,
                 const std::optional<Weights>& weights) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write system file: " + path);
    out << system_to_json(sys, weights).dump(2) << "\n";
}

json certificate_to_json(const Certificate& cert) {
    json j;
    j["member"] = cert.member;
    if (cert.violated) {
        json v;
        v["family"] = cert.violated->family;
        v["index"] = cert.violated->index;
        v["lhs"] = cert.violated->lhs;
        v["rhs"] = cert.violated->rhs;
        if (!cert.violated->tuple.empty()) v["tuple"] = cert.violated->tuple;
        j["violated"] = std::move(v);
    } else {
        j["violated"] = nullptr;
    }
    return j;
}

json config_to_json(const Config& cfg) {
    json j;
    j["seed"] = cfg.seed;
    j["certified"] = cfg.certified;
    j["rng"] = Config::rng_name;
    j["cache_dir"] = cfg.cache_dir;
    for (const auto& [name, value] : cfg.tolerances()) j["tolerances"][name] = value;
    return j;
}

json spectrum_to_json(const RVec& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

namespace {

std::string opt_cell(const std::optional<double>& v) {
    if (!v) return "";
    std::ostringstream os;
    os.precision(17);
    os << *v;
    return os.str();
}

}  // namespace

std::string erasure_csv(const std::vector<erasure::ErasureReport>& reports) {
    std::ostringstream os;
    os << "J,survives,bound_ck,bound_asgari,bound_new,exact_A,B_trunc\n";
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.j.size(); ++i) {
            if (i) os << '+';
            os << (r.j[i] + 1);
        }
        os << ',' << (r.survives ? "true" : "false") << ',' << opt_cell(r.bound_ck)
           << ',' << opt_cell(r.bound_asgari) << ',' << opt_cell(r.bound_new) << ','
           << opt_cell(r.exact_a) << ',' << opt_cell(r.b_trunc) << '\n';
    }
    return os.str();
}

json erasure_report_to_json(const erasure::ErasureReport& rep) {
    json j;
    std::vector<int> j1;
    for (int i : rep.j) j1.push_back(i + 1);
    j["J"] = j1;
    j["survives"] = rep.survives;
    auto put = [&](const char* name, const std::optional<double>& v) {
        if (v)
            j[name] = *v;
        else
            j[name] = nullptr;
    };
    put("bound_ck", rep.bound_ck);
    put("bound_asgari", rep.bound_asgari);
    put("bound_new", rep.bound_new);
    put("exact_A", rep.exact_a);
    put("B_trunc", rep.b_trunc);
    return j;
}

json minimizer_certificate_to_json(const potential::MinimizerCertificate& cert) {
    json j;
    j["lambda_v"] = spectrum_to_json(cert.lambda_v.entries);
    j["p_v"] = cert.p_v;
    j["certified"] = cert.certified;
    json sig = json::array();
    for (const auto& [val, mult] : cert.sigma)
        sig.push_back(json{{"sigma", val}, {"multiplicity", mult}});
    j["sigma"] = std::move(sig);
    return j;
}

json decomposition_to_json(const potential::DecompositionReport& rep) {
    json j;
    j["minimizer_structure"] = rep.minimizer_structure;
    j["worst_commute_residual"] = rep.worst_commute_residual;
    j["worst_tight_residual"] = rep.worst_tight_residual;
    json comps = json::array();
    for (const auto& c : rep.components) {
        json jc;
        jc["sigma"] = c.sigma;
        jc["dim"] = c.dim;
        jc["k"] = c.k;
        jc["kept_blocks"] = c.kept_blocks;
        jc["tight_residual"] = c.tight_residual;
        jc["commute_residual"] = c.commute_residual;
        jc["irreducible_dims"] = c.irreducible_dims;
        if (c.system) jc["system"] = system_to_json(*c.system);
        comps.push_back(std::move(jc));
    }
    j["components"] = std::move(comps);
    return j;
}

json harness_report_to_json(const maj::HarnessReport& rep) {
    json j;
    j["params"] = {{"m", rep.params.m}, {"k", rep.params.k}, {"d", rep.params.d}};
    json wv = json::array();
    for (Eigen::Index i = 0; i < rep.weights.size(); ++i) wv.push_back(rep.weights(i));
    j["weights"] = std::move(wv);
    j["lambda_v"] = spectrum_to_json(rep.lambda_v);
    j["samples"] = rep.samples;
    j["passes"] = rep.passes;
    j["worst_margin"] = rep.worst_margin;
    if (rep.counterexample)
        j["counterexample"] = system_to_json(*rep.counterexample);
    else
        j["counterexample"] = nullptr;
    return j;
}

}  // namespace rs::io
