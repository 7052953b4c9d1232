#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rs/certificate.hpp"
#include "rs/config.hpp"
#include "rs/erasure.hpp"
#include "rs/majorization.hpp"
#include "rs/potential.hpp"
#include "rs/types.hpp"

namespace rs::io {

using nlohmann::json;

/// System file payload: {"m", "d", "k", "weights" (nullable), "blocks"} with
/// each block a row-major list of [re, im] pairs.
struct SystemFile {
    ReconstructionSystem system;
    std::optional<Weights> weights;
};

json system_to_json(const ReconstructionSystem& sys,
                    const std::optional<Weights>& weights = std::nullopt);

/// Parses a system payload; errors carry the offending field path.
SystemFile system_from_json(const json& j);

SystemFile load_system(const std::string& path);
void save_system(const std::string& path, const ReconstructionSystem& sys,
                 const std::optional<Weights>& weights = std::nullopt);

json certificate_to_json(const Certificate& cert);

json config_to_json(const Config& cfg);

/// CSV table for erasure reports: header plus one row per J (1-based in the
/// J column, separated by '+'). Missing bounds serialize as empty cells.
std::string erasure_csv(const std::vector<erasure::ErasureReport>& reports);
json erasure_report_to_json(const erasure::ErasureReport& rep);

json minimizer_certificate_to_json(const potential::MinimizerCertificate& cert);
json decomposition_to_json(const potential::DecompositionReport& rep);
json harness_report_to_json(const maj::HarnessReport& rep);

json spectrum_to_json(const RVec& v);

}  // namespace rs::io
