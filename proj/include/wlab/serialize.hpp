#pragma once

#include <string>

#include "json.hpp"
#include "wlab/analysis.hpp"
#include "wlab/optical.hpp"
#include "wlab/protocols.hpp"
#include "wlab/qcore.hpp"

namespace wlab::serialize {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// State format shared with the CLI: ordered label list plus [re, im] pairs.
Json state_to_json(const PureState& state);
PureState state_from_json(const Json& j);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json recovery_map_to_json(const protocols::RecoveryMap& map);
protocols::RecoveryMap recovery_map_from_json(const Json& j);

Json protocol_report_to_json(const protocols::ProtocolReport& report,
                             bool include_states = false);
Json search_report_to_json(const protocols::RecoverySearchReport& report);
Json suitability_to_json(const protocols::SuitabilityReport& report);
Json comparison_to_json(const analysis::ComparisonReport& report);
std::string comparison_to_csv(const analysis::ComparisonReport& report);
Json dense_report_to_json(const protocols::DenseCodeReport& report);
Json verdict_to_json(const analysis::ConvertVerdict& verdict);
Json optical_report_to_json(const optical::OpticalReport& report);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace wlab::serialize
