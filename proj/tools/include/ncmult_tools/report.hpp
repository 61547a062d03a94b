#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ncmult/audits.hpp"
#include "ncmult/convexbody.hpp"
#include "ncmult/fourier.hpp"
#include "ncmult/fusion.hpp"
#include "ncmult/lengths.hpp"

namespace ncmult::tools {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr const char* kToolVersion = "1.0.0";

std::string report_schema_version();

// Serializes with 17 significant digits for every floating value and two
// space indentation; non-finite values become the strings "inf", "-inf", "nan".
std::string dump_json(const Json& j);

Json to_json(const AuditReport& r);
Json to_json(const Rational& q);
Json to_json(const Subsequence& s);
Json to_json(const MaximalExperiment& e);
Json to_json(const SequenceNormReport& r);
Json to_json(const SymbolEstimate& e);
Json to_json(const SweepTable& t);
Json to_json(const FusionChainReport& r, const FusionRing& ring, bool include_rows);

// Envelope shared by every report.
Json make_report(const std::string& subcommand, const Json& config, const Json& domains, const Json& results,
                 bool pass, std::optional<double> wall_time);

}  // namespace ncmult::tools
