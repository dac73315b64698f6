#pragma once

#include <string>

#include <json.hpp>

#include "oulevy/cameron_martin.hpp"
#include "oulevy/girsanov.hpp"
#include "oulevy/levy.hpp"
#include "oulevy/rigidity.hpp"
#include "oulevy/simulate.hpp"

namespace oulevy {

using nlohmann::json;

inline constexpr const char* kReportSchema = "ou-levy-report/1";

// +-inf encoded as {"finite": false}; JSON has no infinity literal.
json json_real(double v);

json to_json(const SeriesVerdict& v);
json to_json(const NovikovReport& r);
json to_json(const CMReport& r);
json to_json(const MeanSe& m);
json to_json(const DensityReport& r);
json to_json(const RigidityReplica& r);
json to_json(const RigidityReport& r);
json to_json(const ExampleOutcome& o);
json to_json(const MarkedPointSet& z);
json to_json(const SamplePath& p);

std::string path_to_csv(const SamplePath& p);

// Temp-file-then-rename write; parent directories created as needed.
void atomic_write_file(const std::string& path, const std::string& content);

std::string fnv1a_hex(const std::string& data);

}  // namespace oulevy
