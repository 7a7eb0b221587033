#pragma once

#include <map>
#include <string>

#include "cornermix/decomposition.hpp"
#include "cornermix/geometry.hpp"
#include "cornermix/mixing.hpp"
#include "cornermix/spectral.hpp"

#include <json.hpp>

namespace cornermix {

const char* tool_version();

// Metadata header lines shared by all CSV outputs: version, config, seed,
// timestamp.  The timestamp line is the only nondeterministic byte; pass a
// fixed string to pin it.
std::string csv_header(const std::string& config, uint64_t seed,
                       const std::string& timestamp = "");

std::string curve_csv(const DistanceCurve& c, const std::string& config,
                      const std::string& timestamp = "");
nlohmann::json curve_json(const DistanceCurve& c, const std::string& config,
                          const std::string& timestamp = "");

// partition,d,chi3,r,bound,case — exact rationals rendered as p/q.
std::string characters_csv(int m, const std::string& config,
                           const std::string& timestamp = "");

nlohmann::json comparison_json(const ComparisonReport& r, const std::string& config,
                               const std::string& timestamp = "");

nlohmann::json geometry_json(int n, const std::string& config,
                             const std::string& timestamp = "");

std::string coupling_csv(const CouplingResult& r, const std::string& config,
                         const std::string& timestamp = "");

// The deterministic artifact set produced by `selftest`: file name -> bytes.
// Identical seeds give identical bytes except for the timestamp fields.
std::map<std::string, std::string> selftest_bundle(uint64_t seed);

// Drops the timestamp line/field so byte comparisons see only the payload.
std::string strip_timestamp(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cornermix
