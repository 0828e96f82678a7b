#pragma once

// JSON file formats (all vertex indices 0-based):
//
//   surface:  {"background": "euclidean"|"hyperbolic",
//              "faces": [[i,j,k],...], "inversive": [[i,j,value],...]}
//   radii:    {"radii": [r_0, ..., r_{N-1}]}
//   fixed:    {"fixed": [[vertex, radius], ...]}
//   target:   {"target": [[vertex, curvature], ...]}
//
// Malformed documents raise ipack::Error with ErrorCode::Parse (or the
// validation error of the object being built).

#include <filesystem>
#include <map>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "ipack/comparison.hpp"
#include "ipack/complex.hpp"
#include "ipack/geometry.hpp"
#include "ipack/variational.hpp"

namespace ipack::io {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& document);

WeightedSurface surface_from_json(const json& document);
json surface_to_json(const WeightedSurface& surface);

RadiusVector radii_from_json(const json& document);
json radii_to_json(const RadiusVector& r);

std::map<int, double> vertex_values_from_json(const json& document, const std::string& key);
json vertex_values_to_json(const std::map<int, double>& values, const std::string& key);

// Edge lengths keyed "i-j" (i < j), angles keyed "i-j-k@v", curvature as an
// array with null for unavailable entries.
json metric_report_to_json(const WeightedSurface& surface, const MetricReport& report);

json verdict_to_json(const ComparisonVerdict& verdict);

// Header "iteration,residual,step".
void write_convergence_csv(std::ostream& out, const std::vector<IterationRecord>& log);

}  // namespace ipack::io
