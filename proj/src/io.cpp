#include "ipack/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>

#include "ipack/error.hpp"

namespace ipack::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& member(const json& document, const char* key) {
  if (!document.is_object()) parse_error("expected a JSON object");
  auto it = document.find(key);
  if (it == document.end()) parse_error(std::string("missing key \"") + key + "\"");
  return *it;
}

int vertex_index(const json& value) {
  if (!value.is_number_integer()) parse_error("vertex index must be an integer");
  const auto index = value.get<long long>();
  if (index < 0 || index > std::numeric_limits<int>::max()) parse_error("vertex index out of range");
  return static_cast<int>(index);
}

double number(const json& value) {
  if (!value.is_number()) parse_error("expected a number");
  return value.get<double>();
}

std::string edge_key(int i, int j) { return std::to_string(i) + "-" + std::to_string(j); }

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& document) {
  std::ofstream out(path);
  if (!out) parse_error("cannot write " + path.string());
  out << std::setw(2) << document << "\n";
}

WeightedSurface surface_from_json(const json& document) {
  const json& bg = member(document, "background");
  if (!bg.is_string()) parse_error("\"background\" must be a string");
  Background background;
  if (bg == "euclidean") {
    background = Background::Euclidean;
  } else if (bg == "hyperbolic") {
    background = Background::Hyperbolic;
  } else {
    parse_error("unknown background \"" + bg.get<std::string>() + "\"");
  }

  const json& faces_json = member(document, "faces");
  if (!faces_json.is_array()) parse_error("\"faces\" must be an array");
  std::vector<Face> faces;
  for (const json& f : faces_json) {
    if (!f.is_array() || f.size() != 3) parse_error("each face must be a triple");
    faces.push_back({vertex_index(f[0]), vertex_index(f[1]), vertex_index(f[2])});
  }
  Triangulation t = Triangulation::build(faces);

  const json& inv_json = member(document, "inversive");
  if (!inv_json.is_array()) parse_error("\"inversive\" must be an array");
  std::map<Edge, double> inversive;
  for (const json& entry : inv_json) {
    if (!entry.is_array() || entry.size() != 3) parse_error("each inversive entry must be [i, j, value]");
    const Edge e = make_edge(vertex_index(entry[0]), vertex_index(entry[1]));
    if (!inversive.emplace(e, number(entry[2])).second) {
      parse_error("duplicate inversive entry for edge " + edge_key(e.a, e.b));
    }
  }
  return WeightedSurface::from_edge_map(std::move(t), background, inversive);
}

json surface_to_json(const WeightedSurface& surface) {
  const Triangulation& t = surface.triangulation();
  json faces = json::array();
  for (const Face& f : t.faces()) faces.push_back({f[0], f[1], f[2]});
  json inversive = json::array();
  for (int e = 0; e < t.edge_count(); ++e) {
    inversive.push_back({t.edge(e).a, t.edge(e).b, surface.inversive(e)});
  }
  return json{{"background", surface.background() == Background::Euclidean ? "euclidean" : "hyperbolic"},
              {"faces", faces},
              {"inversive", inversive}};
}

RadiusVector radii_from_json(const json& document) {
  const json& values = member(document, "radii");
  if (!values.is_array()) parse_error("\"radii\" must be an array");
  std::vector<double> radii;
  for (const json& v : values) radii.push_back(number(v));
  return RadiusVector(std::move(radii));
}

json radii_to_json(const RadiusVector& r) {
  return json{{"radii", std::vector<double>(r.values().begin(), r.values().end())}};
}

std::map<int, double> vertex_values_from_json(const json& document, const std::string& key) {
  const json& values = member(document, key.c_str());
  if (!values.is_array()) parse_error("\"" + key + "\" must be an array");
  std::map<int, double> out;
  for (const json& entry : values) {
    if (!entry.is_array() || entry.size() != 2) parse_error("each entry must be [vertex, value]");
    if (!out.emplace(vertex_index(entry[0]), number(entry[1])).second) {
      parse_error("duplicate vertex in \"" + key + "\"");
    }
  }
  return out;
}

json vertex_values_to_json(const std::map<int, double>& values, const std::string& key) {
  json entries = json::array();
  for (const auto& [v, x] : values) entries.push_back({v, x});
  return json{{key, entries}};
}

json metric_report_to_json(const WeightedSurface& surface, const MetricReport& report) {
  const Triangulation& t = surface.triangulation();
  json lengths = json::object();
  for (int e = 0; e < t.edge_count(); ++e) lengths[edge_key(t.edge(e).a, t.edge(e).b)] = report.edge_lengths[e];
  json angles = json::object();
  json valid = json::array();
  for (int f = 0; f < t.face_count(); ++f) {
    const Face& face = t.face(f);
    valid.push_back(report.face_valid[f] != 0);
    if (!report.face_angles[f]) continue;
    const std::string prefix = std::to_string(face[0]) + "-" + std::to_string(face[1]) + "-" +
                               std::to_string(face[2]) + "@";
    for (int s = 0; s < 3; ++s) angles[prefix + std::to_string(face[s])] = (*report.face_angles[f])[s];
  }
  json curvature = json::array();
  for (const auto& k : report.curvature) {
    if (k) {
      curvature.push_back(*k);
    } else {
      curvature.push_back(nullptr);
    }
  }
  return json{{"edge_lengths", lengths},
              {"face_angles", angles},
              {"face_valid", valid},
              {"curvature", curvature},
              {"is_packing_metric", report.is_packing_metric}};
}

json verdict_to_json(const ComparisonVerdict& verdict) {
  json violations = json::array();
  for (const Violation& v : verdict.violations) {
    violations.push_back({{"vertex", v.vertex}, {"r", v.r}, {"R", v.big_r}});
  }
  return json{{"hyp_radii", verdict.hyp_radii_ok},
              {"hyp_curv", verdict.hyp_curv_ok},
              {"conclusion", verdict.conclusion_ok},
              {"violations", violations}};
}

void write_convergence_csv(std::ostream& out, const std::vector<IterationRecord>& log) {
  out << "iteration,residual,step\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const IterationRecord& rec : log) out << rec.iteration << "," << rec.residual << "," << rec.step << "\n";
  out.flags(flags);
  out.precision(precision);
}

}  // namespace ipack::io
