#include "ipack/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ipack/comparison.hpp"
#include "ipack/error.hpp"
#include "ipack/geometry.hpp"
#include "ipack/io.hpp"
#include "ipack/variational.hpp"

namespace ipack::cli {

namespace {

// Tables print 5 decimals; --json gives full precision.
std::string fixed5(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// Vertex labels on the command line and in tables are 1-based.
std::string label(int v) { return std::to_string(v + 1); }

std::string face_label(const Face& f) {
  return "{" + label(f[0]) + "," + label(f[1]) + "," + label(f[2]) + "}";
}

std::string set_label(const std::vector<int>& members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + label(members[i]);
  return out + "}";
}

// "4" or "1,2,3" (1-based) -> 0-based subset.
VertexSubset parse_vertex_list(const std::string& text, int vertex_count) {
  std::vector<int> members;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) throw Error(ErrorCode::Parse, "empty vertex label in \"" + text + "\"");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad vertex label \"" + item + "\"");
    }
    if (used != item.size() || v < 1 || v > vertex_count) {
      throw Error(ErrorCode::Parse, "vertex label \"" + item + "\" outside 1.." + std::to_string(vertex_count));
    }
    members.push_back(v - 1);
  }
  return VertexSubset(std::move(members), vertex_count);
}

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad eps value \"" + item + "\"");
    }
    if (used != item.size() || !(x > 0) || !std::isfinite(x)) {
      throw Error(ErrorCode::Parse, "eps values must be positive numbers");
    }
    out.push_back(x);
  }
  if (out.empty()) throw Error(ErrorCode::Parse, "empty eps list");
  return out;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPackingMetric:
    case ErrorCode::DegenerateTriangle:
    case ErrorCode::InfeasibleTarget:
    case ErrorCode::MaxIterations:
    case ErrorCode::NotConcaveRegion:
    case ErrorCode::InversiveOutOfRange:
      return kExitFailure;
    default:
      return kExitMalformed;
  }
}

void print_counterexample(std::ostream& out, const ComparisonInstance& inst, bool doubled) {
  const WeightedSurface& s = inst.surface;
  const Triangulation& t = s.triangulation();
  const MetricReport rep_r = metric_report(s, inst.r);
  const MetricReport rep_big = metric_report(s, inst.big_r);
  const ComparisonVerdict verdict = check_comparison(s, inst.partition, inst.r, inst.big_r);

  out << (doubled ? "Doubled counterexample (closed surface" : "Counterexample (disk")
      << ", Euclidean background, vertices 1.." << t.vertex_count() << ")\n";
  out << "Faces:";
  for (const Face& f : t.faces()) out << " " << face_label(f);
  out << "\n\n";

  out << pad("Edge", 10) << pad("I(e)", 10) << pad("l_r(e)", 14) << "l_R(e)\n";
  for (int e = 0; e < t.edge_count(); ++e) {
    const Edge& edge = t.edge(e);
    out << pad("{" + label(edge.a) + "," + label(edge.b) + "}", 10) << pad(fixed5(s.inversive(e)), 10)
        << pad(fixed5(rep_r.edge_lengths[e]), 14) << fixed5(rep_big.edge_lengths[e]) << "\n";
  }
  out << "\n";
  out << pad("Vertex", 10) << pad("r", 14) << pad("R", 14) << pad("K_r", 12) << "K_R\n";
  for (int v = 0; v < t.vertex_count(); ++v) {
    out << pad(label(v), 10) << pad(fixed5(inst.r[v]), 14) << pad(fixed5(inst.big_r[v]), 14)
        << pad(fixed5(*rep_r.curvature[v]), 12) << fixed5(*rep_big.curvature[v]) << "\n";
  }
  out << "\n";
  out << "A = " << set_label(inst.partition.a().members()) << ", B = "
      << set_label(inst.partition.b().members()) << "\n";
  for (int v : inst.partition.a().members()) {
    out << "K_r(" << label(v) << ") = " << fixed5(*rep_r.curvature[v]) << ", K_R(" << label(v)
        << ") = " << fixed5(*rep_big.curvature[v]) << "\n";
  }
  out << "Hypothesis R|_B >= r|_B: " << (verdict.hyp_radii_ok ? "holds" : "fails") << "\n";
  out << "Hypothesis K_R|_A >= K_r|_A: " << (verdict.hyp_curv_ok ? "holds" : "fails") << "\n";
  if (verdict.conclusion_ok) {
    out << "Conclusion R >= r: holds\n";
  } else {
    for (const Violation& v : verdict.violations) {
      out << "Conclusion R >= r: VIOLATED at vertex " << label(v.vertex) << " (r = " << fixed5(v.r)
          << " > R = " << fixed5(v.big_r) << ")\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inversive distance circle packings: metrics, curvature, solver, Schwarz-Pick comparison",
               "ipack"};
  app.require_subcommand(1, 1);

  std::string surface_path, radii_path, fix_path, target_path, r_path, big_r_path, out_path, log_path,
      out_dir, vertex_list, eps_text = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6";
  bool as_json = false, doubled = false;
  SolverOptions solver;

  auto* validate = app.add_subcommand("validate", "Per-face triangle inequality check");
  validate->add_option("-s,--surface", surface_path, "Surface file")->required();
  validate->add_option("-r,--radii", radii_path, "Radius file")->required();
  validate->add_flag("--json", as_json, "Print the full metric report as JSON");

  auto* curvature = app.add_subcommand("curvature", "Discrete curvature table");
  curvature->add_option("-s,--surface", surface_path, "Surface file")->required();
  curvature->add_option("-r,--radii", radii_path, "Radius file")->required();
  curvature->add_flag("--json", as_json, "Print the full metric report as JSON");

  auto* solve = app.add_subcommand("solve", "Prescribed curvature solver");
  solve->add_option("-s,--surface", surface_path, "Surface file")->required();
  solve->add_option("--fix", fix_path, "Fixed radii file {\"fixed\": [[v, r], ...]}")->required();
  solve->add_option("--target", target_path, "Target file {\"target\": [[v, K], ...]}")->required();
  solve->add_option("--tol", solver.tolerance, "Residual tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", solver.max_iterations, "Iteration limit")->check(CLI::NonNegativeNumber);
  solve->add_option("--damping", solver.damping, "Initial Newton step fraction")->check(CLI::Range(1e-6, 1.0));
  solve->add_option("-o,--out", out_path, "Write the radius file here (default: stdout)");
  solve->add_option("--log", log_path, "Write the convergence CSV here (default: stdout)");

  auto* compare = app.add_subcommand("compare", "Schwarz-Pick comparison verdict");
  compare->add_option("-s,--surface", surface_path, "Surface file")->required();
  compare->add_option("--r", r_path, "Radius file for r")->required();
  compare->add_option("--R", big_r_path, "Radius file for R")->required();
  compare->add_option("--A", vertex_list, "Comma-separated 1-based vertices of A")->required();

  auto* counter = app.add_subcommand("counterexample", "Reproduce the I >= 1 counterexample");
  counter->add_flag("--doubled", doubled, "Use the doubled (closed) surface");
  counter->add_option("--out-dir", out_dir, "Write surface.json, r.json, R.json here");

  auto* degenerate = app.add_subcommand("degenerate", "Shrink radii on J and compare with the limit");
  degenerate->add_option("-s,--surface", surface_path, "Surface file")->required();
  degenerate->add_option("-r,--radii", radii_path, "Radius file")->required();
  degenerate->add_option("--J", vertex_list, "Comma-separated 1-based vertices of J")->required();
  degenerate->add_option("--eps", eps_text, "Comma-separated radii assigned to J");
  degenerate->add_flag("--json", as_json, "Print the scan as JSON");

  auto* dbl = app.add_subcommand("double", "Double a surface with boundary");
  dbl->add_option("-s,--surface", surface_path, "Surface file")->required();
  dbl->add_option("-o,--out", out_path, "Write the doubled surface here (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    if (validate->parsed() || curvature->parsed()) {
      const WeightedSurface s = io::surface_from_json(io::read_json_file(surface_path));
      const RadiusVector r = io::radii_from_json(io::read_json_file(radii_path));
      const MetricReport report = metric_report(s, r);
      const Triangulation& t = s.triangulation();
      if (as_json) {
        out << io::metric_report_to_json(s, report).dump(2) << "\n";
      } else if (validate->parsed()) {
        out << pad("Face", 12) << pad("l_i", 14) << pad("l_j", 14) << pad("l_k", 14) << "valid\n";
        for (int f = 0; f < t.face_count(); ++f) {
          out << pad(face_label(t.face(f)), 12);
          for (int slot = 0; slot < 3; ++slot) out << pad(fixed5(report.edge_lengths[t.opposite_edge(f, slot)]), 14);
          out << (report.face_valid[f] ? "yes" : "no") << "\n";
        }
        out << "is_packing_metric: " << (report.is_packing_metric ? "true" : "false") << "\n";
      } else {
        out << pad("Vertex", 10) << "Discrete Curvature\n";
        for (int v = 0; v < t.vertex_count(); ++v) {
          out << pad(label(v), 10) << (report.curvature[v] ? fixed5(*report.curvature[v]) : "n/a") << "\n";
        }
      }
      if (!report.is_packing_metric) {
        err << "not a circle packing metric: invalid faces";
        for (int f : report.invalid_faces()) err << " " << face_label(t.face(f));
        err << "\n";
        return kExitFailure;
      }
      return kExitOk;
    }

    if (solve->parsed()) {
      const WeightedSurface s = io::surface_from_json(io::read_json_file(surface_path));
      const auto fixed = io::vertex_values_from_json(io::read_json_file(fix_path), "fixed");
      const auto target = io::vertex_values_from_json(io::read_json_file(target_path), "target");
      const SolveOutcome outcome = solve_prescribed_curvature(s, fixed, target, solver);
      if (out_path.empty()) {
        out << io::radii_to_json(outcome.radii).dump(2) << "\n";
      } else {
        io::write_json_file(out_path, io::radii_to_json(outcome.radii));
      }
      if (log_path.empty()) {
        io::write_convergence_csv(out, outcome.log);
      } else {
        std::ofstream csv(log_path);
        if (!csv) throw Error(ErrorCode::Parse, "cannot write " + log_path);
        io::write_convergence_csv(csv, outcome.log);
      }
      err << "converged in " << outcome.iterations << " iterations, residual " << sci(outcome.residual) << "\n";
      return kExitOk;
    }

    if (compare->parsed()) {
      const WeightedSurface s = io::surface_from_json(io::read_json_file(surface_path));
      const RadiusVector r = io::radii_from_json(io::read_json_file(r_path));
      const RadiusVector big_r = io::radii_from_json(io::read_json_file(big_r_path));
      const PartitionAB partition = PartitionAB::from_a(parse_vertex_list(vertex_list, s.vertex_count()), s.vertex_count());
      const ComparisonVerdict verdict = check_comparison(s, partition, r, big_r);
      out << io::verdict_to_json(verdict).dump(2) << "\n";
      return verdict.conclusion_ok ? kExitOk : kExitFailure;
    }

    if (counter->parsed()) {
      const ComparisonInstance inst = doubled ? doubled_counterexample() : build_counterexample();
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        io::write_json_file(dir / "surface.json", io::surface_to_json(inst.surface));
        io::write_json_file(dir / "r.json", io::radii_to_json(inst.r));
        io::write_json_file(dir / "R.json", io::radii_to_json(inst.big_r));
      }
      print_counterexample(out, inst, doubled);
      return kExitOk;
    }

    if (degenerate->parsed()) {
      const WeightedSurface s = io::surface_from_json(io::read_json_file(surface_path));
      const RadiusVector r = io::radii_from_json(io::read_json_file(radii_path));
      if (static_cast<int>(r.size()) != s.vertex_count()) {
        throw Error(ErrorCode::DimensionMismatch, "radius file does not match the surface");
      }
      const VertexSubset j = parse_vertex_list(vertex_list, s.vertex_count());
      const double limit = degeneration_limit(s, j);
      io::json rows = io::json::array();
      if (!as_json) out << pad("eps", 12) << pad("sum_J K", 14) << pad("limit", 14) << "gap\n";
      for (double eps : parse_eps_list(eps_text)) {
        std::vector<double> values(r.values().begin(), r.values().end());
        for (int v : j.members()) values[v] = eps;
        const MetricReport report = metric_report(s, RadiusVector(values));
        if (!report.is_packing_metric) {
          throw Error(ErrorCode::NotAPackingMetric, "metric invalid at eps = " + sci(eps));
        }
        double sum = 0;
        for (int v : j.members()) sum += *report.curvature[v];
        if (as_json) {
          rows.push_back({{"eps", eps}, {"sum", sum}, {"limit", limit}, {"gap", sum - limit}});
        } else {
          out << pad(sci(eps), 12) << pad(fixed5(sum), 14) << pad(fixed5(limit), 14) << sci(sum - limit) << "\n";
        }
      }
      if (as_json) out << rows.dump(2) << "\n";
      return kExitOk;
    }

    if (dbl->parsed()) {
      const WeightedSurface s = io::surface_from_json(io::read_json_file(surface_path));
      const DoubledSurface d = double_surface(s);
      if (out_path.empty()) {
        out << io::surface_to_json(d.surface).dump(2) << "\n";
      } else {
        io::write_json_file(out_path, io::surface_to_json(d.surface));
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitMalformed;
}

}  // namespace ipack::cli
