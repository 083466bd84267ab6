#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "homflow/ball_output.hpp"
#include "homflow/cell_problem.hpp"
#include "homflow/convergence.hpp"
#include "homflow/error.hpp"
#include "homflow/graph_io.hpp"
#include "homflow/measure_io.hpp"
#include "homflow/norm_analysis.hpp"
#include "homflow/transport.hpp"

namespace homflow::cli {
namespace {

Vec parse_vector(const std::string& text) {
  Vec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(x))
      throw Error(ErrorCode::InvalidArgument, "cannot parse vector '" + text + "'");
    out.push_back(x);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty vector");
  return out;
}

std::vector<int> parse_eps_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_eps(item));
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty eps list");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << content;
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
}

std::string shift_text(const Shift& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::MassMismatch: return kMassMismatch;
    case ErrorCode::InvalidGraph: return kValidationFailure;
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::InfeasibleSupply:
    case ErrorCode::InternalConsistency: return kSolverFailure;
    default: return kBadInput;
  }
}

struct Gallery {
  const char* file;
  PeriodicGraph graph;
};

std::vector<Gallery> gallery() {
  std::vector<Gallery> out;
  out.push_back({"cubic2-axis", make_cubic(2, Neighborhood::Axis)});
  out.push_back({"cubic2-linf", make_cubic(2, Neighborhood::Linf)});
  out.push_back({"triangular", make_triangular()});
  out.push_back({"honeycomb", make_honeycomb()});
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homogenized transport norms on periodic graphs", "homflow"};
  app.require_subcommand(1);

  std::string graph_file, j_text, svg_file, csv_file, eps_text, m0_file, m1_file, mode = "all";
  std::string p_text, q_text, mu_file, nu_file, out_dir = ".";
  int n = 128;
  bool json_out = false;

  auto* fhom = app.add_subcommand("fhom", "Evaluate f_hom(j) and print an optimal periodic flux");
  fhom->add_option("--graph", graph_file, "Graph file")->required();
  fhom->add_option("--j", j_text, "Direction, comma separated")->required()->allow_extra_args(false);
  fhom->add_flag("--json", json_out, "Emit a JSON record");

  auto* ball = app.add_subcommand("ball", "Sample the unit ball of a 2D graph");
  ball->add_option("--graph", graph_file, "Graph file")->required();
  ball->add_option("--n", n, "Number of directions (>= 8)");
  ball->add_option("--svg", svg_file, "SVG output path");
  ball->add_option("--csv", csv_file, "CSV output path");

  auto* w1 = app.add_subcommand("w1", "Solve the transport problem on the rescaled torus");
  w1->add_option("--graph", graph_file, "Graph file")->required();
  w1->add_option("--eps", eps_text, "eps as 1/N or a decimal")->required();
  w1->add_option("--m0", m0_file, "Source measure file")->required();
  w1->add_option("--m1", m1_file, "Target measure file")->required();
  w1->add_option("--mode", mode, "flow, coupling, dual or all")
      ->check(CLI::IsMember({"flow", "coupling", "dual", "all"}));
  w1->add_flag("--json", json_out, "Emit JSON records");

  auto* conv = app.add_subcommand("converge", "Tabulate discrete costs against their limit");
  conv->add_option("--graph", graph_file, "Graph file")->required();
  conv->add_option("--eps", eps_text, "Comma separated eps list, decreasing")->required();
  conv->add_option("--p", p_text, "Source point");
  conv->add_option("--q", q_text, "Target point");
  conv->add_option("--mu", mu_file, "Source point-set measure (measure mode)");
  conv->add_option("--nu", nu_file, "Target point-set measure (measure mode)");
  conv->add_option("--csv", csv_file, "Also write the table here");

  auto* validate = app.add_subcommand("validate", "Check a graph file");
  validate->add_option("--graph", graph_file, "Graph file")->required();

  auto* demo = app.add_subcommand("demo", "Regenerate the 2D gallery");
  demo->add_option("--out", out_dir, "Output directory");
  demo->add_option("--n", n, "Number of directions (>= 8)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (fhom->parsed()) {
      const CellProblem cell(load_graph(graph_file));
      const Vec j = parse_vector(j_text);
      const auto sol = cell.f_hom(j);
      const auto& g = cell.graph();
      if (json_out) {
        nlohmann::json rec;
        rec["graph"] = g.name();
        rec["direction"] = j;
        rec["value"] = sol.value;
        rec["divergence_residual"] = sol.divergence_residual;
        rec["eff_residual"] = sol.eff_residual;
        rec["duality_gap"] = sol.duality_gap;
        rec["flux"] = nlohmann::json::array();
        for (std::size_t i = 0; i < g.orbit_count(); ++i) {
          const auto& o = g.orbits()[i];
          rec["flux"].push_back({{"from", g.fiber()[o.from].id},
                                 {"to", g.fiber()[o.to].id},
                                 {"shift", o.shift},
                                 {"value", sol.flux[i]}});
        }
        out << rec.dump(2) << "\n";
      } else {
        out << format_number(sol.value) << "\n";
        for (std::size_t i = 0; i < g.orbit_count(); ++i) {
          const auto& o = g.orbits()[i];
          out << "  J(" << g.fiber()[o.from].id << " -> " << g.fiber()[o.to].id << " "
              << shift_text(o.shift) << ") = " << format_number(sol.flux[i]) << "\n";
        }
      }
      return kOk;
    }

    if (ball->parsed()) {
      const CellProblem cell(load_graph(graph_file));
      if (cell.graph().dim() != 2) throw Error(ErrorCode::InvalidArgument, "ball needs a 2D graph");
      const auto nb = sample_ball(cell, n);
      const auto report = detect_vertices(nb);
      if (!csv_file.empty()) write_file(csv_file, ball_csv(nb));
      if (!svg_file.empty()) write_file(svg_file, ball_svg(nb, &cell.graph(), cell.graph().name()));
      out << "vertices " << report.vertices.size() << "\n";
      out << "facets " << report.facets << "\n";
      for (const auto& v : report.vertices)
        out << "  " << format_number(v.x) << " " << format_number(v.y) << "\n";
      return kOk;
    }

    if (w1->parsed()) {
      const auto g = load_graph(graph_file);
      const RescaledGraph rg(g, parse_eps(eps_text));
      const auto m0 = realize(rg, load_measure(m0_file));
      const auto m1 = realize(rg, load_measure(m1_file));
      std::vector<TransportResult> results;
      if (mode == "flow" || mode == "all") results.push_back(ma_static(rg, m0, m1));
      if (mode == "coupling" || mode == "all") results.push_back(w1_coupling(rg, m0, m1));
      if (mode == "dual" || mode == "all") results.push_back(w1_dual(rg, m0, m1));
      double discrepancy = 0.0;
      for (const auto& a : results)
        for (const auto& b : results) discrepancy = std::max(discrepancy, std::abs(a.value - b.value));
      if (json_out) {
        nlohmann::json doc;
        doc["records"] = nlohmann::json::array();
        for (const auto& r : results)
          doc["records"].push_back({{"solver", to_string(r.solver)},
                                    {"value", r.value},
                                    {"residual", r.residual},
                                    {"duality_gap", r.duality_gap}});
        if (mode == "all") doc["discrepancy"] = discrepancy;
        out << doc.dump(2) << "\n";
      } else {
        for (const auto& r : results) out << to_string(r.solver) << " " << format_number(r.value) << "\n";
        if (mode == "all") out << "discrepancy " << format_number(discrepancy) << "\n";
      }
      return kOk;
    }

    if (conv->parsed()) {
      const CellProblem cell(load_graph(graph_file));
      const auto ns = parse_eps_list(eps_text);
      const bool dirac = !p_text.empty() || !q_text.empty();
      const bool measure = !mu_file.empty() || !nu_file.empty();
      if (dirac == measure || (dirac && (p_text.empty() || q_text.empty())) ||
          (measure && (mu_file.empty() || nu_file.empty())))
        throw Error(ErrorCode::InvalidArgument, "give either --p and --q, or --mu and --nu");
      for (int cells : ns)
        if (2 * cell.graph().range() >= cells)
          throw Error(ErrorCode::EpsTooLarge, "eps = 1/" + std::to_string(cells) + " violates eps R0 < 1/2");
      ConvergenceTable table;
      if (dirac) {
        table = converge_dirac(cell, parse_vector(p_text), parse_vector(q_text), ns);
      } else {
        const auto mu = load_measure(mu_file);
        const auto nu = load_measure(nu_file);
        if (!mu.vertices.empty() || !nu.vertices.empty())
          throw Error(ErrorCode::InvalidArgument, "measure mode takes point atoms only");
        table = converge_measures(cell, mu.points, nu.points, ns);
      }
      const std::string csv = table.to_csv();
      if (!csv_file.empty()) write_file(csv_file, csv);
      out << csv;
      return kOk;
    }

    if (validate->parsed()) {
      const auto g = load_graph(graph_file);
      const auto report = validate_graph(g);
      out << "graph " << g.name() << "\n";
      out << "dim " << g.dim() << "\n";
      out << "fiber " << g.fiber_size() << "\n";
      out << "orbits " << g.orbit_count() << "\n";
      out << "R0 " << report.range << "\n";
      out << "symmetric " << (report.symmetric ? "pass" : "fail") << "\n";
      out << "has_edges " << (report.has_edges ? "pass" : "fail") << "\n";
      out << "positive_weights " << (report.positive_weights ? "pass" : "fail") << "\n";
      out << "cover_connected " << (report.cover_connected ? "pass" : "fail") << "\n";
      out << "lattice_connected " << (report.lattice_connected ? "pass" : "fail") << "\n";
      for (const auto& f : report.failures) out << "failure: " << f << "\n";
      out << (report.ok() ? "valid" : "invalid") << "\n";
      return report.ok() ? kOk : kValidationFailure;
    }

    if (demo->parsed()) {
      std::filesystem::create_directories(out_dir);
      for (const auto& entry : gallery()) {
        const CellProblem cell(entry.graph);
        const auto nb = sample_ball(cell, n);
        const auto base = std::filesystem::path(out_dir) / entry.file;
        write_file(base.string() + ".csv", ball_csv(nb));
        write_file(base.string() + ".svg", ball_svg(nb, &cell.graph(), entry.file));
        out << entry.file << " vertices " << detect_vertices(nb).vertices.size() << "\n";
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace homflow::cli
