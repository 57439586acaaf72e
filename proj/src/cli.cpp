#include "icsym/cli.hpp"

#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "icsym/cascade.hpp"
#include "icsym/exact.hpp"
#include "icsym/report.hpp"
#include "icsym/step_matrix.hpp"
#include "icsym/verify.hpp"

namespace icsym::cli {

namespace {

struct RunConfig {
  std::string graph_path;
  std::string generator;
  std::size_t n = 0;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double confidence = 0.99;
  double tolerance = 1e-9;
  std::string format;
  std::size_t exact_cap = kDefaultExactCap;
};

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument(std::string("generator spec: malformed ") + what + " '" + text +
                                "'");
  return value;
}

Graph load_graph(const RunConfig& cfg) {
  if (!cfg.graph_path.empty()) return load_edge_list(cfg.graph_path);
  const GeneratorSpec spec = parse_generator_spec(cfg.generator);
  return generate_er_graph(spec.nodes, spec.density, spec.probability,
                           spec.seed.value_or(cfg.seed));
}

Json envelope(const std::string& command, const Graph& g, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["graph"] = {{"nodes", g.node_count()}, {"edges", g.edge_count()}};
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["results"] = Json::object();
  j["pass"] = nullptr;
  return j;
}

Json cell_json(const EstimateCell& c) {
  return {{"successes", c.successes},
          {"trials", c.trials},
          {"point", c.point},
          {"ci_low", c.ci_low},
          {"ci_high", c.ci_high}};
}

// Rows of estimate cells, one per seed node.
using EstimateRows = std::vector<std::vector<EstimateCell>>;

Eigen::MatrixXd project(const EstimateRows& rows, double EstimateCell::*field) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].*field;
  return m;
}

int emit_estimates(const std::string& command, const char* engine, const Graph& g,
                   const RunConfig& cfg, const EstimateRows& rows, std::ostream& out) {
  const Eigen::MatrixXd point = project(rows, &EstimateCell::point);
  if (cfg.format == "csv") {
    write_csv_matrix(out, point);
    return kExitOk;
  }
  Json j = envelope(command, g, cfg);
  Json successes = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(c.successes);
    successes.push_back(std::move(r));
  }
  j["results"] = {{"engine", engine},
                  {"trials", cfg.trials},
                  {"confidence", cfg.confidence},
                  {"point", matrix_to_json(point)},
                  {"ci_low", matrix_to_json(project(rows, &EstimateCell::ci_low))},
                  {"ci_high", matrix_to_json(project(rows, &EstimateCell::ci_high))},
                  {"successes", std::move(successes)}};
  out << dump_json(j);
  return kExitOk;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  if (cfg.format.empty()) {
    out << to_edge_list(g);
  } else if (cfg.format == "csv") {
    write_csv_matrix(out, g.probability_matrix());
  } else {
    Json j = envelope("gen", g, cfg);
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v, e.p}));
    j["results"] = {{"edges", std::move(edges)}};
    out << dump_json(j);
  }
  return kExitOk;
}

int cmd_exact(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const Eigen::MatrixXd values = exact_P_matrix(g, cfg.n, cfg.exact_cap);
  if (cfg.format == "csv") {
    write_csv_matrix(out, values);
    return kExitOk;
  }
  Json j = envelope("exact", g, cfg);
  j["results"] = {{"exact_cap", cfg.exact_cap}, {"matrix", matrix_to_json(values)}};
  out << dump_json(j);
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, bool matrix_engine) {
  const Graph g = load_graph(cfg);
  EstimateRows rows;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const std::uint64_t row_seed = derive_seed(cfg.seed, i);
    rows.push_back(matrix_engine
                       ? matrix_estimate_P_row(g, i, cfg.n, cfg.trials, row_seed, cfg.confidence)
                       : estimate_P_row(g, i, cfg.n, cfg.trials, row_seed, cfg.confidence));
  }
  return emit_estimates(matrix_engine ? "matrix-estimate" : "simulate",
                        matrix_engine ? "matrix" : "cascade", g, cfg, rows, out);
}

int cmd_verify_symmetry(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const Eigen::MatrixXd values = exact_P_matrix(g, cfg.n, cfg.exact_cap);
  SymmetryReport report = symmetry_of(values, cfg.tolerance);
  if (cfg.format == "csv") {
    write_csv_matrix(out, values);
  } else {
    Json j = envelope("verify symmetry", g, cfg);
    j["results"] = {{"method", to_string(report.method)},
                    {"tolerance", report.tolerance},
                    {"max_abs_asymmetry", report.max_abs_asymmetry},
                    {"argmax", Json::array({report.argmax_i, report.argmax_j})},
                    {"matrix", matrix_to_json(values)}};
    j["pass"] = report.pass;
    out << dump_json(j);
  }
  return report.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_verify_transpose(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const SymmetryReport report = check_transpose_identity(g, cfg.n, cfg.trials, cfg.seed);
  if (cfg.format == "csv") {
    out << "samples,violations\n" << report.samples << ',' << report.violations << '\n';
  } else {
    Json j = envelope("verify transpose", g, cfg);
    j["results"] = {{"method", to_string(report.method)},
                    {"samples", report.samples},
                    {"violations", report.violations}};
    j["pass"] = report.pass;
    out << dump_json(j);
  }
  return report.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_verify_consistency(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const ConsistencyReport report =
      check_mc_consistency(g, cfg.n, cfg.trials, cfg.confidence, cfg.seed, cfg.exact_cap);
  if (cfg.format == "csv") {
    out << "i,j,exact,cascade_point,cascade_ci_low,cascade_ci_high,cascade_inside_ci,"
           "matrix_point,matrix_ci_low,matrix_ci_high,matrix_inside_ci\n";
    for (const PairRecord& r : report.records)
      out << r.i << ',' << r.j << ',' << format_number(r.exact) << ','
          << format_number(r.cascade.point) << ',' << format_number(r.cascade.ci_low) << ','
          << format_number(r.cascade.ci_high) << ',' << r.cascade_inside_ci << ','
          << format_number(r.matrix.point) << ',' << format_number(r.matrix.ci_low) << ','
          << format_number(r.matrix.ci_high) << ',' << r.matrix_inside_ci << '\n';
  } else {
    Json j = envelope("verify consistency", g, cfg);
    Json records = Json::array();
    for (const PairRecord& r : report.records) {
      Json c = cell_json(r.cascade);
      c["inside_ci"] = r.cascade_inside_ci;
      Json m = cell_json(r.matrix);
      m["inside_ci"] = r.matrix_inside_ci;
      records.push_back({{"i", r.i}, {"j", r.j}, {"exact", r.exact}, {"cascade", c}, {"matrix", m}});
    }
    j["results"] = {{"trials", cfg.trials},
                    {"confidence", report.confidence},
                    {"coverage_threshold", report.coverage_threshold},
                    {"cascade_coverage", report.cascade_coverage},
                    {"matrix_coverage", report.matrix_coverage},
                    {"records", std::move(records)}};
    j["pass"] = report.pass();
    out << dump_json(j);
  }
  return report.pass() ? kExitOk : kExitVerificationFailed;
}

void add_graph_source(CLI::App* sub, RunConfig& cfg) {
  auto* file = sub->add_option("--graph", cfg.graph_path, "Edge-list file");
  auto* gen = sub->add_option("--gen", cfg.generator, "Generator spec er:<n>:<density>:<p|uniform>[:<seed>]");
  file->excludes(gen);
  gen->excludes(file);
  sub->callback([sub, &cfg] {
    if (cfg.graph_path.empty() && cfg.generator.empty())
      throw CLI::RequiredError(sub->get_name() + ": one of --graph or --gen");
  });
}

// An empty format means JSON, except for `gen` where it means edge-list text.
void add_format(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if ((parts.size() != 4 && parts.size() != 5) || parts[0] != "er")
    throw std::invalid_argument("generator spec '" + spec +
                                "' is not er:<n>:<density>:<p|uniform>[:<seed>]");
  GeneratorSpec out;
  out.nodes = parse_number<std::size_t>(parts[1], "node count");
  out.density = parse_number<double>(parts[2], "density");
  if (parts[3] == "uniform")
    out.probability = UniformRandom{};
  else
    out.probability = parse_number<double>(parts[3], "probability");
  if (parts.size() == 5) out.seed = parse_number<std::uint64_t>(parts[4], "seed");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistent-activation independent cascade: simulation, exact probabilities and "
               "symmetry checks",
               "icsym"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Number of steps")->required();
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Master seed"); };
  auto add_trials = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials / samples")
        ->check(CLI::PositiveNumber);
  };
  auto add_confidence = [&](CLI::App* sub) {
    sub->add_option("--confidence", cfg.confidence, "Wilson interval confidence")
        ->check(CLI::Range(0.0, 1.0));
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--exact-cap", cfg.exact_cap, "Maximum node count for exact computation")
        ->check(CLI::Range(std::size_t{1}, kMaxExactCap));
  };

  auto* gen = app.add_subcommand("gen", "Generate or re-serialize a graph");
  add_graph_source(gen, cfg);
  add_seed(gen);
  add_format(gen, cfg);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo P(n) with the cascade engine");
  auto* matrix = app.add_subcommand("matrix-estimate", "Monte Carlo P(n) with random matrix products");
  for (auto* sub : {simulate, matrix}) {
    add_graph_source(sub, cfg);
    add_n(sub);
    add_trials(sub);
    add_seed(sub);
    add_confidence(sub);
    add_format(sub, cfg);
  }

  auto* exact = app.add_subcommand("exact", "Exact P(n) by subset dynamic programming");
  add_graph_source(exact, cfg);
  add_n(exact);
  add_seed(exact);
  add_cap(exact);
  add_format(exact, cfg);

  auto* verify = app.add_subcommand("verify", "Check P_ij(n) = P_ji(n)");
  verify->require_subcommand(1);
  auto* v_sym = verify->add_subcommand("symmetry", "Exact check at a tolerance");
  add_graph_source(v_sym, cfg);
  add_n(v_sym);
  add_seed(v_sym);
  add_cap(v_sym);
  add_format(v_sym, cfg);
  v_sym->add_option("--tol", cfg.tolerance, "Absolute tolerance")->check(CLI::NonNegativeNumber);

  auto* v_tr = verify->add_subcommand("transpose", "Per-sample transpose identity");
  add_graph_source(v_tr, cfg);
  add_n(v_tr);
  add_trials(v_tr);
  add_seed(v_tr);
  add_format(v_tr, cfg);

  auto* v_con = verify->add_subcommand("consistency", "Monte Carlo engines against exact values");
  add_graph_source(v_con, cfg);
  add_n(v_con);
  add_trials(v_con);
  add_seed(v_con);
  add_confidence(v_con);
  add_cap(v_con);
  add_format(v_con, cfg);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(cfg, out);
    if (*simulate) return cmd_simulate(cfg, out, false);
    if (*matrix) return cmd_simulate(cfg, out, true);
    if (*exact) return cmd_exact(cfg, out);
    if (*v_sym) return cmd_verify_symmetry(cfg, out);
    if (*v_tr) return cmd_verify_transpose(cfg, out);
    if (*v_con) return cmd_verify_consistency(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // GraphError, ExactCapError and precondition failures.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace icsym::cli
