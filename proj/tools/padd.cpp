// padd: command-line front end for the deceptive-buyer pricing solvers.
// Exit codes: 0 success, 1 I/O or parse failure, 2 precondition violation,
// 3 verification failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "padd/concave_pricing.hpp"
#include "padd/equilibrium.hpp"
#include "padd/error.hpp"
#include "padd/graph.hpp"
#include "padd/hardness.hpp"
#include "padd/instances.hpp"
#include "padd/io.hpp"
#include "padd/raygeom.hpp"

#ifndef PADD_GRAPH_DIR
#define PADD_GRAPH_DIR "data/graphs"
#endif

namespace fs = std::filesystem;
using namespace padd;

namespace {

constexpr int kVerifyFailed = 3;

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

EquilibriumOutcome solve_mode(const ProblemConfig& pc, const std::string& mode) {
  SolverConfig cfg = pc.solver;
  if (mode == "general") {
    cfg.ray.use_closed_form = false;
    return solve_general(pc.value, pc.cost, pc.domain, cfg);
  }
  if (mode == "convex") return solve_convex(pc.value, pc.cost, pc.domain, cfg);
  if (mode == "concave") return solve_concave(pc.value, pc.cost, pc.domain, cfg);
  return solve_auto(pc.value, pc.cost, pc.domain, cfg);
}

void print_outcome(const EquilibriumOutcome& out) {
  std::cout << "method          " << to_string(out.method) << '\n'
            << "trade           " << (out.trade() ? "yes" : "no") << '\n'
            << "bundle          " << fmt(out.bundle.coords()) << '\n'
            << "total_payment   " << fmt(out.payment) << '\n'
            << "price_split     " << fmt(out.price_split) << '\n'
            << "unit_prices     " << fmt(out.unit_prices) << '\n'
            << "buyer_surplus   " << fmt(out.buyer_surplus) << '\n'
            << "seller_revenue  " << fmt(out.seller_revenue) << '\n';
}

int cmd_solve(const std::string& path, const std::string& mode, bool json, bool csv) {
  const ProblemConfig pc = read_config(path);
  const EquilibriumOutcome out = solve_mode(pc, mode);
  if (json) {
    print_json(to_json(out));
  } else if (csv) {
    std::cout << outcome_csv_header(out.bundle.dim()) << '\n' << outcome_csv_row(out) << '\n';
  } else {
    print_outcome(out);
  }
  return 0;
}

int cmd_fixed_bundle(const std::string& path, const std::string& bundle_text, bool json) {
  const ProblemConfig pc = read_config(path);
  const Bundle xbar(parse_number_list(bundle_text));
  require(xbar.dim() == pc.domain.dim(), "bundle dimension does not match the domain");
  require(pc.domain.contains(xbar.coords()), "bundle lies outside the domain");
  SolverConfig cfg = pc.solver;
  const FixedBundleResult r = fixed_bundle_optimal(pc.value, pc.cost, xbar, cfg.ray);
  if (json) {
    print_json(Json{{"bundle", xbar.vec()},
                    {"payment", r.payment},
                    {"imitative_value", to_json(r.imitative.as_function())},
                    {"buyer_surplus", r.surplus}});
    return 0;
  }
  std::cout << "bundle          " << fmt(xbar.coords()) << '\n'
            << "payment         " << fmt(r.payment) << '\n'
            << "leontief        anchor " << fmt(r.imitative.anchor().coords()) << ", level "
            << fmt(r.imitative.payment()) << '\n'
            << "buyer_surplus   " << fmt(r.surplus) << '\n';
  return 0;
}

int cmd_hardness(const std::string& path, const std::string& round_text, bool json) {
  const GraphInstance g = read_graph_file(path);
  const BinaryMax best = brute_force_max(g);
  const std::size_t mis = mis_brute_force(g);
  const bool equal = best.value == static_cast<double>(mis);
  Json j{{"nodes", g.nodes()},
         {"edges", g.edge_count()},
         {"max_u", best.value},
         {"argmax", best.argmax.vec()},
         {"mis", mis},
         {"equal", equal}};
  std::ostringstream text;
  text << "nodes           " << g.nodes() << '\n'
       << "edges           " << g.edge_count() << '\n'
       << "max_U           " << fmt(best.value) << '\n'
       << "argmax          " << fmt(best.argmax.coords()) << '\n'
       << "mis_size        " << mis << '\n'
       << "equal           " << (equal ? "yes" : "no") << '\n';
  if (!round_text.empty()) {
    const Vector xbar = parse_number_list(round_text);
    require(xbar.size() == g.nodes(), "rounding point dimension does not match the graph");
    const Bundle rounded = derandomize(g, xbar);
    const double u_before = surplus_U(g, xbar);
    const double u_after = surplus_U(g, rounded.coords());
    j["round_input_u"] = u_before;
    j["rounded"] = rounded.vec();
    j["rounded_u"] = u_after;
    text << "round_input_U   " << fmt(u_before) << '\n'
         << "rounded         " << fmt(rounded.coords()) << '\n'
         << "rounded_U       " << fmt(u_after) << '\n';
  }
  if (json) {
    print_json(j);
  } else {
    std::cout << text.str();
  }
  return 0;
}

void print_overfit(const OverfitReport& r) {
  std::cout << "epsilon                  " << fmt(r.epsilon) << '\n'
            << "linear class             bundle " << fmt(r.linear_bundle.coords()) << ", payment "
            << fmt(r.linear_payment) << ", revenue " << fmt(r.linear_revenue) << ", buyer surplus "
            << fmt(r.linear_buyer_surplus) << '\n'
            << "best linear vs sqrt(x)   revenue " << fmt(r.linear_response_revenue) << '\n'
            << "extra price vs sqrt(x)   bundle " << fmt(r.rich_bundle.coords()) << ", payment "
            << fmt(r.rich_payment) << ", revenue " << fmt(r.rich_revenue) << ", buyer surplus "
            << fmt(r.rich_buyer_surplus) << '\n'
            << "rich_revenue             " << fmt(r.rich_revenue) << '\n'
            << "rich_buyer_surplus       " << fmt(r.rich_buyer_surplus) << '\n'
            << "chosen_price_tag         " << r.chosen_price_tag << '\n'
            << "buyer_choice             " << r.buyer_choice << '\n'
            << "strict_decrease          " << (r.strict_decrease ? "yes" : "no") << '\n';
  if (!r.strict_decrease) std::cout << "FLAG                     " << r.note << '\n';
}

int cmd_overfit(double epsilon, bool json, bool csv) {
  const OverfitReport r = overfit_scenario(epsilon);
  if (json) {
    print_json(to_json(r));
  } else if (csv) {
    std::cout << overfit_csv(r);
  } else {
    print_overfit(r);
  }
  return 0;
}

std::string figure_csv(const Instance& inst, const std::string& tag, const std::string& formula) {
  const EquilibriumOutcome out = solve_auto(inst.value, inst.cost, inst.domain);
  require(out.trade(), "reproduction instance has no trade");
  const FunctionExpr u = out.imitative->as_function();
  const double xs = out.bundle[0];
  std::ostringstream os;
  os << "# reproduces " << tag << ": " << formula << "\n";
  os << "row,x,v,c,u_star,payment,buyer_surplus,seller_revenue\n";
  constexpr int kSamples = 81;
  for (int k = 0; k < kSamples; ++k) {
    const Vector x{2.0 * xs * k / (kSamples - 1)};
    os << "curve," << fmt(x[0]) << ',' << fmt(evaluate(inst.value, x)) << ',' << fmt(evaluate(inst.cost, x)) << ','
       << fmt(evaluate(u, x)) << ",,,\n";
  }
  os << "equilibrium," << fmt(xs) << ',' << fmt(evaluate(inst.value, out.bundle)) << ','
     << fmt(evaluate(inst.cost, out.bundle)) << ',' << fmt(out.payment) << ',' << fmt(out.payment) << ','
     << fmt(out.buyer_surplus) << ',' << fmt(out.seller_revenue) << '\n';
  return os.str();
}

std::string hardness_suite_csv(const fs::path& dir) {
  require(fs::is_directory(dir), "graph directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".txt" || ext == ".json")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::ostringstream os;
  os << "# reproduces the independent-set reduction: max U over binary bundles vs maximum independent set\n";
  os << "graph,nodes,edges,max_u,mis,equal\n";
  for (const auto& f : files) {
    const GraphInstance g = read_graph_file(f);
    const BinaryMax best = brute_force_max(g);
    const std::size_t mis = mis_brute_force(g);
    os << f.stem().string() << ',' << g.nodes() << ',' << g.edge_count() << ',' << fmt(best.value) << ',' << mis
       << ',' << (best.value == static_cast<double>(mis) ? "yes" : "no") << '\n';
  }
  return os.str();
}

int cmd_reproduce(const std::string& out_dir, const std::string& graph_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ParseError("cannot create " + dir.string() + ": " + ec.message());
  write_text_file(dir / "fig2a.csv", figure_csv(fig2a_instance(), "fig2a", "v = 64 x^(1/2); c = x^2; X = [0 100]"));
  write_text_file(dir / "fig2b.csv", figure_csv(fig2b_instance(), "fig2b", "v = 4 x^(1/4); c = x^(1/2); X = [0 100]"));
  const OverfitReport r = overfit_scenario(0.05);
  write_text_file(dir / "overfit.csv",
                  "# reproduces example1 over-exploitation: v = min(10x; 8.1); c = x^2; epsilon = 0.05\n" +
                      overfit_csv(r));
  write_text_file(dir / "hardness_suite.csv", hardness_suite_csv(graph_dir));
  std::cout << "wrote fig2a.csv, fig2b.csv, overfit.csv, hardness_suite.csv to " << dir.string() << '\n';
  return 0;
}

int cmd_verify(const std::string& path, const std::string& outcome_path, const std::string& mode,
               std::size_t samples, bool json) {
  const ProblemConfig pc = read_config(path);
  const EquilibriumOutcome out = outcome_path.empty()
                                     ? solve_mode(pc, mode)
                                     : outcome_from_json(Json::parse(read_text_file(outcome_path), nullptr, false));
  VerificationReport report = verify_equilibrium(out, pc.value, pc.cost, pc.domain, samples, pc.solver);

  // payment must not depend on how it is split across goods
  VerificationCheck split{"payment_invariance", true, 0.0, "50 random splits"};
  if (out.trade()) {
    std::mt19937_64 rng(pc.seed);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < out.bundle.dim(); ++i) {
      if (out.bundle[i] > 0.0) support.push_back(i);
    }
    Vector sub_x;
    for (std::size_t i : support) sub_x.push_back(out.bundle[i]);
    for (int trial = 0; trial < 50; ++trial) {
      Vector lambda(support.size());
      double total = 0.0;
      for (double& l : lambda) total += (l = unit(rng));
      for (double& l : lambda) l /= total;
      const LinearPrice p = optimal_price_family(Bundle(sub_x), out.payment, lambda);
      split.worst_violation = std::max(split.worst_violation, std::abs(p.payment(sub_x) - out.payment));
    }
    split.pass = split.worst_violation <= 1e-12 * std::max(1.0, out.payment);
  }
  report.checks.push_back(split);

  if (json) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
      checks.push_back(
          Json{{"name", c.name}, {"pass", c.pass}, {"worst_violation", c.worst_violation}, {"detail", c.detail}});
    }
    print_json(Json{{"outcome", to_json(out)}, {"checks", checks}, {"all_pass", report.all_pass()}});
  } else {
    for (const auto& c : report.checks) {
      std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  worst " << fmt(c.worst_violation);
      if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << '\n';
    }
  }
  return report.all_pass() ? 0 : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"padd: pricing against a deceptive buyer"};
  app.require_subcommand(1);

  std::string config;
  std::string mode = "auto";
  bool json = false;
  bool csv = false;

  auto* solve = app.add_subcommand("solve", "solve for the equilibrium of a problem config");
  solve->add_option("config", config, "problem config (JSON)")->required();
  solve->add_option("--mode", mode, "solver")->check(CLI::IsMember({"auto", "general", "convex", "concave"}));
  solve->add_flag("--json", json, "full-precision JSON output");
  solve->add_flag("--csv", csv, "CSV output");

  std::string bundle;
  auto* fixed = app.add_subcommand("fixed-bundle", "optimal imitative value for a fixed target bundle");
  fixed->add_option("config", config, "problem config (JSON)")->required();
  fixed->add_option("--bundle", bundle, "comma separated bundle, e.g. 4 or 1,2")->required();
  fixed->add_flag("--json", json, "full-precision JSON output");

  std::string graph;
  std::string round;
  auto* hard = app.add_subcommand("hardness", "independent-set reduction on a graph file");
  hard->add_option("graph", graph, "edge list (.txt) or adjacency JSON")->required();
  hard->add_option("--round", round, "fractional point to derandomize, e.g. 0.5,0.5,0.5");
  hard->add_flag("--json", json, "full-precision JSON output");

  double epsilon = 0.05;
  auto* over = app.add_subcommand("overfit", "over-exploitation example with an extra concave price");
  over->add_option("--epsilon", epsilon, "offset of the extra price, in (0, 0.2439)");
  over->add_flag("--json", json, "full-precision JSON output");
  over->add_flag("--csv", csv, "two-row CSV output");

  std::string out_dir = "reproduce";
  std::string graph_dir = PADD_GRAPH_DIR;
  auto* repro = app.add_subcommand("reproduce", "write all reproduction CSV files");
  repro->add_option("--out", out_dir, "output directory");
  repro->add_option("--graphs", graph_dir, "directory of bundled graphs");

  std::string outcome;
  std::size_t samples = 10001;
  auto* verify = app.add_subcommand("verify", "check an equilibrium outcome against its config");
  verify->add_option("config", config, "problem config (JSON)")->required();
  verify->add_option("--outcome", outcome, "outcome JSON from `padd solve --json`; solves when absent");
  verify->add_option("--mode", mode, "solver used when no outcome is given")
      ->check(CLI::IsMember({"auto", "general", "convex", "concave"}));
  verify->add_option("--samples", samples, "alpha samples for the feasibility check");
  verify->add_flag("--json", json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (json && csv) {
    std::cerr << "error: --json and --csv are exclusive\n";
    return 1;
  }

  try {
    if (*solve) return cmd_solve(config, mode, json, csv);
    if (*fixed) return cmd_fixed_bundle(config, bundle, json);
    if (*hard) return cmd_hardness(graph, round, json);
    if (*over) return cmd_overfit(epsilon, json, csv);
    if (*repro) return cmd_reproduce(out_dir, graph_dir);
    if (*verify) return cmd_verify(config, outcome, mode, samples, json);
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
