// muda: multi-unit diffusion auction toolkit.
//
// Subcommands:
//   run     one mechanism on one instance, printing outcome + metrics
//   check   brute-force property verification (IC/mu-IC, IR, ND, NW, ...)
//   sweep   seeded experiment harness emitting CSV rows
//   reduce  emit the single-demand reduction of a multi-demand instance
//
// Exit codes: 0 all checks pass, 1 a violation was found, 2 usage/parse error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "muda/baselines.hpp"
#include "muda/experiment.hpp"
#include "muda/io.hpp"
#include "muda/mudan.hpp"
#include "muda/mudar.hpp"
#include "muda/oracle.hpp"

namespace {

using nlohmann::json;

struct InstanceArgs {
  std::string graph_path;
  std::string profiles_path;
  long long seller_label = 0;
  bool symmetrize = false;
  int item_count = 1;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args) {
  cmd->add_option("--graph", args.graph_path, "edge list file (u v per line, # comments)")
      ->required();
  cmd->add_option("--profiles", args.profiles_path, "valuation CSV (agent_id,v1[,v2,...])")
      ->required();
  cmd->add_option("--seller", args.seller_label, "node id acting as the seller")->required();
  cmd->add_flag("--symmetrize", args.symmetrize, "treat the edge list as undirected");
  cmd->add_option("-m,--items", args.item_count, "number of items for sale")->required();
}

int seller_index(const muda::Digraph& graph, long long label) {
  for (int v = 0; v < graph.node_count(); ++v) {
    if (graph.labels[static_cast<size_t>(v)] == label) return v;
  }
  throw std::runtime_error("seller node not present in the graph");
}

json outcome_json(const muda::AuctionInstance& instance, const muda::Outcome& outcome,
                  const std::vector<long long>& labels) {
  const muda::Metrics metrics = muda::compute_metrics(instance, outcome);
  json agents = json::array();
  for (int i = 0; i < instance.buyer_count(); ++i) {
    agents.push_back({{"node", labels[static_cast<size_t>(i)]},
                      {"allocated", outcome.allocation[static_cast<size_t>(i)] != 0},
                      {"payment", outcome.payment[static_cast<size_t>(i)]},
                      {"utility", metrics.utilities[static_cast<size_t>(i)]}});
  }
  return {{"agents", agents},
          {"social_welfare", metrics.social_welfare},
          {"revenue", metrics.revenue},
          {"sw_opt", metrics.sw_opt}};
}

int cmd_run(const InstanceArgs& args, const std::string& mechanism, const std::string& strategy,
            std::uint64_t seed, bool as_json, bool show_trace) {
  const muda::Digraph graph = muda::read_edge_list(args.graph_path, args.symmetrize);
  const int seller = seller_index(graph, args.seller_label);
  const muda::MechanismKind kind = muda::mechanism_from_name(mechanism);

  if (kind == muda::MechanismKind::kMudanM || kind == muda::MechanismKind::kMudarM) {
    std::vector<std::string> warnings;
    const muda::ParsedProfiles profiles = muda::read_profiles(args.profiles_path, true, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    muda::BuiltMultiInstance built =
        muda::build_multi_instance(graph, seller, profiles, args.item_count);
    if (built.dropped_unreachable > 0)
      std::cerr << "note: dropped " << built.dropped_unreachable << " unreachable node(s)\n";
    const muda::MultiReportVector reports = muda::MultiReportVector::truthful(built.instance);
    const muda::StrategyKind strat = muda::strategy_from_name(strategy);
    muda::MultiRunResult result = kind == muda::MechanismKind::kMudanM
                                      ? muda::run_mudan_m(built.instance, reports, strat, seed)
                                      : muda::run_mudar_m(built.instance, reports, strat, seed);
    const muda::MultiMetrics metrics = muda::compute_multi_metrics(built.instance, result.outcome);
    if (as_json) {
      json out = {{"mechanism", mechanism},
                  {"social_welfare", metrics.social_welfare},
                  {"revenue", metrics.revenue},
                  {"sw_opt", metrics.sw_opt},
                  {"allocated", result.outcome.allocated_count()}};
      std::cout << out.dump(2) << '\n';
    } else {
      std::cout << mechanism << ": SW=" << metrics.social_welfare << " RV=" << metrics.revenue
                << " SW_opt=" << metrics.sw_opt << " allocated=" << result.outcome.allocated_count()
                << '\n';
      for (int i = 0; i < built.instance.buyer_count(); ++i) {
        for (int j = 0; j < built.instance.item_count; ++j) {
          if (result.outcome.alloc(i, j) || result.outcome.pay(i, j) != 0.0) {
            std::cout << "  node " << built.buyer_labels[static_cast<size_t>(i)] << " item " << j
                      << ": pi=" << static_cast<int>(result.outcome.alloc(i, j))
                      << " p=" << result.outcome.pay(i, j) << '\n';
          }
        }
      }
    }
    return 0;
  }

  std::vector<std::string> warnings;
  const muda::ParsedProfiles profiles = muda::read_profiles(args.profiles_path, false, &warnings);
  muda::BuiltInstance built = muda::build_instance(graph, seller, profiles, args.item_count);
  if (built.dropped_unreachable > 0)
    std::cerr << "note: dropped " << built.dropped_unreachable << " unreachable node(s)\n";
  const muda::ReportVector reports = muda::ReportVector::truthful(built.instance);

  muda::Outcome outcome;
  muda::ExplorationTrace trace;
  const muda::StrategyKind strat = muda::strategy_from_name(strategy);
  if (kind == muda::MechanismKind::kMudan) {
    auto strategy_obj = muda::make_strategy(strat, seed);
    muda::MudanResult r = muda::run_mudan(built.instance, reports, *strategy_obj);
    outcome = std::move(r.outcome);
    trace = std::move(r.trace);
  } else if (kind == muda::MechanismKind::kMudar) {
    auto strategy_obj = muda::make_strategy(strat, seed);
    muda::MudarResult r = muda::run_mudar(built.instance, reports, *strategy_obj);
    outcome = std::move(r.outcome);
    trace = std::move(r.trace);
  } else {
    outcome = muda::run_dnamu(built.instance, reports);
  }

  if (as_json) {
    std::cout << outcome_json(built.instance, outcome, built.buyer_labels).dump(2) << '\n';
  } else {
    const muda::Metrics metrics = muda::compute_metrics(built.instance, outcome);
    std::cout << mechanism << ": SW=" << metrics.social_welfare << " RV=" << metrics.revenue
              << " SW_opt=" << metrics.sw_opt << '\n';
    for (int i = 0; i < built.instance.buyer_count(); ++i) {
      if (outcome.allocation[static_cast<size_t>(i)] || outcome.payment[static_cast<size_t>(i)] != 0.0) {
        std::cout << "  node " << built.buyer_labels[static_cast<size_t>(i)]
                  << ": pi=" << static_cast<int>(outcome.allocation[static_cast<size_t>(i)])
                  << " p=" << outcome.payment[static_cast<size_t>(i)] << '\n';
      }
    }
  }
  if (show_trace) {
    int iter = 1;
    for (const muda::IterationRecord& rec : trace.iterations) {
      std::cout << "  iter " << iter++ << ": added={";
      for (size_t k = 0; k < rec.added.size(); ++k)
        std::cout << (k ? "," : "") << built.buyer_labels[static_cast<size_t>(rec.added[k])];
      std::cout << "}";
      if (rec.winner)
        std::cout << " winner=" << built.buyer_labels[static_cast<size_t>(*rec.winner)]
                  << " p_hat=" << rec.tentative_payment;
      std::cout << '\n';
    }
  }
  return 0;
}

int cmd_check(const std::string& mechanism, int instances, std::uint64_t seed, int n_max, int m_max,
              int ceiling, const std::string& report_path) {
  const muda::MechanismKind kind = muda::mechanism_from_name(mechanism);
  json violations = json::array();
  json mu_boundary = json::array();  // profits only at the v''=mu tie boundary
  json static_failures = json::array();
  int checked = 0;

  muda::Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    if (kind == muda::MechanismKind::kMudanM || kind == muda::MechanismKind::kMudarM) {
      const muda::MultiAuctionInstance instance =
          muda::random_multi_instance(n_max, m_max, ceiling, rng);
      const muda::MultiReportVector truthful = muda::MultiReportVector::truthful(instance);
      const bool is_mudar = kind == muda::MechanismKind::kMudarM;
      std::unique_ptr<muda::MultiMechanism> mech;
      if (is_mudar) {
        mech = std::make_unique<muda::MudarMMechanism>();
      } else {
        mech = std::make_unique<muda::MudanMMechanism>();
      }
      const double mu = muda::mu_threshold(instance);
      for (muda::AgentId agent = 0; agent < instance.buyer_count(); ++agent) {
        const muda::MultiDeviationReport report = muda::best_multi_deviation(
            *mech, instance, truthful, agent,
            is_mudar ? muda::DeviationMode::kMuBounded : muda::DeviationMode::kFull, mu);
        if (report.violation) {
          json entry = {{"instance", k},
                        {"agent", agent},
                        {"gain", report.deviating_utility - report.truthful_utility}};
          if (is_mudar && !muda::best_multi_deviation(*mech, instance, truthful, agent,
                                                      muda::DeviationMode::kMuBoundedOpen, mu)
                               .violation) {
            mu_boundary.push_back(std::move(entry));
          } else {
            violations.push_back(std::move(entry));
          }
        }
      }
    } else {
      const muda::AuctionInstance instance = muda::random_instance(n_max, m_max, ceiling, rng);
      const muda::ReportVector truthful = muda::ReportVector::truthful(instance);
      std::unique_ptr<muda::Mechanism> mech;
      if (kind == muda::MechanismKind::kMudan) {
        mech = std::make_unique<muda::MudanMechanism>();
      } else if (kind == muda::MechanismKind::kMudar) {
        mech = std::make_unique<muda::MudarMechanism>();
      } else {
        mech = std::make_unique<muda::DnamuMechanism>();
      }
      const muda::StaticChecks checks = muda::check_static(*mech, instance, truthful);
      if (!checks.ir || !checks.nd || !checks.nw) {
        static_failures.push_back(
            {{"instance", k}, {"ir", checks.ir}, {"nd", checks.nd}, {"nw", checks.nw}});
      }
      const double mu = muda::mu_threshold(instance);
      const muda::DeviationMode mode = kind == muda::MechanismKind::kMudar
                                           ? muda::DeviationMode::kMuBounded
                                           : muda::DeviationMode::kFull;
      for (muda::AgentId agent = 0; agent < instance.buyer_count(); ++agent) {
        const std::vector<double> grid = muda::make_value_grid(instance, truthful, agent);
        const muda::DeviationReport report =
            muda::best_deviation(*mech, instance, truthful, agent, grid, mode, mu);
        if (report.violation) {
          json entry = {{"instance", k},
                        {"agent", agent},
                        {"valuation", report.best_valuation},
                        {"gain", report.deviating_utility - report.truthful_utility}};
          if (kind == muda::MechanismKind::kMudar &&
              !muda::best_deviation(*mech, instance, truthful, agent, grid,
                                    muda::DeviationMode::kMuBoundedOpen, mu)
                   .violation) {
            mu_boundary.push_back(std::move(entry));
          } else {
            violations.push_back(std::move(entry));
          }
        }
      }
    }
    ++checked;
  }

  const bool pass = violations.empty() && static_failures.empty();
  json report = {{"mechanism", mechanism},
                 {"instances", checked},
                 {"seed", seed},
                 {"n_max", n_max},
                 {"m_max", m_max},
                 {"value_ceiling", ceiling},
                 {"violations", violations},
                 {"mu_boundary_ties", mu_boundary},
                 {"static_failures", static_failures},
                 {"pass", pass}};
  if (report_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream out(report_path);
    out << report.dump(2) << '\n';
    std::cout << (pass ? "pass" : "violation found") << " (" << checked << " instances)\n";
  }
  return pass ? 0 : 1;
}

int cmd_reduce(const InstanceArgs& args, const std::string& out_graph,
               const std::string& out_profiles) {
  const muda::Digraph graph = muda::read_edge_list(args.graph_path, args.symmetrize);
  const int seller = seller_index(graph, args.seller_label);
  std::vector<std::string> warnings;
  const muda::ParsedProfiles profiles = muda::read_profiles(args.profiles_path, true, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
  muda::BuiltMultiInstance built =
      muda::build_multi_instance(graph, seller, profiles, args.item_count);
  const muda::MultiReportVector reports = muda::MultiReportVector::truthful(built.instance);
  const muda::ReducedInstance reduced = muda::reduce_instance(built.instance, reports);

  // Reduced labels: the seller is node 0; buyer i slot j is 1 + i*m + j.
  std::ofstream graph_out(out_graph);
  if (!graph_out) throw std::runtime_error("cannot write " + out_graph);
  graph_out << "# reduced instance: seller=0, buyer i slot j = 1 + i*m + j, m="
            << built.instance.item_count << '\n';
  for (muda::AgentId j : reduced.instance.seller_neighbors) graph_out << 0 << ' ' << j + 1 << '\n';
  for (muda::AgentId i = 0; i < reduced.instance.buyer_count(); ++i) {
    for (muda::AgentId j : reduced.instance.profiles[static_cast<size_t>(i)].neighbors)
      graph_out << i + 1 << ' ' << j + 1 << '\n';
  }

  std::ofstream profile_out(out_profiles);
  if (!profile_out) throw std::runtime_error("cannot write " + out_profiles);
  profile_out << "# reduced single-demand profiles\n";
  for (muda::AgentId i = 0; i < reduced.instance.buyer_count(); ++i)
    profile_out << i + 1 << ',' << reduced.instance.profiles[static_cast<size_t>(i)].valuation
                << '\n';
  std::cout << "reduced " << built.instance.buyer_count() << " buyers x "
            << built.instance.item_count << " slots -> " << reduced.instance.buyer_count()
            << " buyers\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-unit diffusion auction toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  // run
  InstanceArgs run_args;
  std::string run_mechanism = "mudan";
  std::string run_strategy = "degree";
  std::uint64_t run_seed = 1;
  bool run_json = false, run_trace = false;
  CLI::App* run_cmd = app.add_subcommand("run", "run one mechanism on one instance");
  add_instance_options(run_cmd, run_args);
  run_cmd->add_option("--mechanism", run_mechanism, "mudan|mudar|dna-mu|mudan-m|mudar-m");
  run_cmd->add_option("--strategy", run_strategy, "degree|distance|depth|new-agent|random");
  run_cmd->add_option("--seed", run_seed, "seed for random priorities")->envname("MUDA_SEED");
  run_cmd->add_flag("--json", run_json, "machine-readable output");
  run_cmd->add_flag("--trace", run_trace, "print the exploration trace");

  // check
  std::string check_mechanism = "mudan";
  int check_instances = 100;
  std::uint64_t check_seed = 1;
  int check_nmax = 7, check_mmax = 3, check_ceiling = 9;
  std::string check_report;
  CLI::App* check_cmd = app.add_subcommand("check", "brute-force property verification");
  check_cmd->add_option("--mechanism", check_mechanism, "mudan|mudar|dna-mu|mudan-m|mudar-m");
  check_cmd->add_option("--instances", check_instances, "random instances to verify");
  check_cmd->add_option("--seed", check_seed)->envname("MUDA_SEED");
  check_cmd->add_option("--n-max", check_nmax, "max buyers per instance");
  check_cmd->add_option("--m-max", check_mmax, "max items per instance");
  check_cmd->add_option("--ceiling", check_ceiling, "integer valuation ceiling");
  check_cmd->add_option("--report", check_report, "write the JSON report here");

  // sweep
  muda::ExperimentConfig config;
  std::string sweep_graph, sweep_gen = "pa", sweep_mechanism = "mudan", sweep_strategy = "degree";
  std::string sweep_model = "uniform", sweep_out;
  int sweep_nodes = 100, sweep_k = 2, sweep_seller = -1;
  double sweep_p = 0.05;
  bool sweep_directed = false, sweep_symmetrize = false;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "seeded experiment harness, CSV output");
  sweep_cmd->add_option("--graph", sweep_graph, "edge list file (otherwise a generator)");
  sweep_cmd->add_flag("--symmetrize", sweep_symmetrize, "treat the edge list as undirected");
  sweep_cmd->add_option("--gen", sweep_gen, "pa|tree|er");
  sweep_cmd->add_option("--gen-nodes", sweep_nodes);
  sweep_cmd->add_option("--gen-k", sweep_k, "edges per node (pa)");
  sweep_cmd->add_option("--gen-p", sweep_p, "extra edge probability (er)");
  sweep_cmd->add_flag("--gen-directed", sweep_directed, "rooted directed generator output");
  sweep_cmd->add_option("--mechanism", sweep_mechanism);
  sweep_cmd->add_option("--strategy", sweep_strategy);
  sweep_cmd->add_option("--model", sweep_model, "1|2|3 or uniform|top-anchored|degroot");
  sweep_cmd->add_option("--ceiling", config.valuation.ceiling);
  sweep_cmd->add_option("--alpha", config.valuation.self_weight, "DeGroot self-weight");
  sweep_cmd->add_option("--degroot-rounds", config.valuation.degroot_rounds);
  sweep_cmd->add_option("-m,--items", config.item_count)->required();
  sweep_cmd->add_option("--trials", config.trials);
  sweep_cmd->add_option("--seed", config.seed)->envname("MUDA_SEED");
  sweep_cmd->add_option("--seller-fixed", sweep_seller, "fix the seller node (dense index)");
  sweep_cmd->add_option("--out", sweep_out, "CSV path (default stdout)");

  // reduce
  InstanceArgs reduce_args;
  std::string reduce_graph_out, reduce_profiles_out;
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "emit the single-demand reduction");
  add_instance_options(reduce_cmd, reduce_args);
  reduce_cmd->add_option("--out-graph", reduce_graph_out)->required();
  reduce_cmd->add_option("--out-profiles", reduce_profiles_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed())
      return cmd_run(run_args, run_mechanism, run_strategy, run_seed, run_json, run_trace);
    if (check_cmd->parsed())
      return cmd_check(check_mechanism, check_instances, check_seed, check_nmax, check_mmax,
                       check_ceiling, check_report);
    if (sweep_cmd->parsed()) {
      if (!sweep_graph.empty()) config.graph_file = sweep_graph;
      config.symmetrize_file = sweep_symmetrize;
      config.generator.kind = sweep_gen;
      config.generator.nodes = sweep_nodes;
      config.generator.edges_per_node = sweep_k;
      config.generator.extra_edge_prob = sweep_p;
      config.generator.symmetric = !sweep_directed;
      config.mechanism = muda::mechanism_from_name(sweep_mechanism);
      config.strategy = muda::strategy_from_name(sweep_strategy);
      config.model = muda::valuation_model_from_name(sweep_model);
      if (sweep_seller >= 0) config.fixed_seller = sweep_seller;
      muda::SweepSummary summary;
      if (sweep_out.empty()) {
        summary = muda::sweep(config, std::cout, &std::cerr);
      } else {
        std::ofstream out(sweep_out);
        if (!out) throw std::runtime_error("cannot write " + sweep_out);
        summary = muda::sweep(config, out, &std::cerr);
      }
      std::cerr << "mean SW/item=" << summary.mean_sw_per_item
                << " mean RV/item=" << summary.mean_rv_per_item
                << " mean SW_opt=" << summary.mean_sw_opt << '\n';
      return 0;
    }
    if (reduce_cmd->parsed()) return cmd_reduce(reduce_args, reduce_graph_out, reduce_profiles_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
