#include "muda/experiment.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <string>

#include "muda/baselines.hpp"
#include "muda/mudan.hpp"
#include "muda/mudar.hpp"

namespace muda {

MechanismKind mechanism_from_name(std::string_view name) {
  if (name == "mudan") return MechanismKind::kMudan;
  if (name == "mudar") return MechanismKind::kMudar;
  if (name == "dna-mu" || name == "dnamu") return MechanismKind::kDnamu;
  if (name == "mudan-m") return MechanismKind::kMudanM;
  if (name == "mudar-m") return MechanismKind::kMudarM;
  throw std::invalid_argument("unknown mechanism: " + std::string(name));
}

std::string_view mechanism_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kMudan: return "mudan";
    case MechanismKind::kMudar: return "mudar";
    case MechanismKind::kDnamu: return "dna-mu";
    case MechanismKind::kMudanM: return "mudan-m";
    case MechanismKind::kMudarM: return "mudar-m";
  }
  return "unknown";
}

namespace {

Digraph make_graph(const ExperimentConfig& config, Rng& rng) {
  if (config.graph_file) return read_edge_list(*config.graph_file, config.symmetrize_file);
  const GeneratorSpec& gen = config.generator;
  if (gen.kind == "pa")
    return preferential_attachment(gen.nodes, gen.edges_per_node, rng, gen.symmetric);
  if (gen.kind == "tree") return random_tree(gen.nodes, rng, gen.symmetric);
  if (gen.kind == "er") return erdos_renyi_attached(gen.nodes, gen.extra_edge_prob, rng, gen.symmetric);
  throw std::invalid_argument("unknown generator: " + gen.kind);
}

struct TrialOutcome {
  double sw = 0.0;
  double rv = 0.0;
  double sw_opt = 0.0;
  int buyers = 0;
};

TrialOutcome run_single_demand(const ExperimentConfig& config, const Digraph& graph, int seller,
                               const std::vector<std::vector<double>>& vectors, Rng& trial_rng) {
  // Valuations are drawn per graph node; buyers keep their node's top slot.
  ParsedProfiles profiles;
  for (int v = 0; v < graph.node_count(); ++v) {
    profiles.ids.push_back(graph.labels[static_cast<size_t>(v)]);
    profiles.values.push_back({vectors[static_cast<size_t>(v)].front()});
  }
  BuiltInstance built = build_instance(graph, seller, profiles, config.item_count);
  const ReportVector reports = ReportVector::truthful(built.instance);

  TrialOutcome out;
  out.buyers = built.instance.buyer_count();
  Metrics metrics;
  switch (config.mechanism) {
    case MechanismKind::kMudan: {
      auto strategy = make_strategy(config.strategy, trial_rng.next_u64());
      MudanResult r = run_mudan(built.instance, reports, *strategy);
      metrics = compute_metrics(built.instance, r.outcome);
      break;
    }
    case MechanismKind::kMudar: {
      auto strategy = make_strategy(config.strategy, trial_rng.next_u64());
      MudarResult r = run_mudar(built.instance, reports, *strategy);
      metrics = compute_metrics(built.instance, r.outcome);
      break;
    }
    case MechanismKind::kDnamu: {
      metrics = compute_metrics(built.instance, run_dnamu(built.instance, reports));
      break;
    }
    default:
      throw std::invalid_argument("multi-demand mechanism in a single-demand sweep");
  }
  out.sw = metrics.social_welfare;
  out.rv = metrics.revenue;
  out.sw_opt = metrics.sw_opt;
  return out;
}

TrialOutcome run_multi_demand(const ExperimentConfig& config, const Digraph& graph, int seller,
                              const std::vector<std::vector<double>>& vectors, Rng& trial_rng) {
  ParsedProfiles profiles;
  for (int v = 0; v < graph.node_count(); ++v) {
    profiles.ids.push_back(graph.labels[static_cast<size_t>(v)]);
    profiles.values.push_back(vectors[static_cast<size_t>(v)]);
  }
  BuiltMultiInstance built = build_multi_instance(graph, seller, profiles, config.item_count);
  const MultiReportVector reports = MultiReportVector::truthful(built.instance);

  MultiRunResult result =
      config.mechanism == MechanismKind::kMudanM
          ? run_mudan_m(built.instance, reports, config.strategy, trial_rng.next_u64())
          : run_mudar_m(built.instance, reports, config.strategy, trial_rng.next_u64());
  const MultiMetrics metrics = compute_multi_metrics(built.instance, result.outcome);

  TrialOutcome out;
  out.buyers = built.instance.buyer_count();
  out.sw = metrics.social_welfare;
  out.rv = metrics.revenue;
  out.sw_opt = metrics.sw_opt;
  return out;
}

}  // namespace

SweepSummary sweep(const ExperimentConfig& config, std::ostream& csv, std::ostream* log) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const bool multi =
      config.mechanism == MechanismKind::kMudanM || config.mechanism == MechanismKind::kMudarM;

  Rng graph_rng(Rng::derive(config.seed, 0xf00dULL));
  const Digraph graph = make_graph(config, graph_rng);

  csv << std::setprecision(15);
  csv << "# " << kSweepSchemaId << '\n';
  csv << "trial,mechanism,strategy,model,m,seller,buyers,sw,rv,sw_opt,runtime_ms\n";

  SweepSummary summary;
  for (int trial = 0; trial < config.trials; ++trial) {
    Rng trial_rng(Rng::derive(config.seed, static_cast<std::uint64_t>(trial) + 1));

    int seller = config.fixed_seller.value_or(0);
    if (!config.fixed_seller) {
      // Uniform over nodes; a seller with no out-neighbours is resampled.
      while (true) {
        seller = static_cast<int>(trial_rng.uniform_int(0, graph.node_count() - 1));
        if (!graph.out[static_cast<size_t>(seller)].empty()) break;
        ++summary.resampled_sellers;
        if (log) *log << "trial " << trial << ": resampled seller " << seller << '\n';
      }
    }

    const int slots = multi ? config.item_count : 1;
    const std::vector<std::vector<double>> vectors = generate_valuations(
        config.model, graph.out, graph.node_count(), slots, config.valuation, trial_rng);

    const auto started = std::chrono::steady_clock::now();
    const TrialOutcome outcome = multi
                                     ? run_multi_demand(config, graph, seller, vectors, trial_rng)
                                     : run_single_demand(config, graph, seller, vectors, trial_rng);
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - started);

    SweepRow row;
    row.trial = trial;
    row.seller_node = seller;
    row.buyer_count = outcome.buyers;
    row.social_welfare = outcome.sw;
    row.revenue = outcome.rv;
    row.sw_opt = outcome.sw_opt;
    row.runtime_ms = elapsed.count();
    summary.rows.push_back(row);

    csv << trial << ',' << mechanism_name(config.mechanism) << ','
        << strategy_name(config.strategy) << ',' << valuation_model_name(config.model) << ','
        << config.item_count << ',' << seller << ',' << outcome.buyers << ',' << outcome.sw << ','
        << outcome.rv << ',' << outcome.sw_opt << ',' << row.runtime_ms << '\n';
  }

  for (const SweepRow& row : summary.rows) {
    summary.mean_sw += row.social_welfare;
    summary.mean_rv += row.revenue;
    summary.mean_sw_opt += row.sw_opt;
  }
  const double count = static_cast<double>(summary.rows.size());
  summary.mean_sw /= count;
  summary.mean_rv /= count;
  summary.mean_sw_opt /= count;
  summary.mean_sw_per_item = summary.mean_sw / static_cast<double>(config.item_count);
  summary.mean_rv_per_item = summary.mean_rv / static_cast<double>(config.item_count);
  return summary;
}

}  // namespace muda
