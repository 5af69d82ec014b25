#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "muda/generators.hpp"
#include "muda/io.hpp"
#include "muda/strategies.hpp"
#include "muda/valuation.hpp"

namespace muda {

inline constexpr std::string_view kSweepSchemaId = "muda-sweep-v1";

enum class MechanismKind { kMudan, kMudar, kDnamu, kMudanM, kMudarM };
MechanismKind mechanism_from_name(std::string_view name);
std::string_view mechanism_name(MechanismKind kind);

struct GeneratorSpec {
  std::string kind = "pa";  // pa | tree | er
  int nodes = 100;
  int edges_per_node = 2;     // pa
  double extra_edge_prob = 0.05;  // er
  bool symmetric = true;
};

// A config plus a seed reproduces a sweep bit-for-bit: trial t derives every
// random stream (seller choice, valuations, random priority) from
// derive(seed, t).
struct ExperimentConfig {
  std::optional<std::string> graph_file;  // otherwise the generator is used
  bool symmetrize_file = false;
  GeneratorSpec generator;
  MechanismKind mechanism = MechanismKind::kMudan;
  StrategyKind strategy = StrategyKind::kDegree;
  ValuationModel model = ValuationModel::kUniformIid;
  ValuationParams valuation;
  int item_count = 1;
  int trials = 1;
  std::uint64_t seed = 1;
  std::optional<int> fixed_seller;  // dense node index; otherwise sampled per trial
};

struct SweepRow {
  int trial = 0;
  int seller_node = 0;
  int buyer_count = 0;
  double social_welfare = 0.0;
  double revenue = 0.0;
  double sw_opt = 0.0;
  double runtime_ms = 0.0;
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  double mean_sw = 0.0;
  double mean_rv = 0.0;
  double mean_sw_opt = 0.0;
  double mean_sw_per_item = 0.0;
  double mean_rv_per_item = 0.0;
  int resampled_sellers = 0;  // sellers rejected for having no out-neighbours
};

// Runs the sweep and writes one CSV row per trial (ordered by trial index)
// to `csv`. Log lines (seller resampling, drops) go to `log` when non-null.
SweepSummary sweep(const ExperimentConfig& config, std::ostream& csv, std::ostream* log = nullptr);

}  // namespace muda
