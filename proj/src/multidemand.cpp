#include "muda/multidemand.hpp"

#include <algorithm>

#include "muda/mudan.hpp"
#include "muda/mudar.hpp"
#include "muda/rng.hpp"

namespace muda {

namespace {

void check_descending(const std::vector<double>& v) {
  for (size_t j = 0; j + 1 < v.size(); ++j) {
    if (v[j] < v[j + 1])
      throw std::invalid_argument("valuation vector must be non-increasing");
  }
  for (double x : v) {
    if (x < 0.0) throw std::invalid_argument("valuation must be non-negative");
  }
}

std::vector<double> padded(const std::vector<double>& v, int m) {
  if (static_cast<int>(v.size()) > m)
    throw std::invalid_argument("valuation vector longer than item count");
  std::vector<double> out = v;
  out.resize(static_cast<size_t>(m), 0.0);
  return out;
}

}  // namespace

void MultiAuctionInstance::validate() const {
  if (item_count < 1) throw std::invalid_argument("item count must be >= 1");
  // Structural checks ride on the single-demand validation of the reduction.
  for (const MultiProfile& p : profiles) check_descending(p.valuations);
  reduce_instance(*this, MultiReportVector::truthful(*this)).instance.validate();
}

MultiReportVector MultiReportVector::truthful(const MultiAuctionInstance& instance) {
  MultiReportVector reports;
  reports.entries.reserve(instance.profiles.size());
  for (const MultiProfile& p : instance.profiles)
    reports.entries.push_back(MultiReport{p.valuations, p.neighbors, false});
  return reports;
}

void validate_multi_reports(const MultiAuctionInstance& instance, const MultiReportVector& reports) {
  const int n = instance.buyer_count();
  if (static_cast<int>(reports.entries.size()) != n)
    throw std::invalid_argument("report vector needs one entry per buyer");
  for (int i = 0; i < n; ++i) {
    const MultiReport& r = reports.entries[static_cast<size_t>(i)];
    if (r.silent) {
      if (!r.neighbors.empty() || !r.valuations.empty())
        throw std::invalid_argument("silent report must be empty");
      continue;
    }
    check_descending(r.valuations);
    for (AgentId j : r.neighbors) {
      if (j < 0 || j >= n) throw std::invalid_argument("reported neighbor id out of range");
    }
    if (!detail::is_subset_sorted(r.neighbors, instance.profiles[static_cast<size_t>(i)].neighbors))
      throw std::invalid_argument("reported neighbors must be a subset of the true neighbor set");
  }
}

ReducedInstance reduce_instance(const MultiAuctionInstance& instance,
                                const MultiReportVector& reports) {
  const int n = instance.buyer_count();
  const int m = instance.item_count;
  if (static_cast<int>(reports.entries.size()) != n)
    throw std::invalid_argument("report vector needs one entry per buyer");

  ReducedInstance out;
  out.map.slots = m;
  out.instance.item_count = m;
  out.instance.profiles.resize(static_cast<size_t>(n) * static_cast<size_t>(m));
  out.reports.entries.resize(out.instance.profiles.size());

  for (AgentId j : instance.seller_neighbors)
    out.instance.seller_neighbors.push_back(out.map.reduced_id(j, 0));
  detail::sort_unique(out.instance.seller_neighbors);

  for (AgentId i = 0; i < n; ++i) {
    const MultiProfile& profile = instance.profiles[static_cast<size_t>(i)];
    check_descending(profile.valuations);
    const std::vector<double> true_values = padded(profile.valuations, m);

    const MultiReport& report = reports.entries[static_cast<size_t>(i)];
    std::vector<double> reported_values;
    if (!report.silent) {
      check_descending(report.valuations);
      reported_values = padded(report.valuations, m);
    }

    for (int j = 0; j < m; ++j) {
      const AgentId id = out.map.reduced_id(i, j);
      Profile& reduced_profile = out.instance.profiles[static_cast<size_t>(id)];
      reduced_profile.valuation = true_values[static_cast<size_t>(j)];
      if (j + 1 < m) reduced_profile.neighbors.push_back(out.map.reduced_id(i, j + 1));
      if (j + 1 == m) {
        for (AgentId k : profile.neighbors)
          reduced_profile.neighbors.push_back(out.map.reduced_id(k, 0));
      }
      detail::sort_unique(reduced_profile.neighbors);

      Report& reduced_report = out.reports.entries[static_cast<size_t>(id)];
      if (report.silent) {
        reduced_report = Report{0.0, {}, true};
        continue;
      }
      reduced_report.valuation = reported_values[static_cast<size_t>(j)];
      if (j + 1 < m) reduced_report.neighbors.push_back(out.map.reduced_id(i, j + 1));
      if (j + 1 == m) {
        for (AgentId k : report.neighbors)
          reduced_report.neighbors.push_back(out.map.reduced_id(k, 0));
      }
      detail::sort_unique(reduced_report.neighbors);
    }
  }
  return out;
}

MultiMetrics compute_multi_metrics(const MultiAuctionInstance& instance,
                                   const MultiOutcome& outcome) {
  const int n = instance.buyer_count();
  const int m = instance.item_count;
  if (outcome.slots != m || static_cast<int>(outcome.allocation.size()) != n * m)
    throw std::invalid_argument("outcome dimensions do not match the instance");

  MultiMetrics metrics;
  metrics.utilities.assign(static_cast<size_t>(n), 0.0);
  for (AgentId i = 0; i < n; ++i) {
    const std::vector<double> values = padded(instance.profiles[static_cast<size_t>(i)].valuations, m);
    for (int j = 0; j < m; ++j) {
      const double v = values[static_cast<size_t>(j)];
      const double allocated = outcome.alloc(i, j) ? 1.0 : 0.0;
      metrics.utilities[static_cast<size_t>(i)] += v * allocated - outcome.pay(i, j);
      metrics.social_welfare += v * allocated;
      metrics.revenue += outcome.pay(i, j);
    }
  }
  metrics.sw_opt = multi_optimal_welfare(instance);
  return metrics;
}

double multi_optimal_welfare(const MultiAuctionInstance& instance) {
  std::vector<double> values;
  for (const MultiProfile& p : instance.profiles) {
    const std::vector<double> slots = padded(p.valuations, instance.item_count);
    values.insert(values.end(), slots.begin(), slots.end());
  }
  std::sort(values.begin(), values.end(), std::greater<double>());
  double sum = 0.0;
  const int k = std::min<int>(instance.item_count, static_cast<int>(values.size()));
  for (int i = 0; i < k; ++i) sum += values[static_cast<size_t>(i)];
  return sum;
}

namespace {

// Priority of a reduced node i_j is the priority of the owning buyer i,
// evaluated on the original multi-demand graph and shared across the chain.
class OwnerScorer : public PriorityScorer {
 public:
  OwnerScorer(StrategyKind kind, std::uint64_t seed, const ProfileGraph& reduced_graph,
              std::shared_ptr<const ProfileGraph> original_graph, ReductionMap map)
      : kind_(kind), original_(std::move(original_graph)), map_(map) {
    (void)reduced_graph;
    switch (kind_) {
      case StrategyKind::kDistance:
      case StrategyKind::kDepth:
        distances_ = seller_distances(*original_);
        break;
      case StrategyKind::kRandom: {
        Rng rng(seed);
        random_scores_.resize(static_cast<size_t>(original_->buyer_count()));
        for (double& s : random_scores_) s = rng.next_double();
        break;
      }
      default:
        break;
    }
  }

  double score(AgentId reduced_agent, const ExplorationState& state) const override {
    const AgentId i = map_.owner(reduced_agent);
    switch (kind_) {
      case StrategyKind::kDegree:
        return static_cast<double>(original_->neighbors(i).size());
      case StrategyKind::kDistance:
        return -static_cast<double>(distances_[static_cast<size_t>(i)]);
      case StrategyKind::kDepth:
        return static_cast<double>(distances_[static_cast<size_t>(i)]);
      case StrategyKind::kNewAgent: {
        // Neighbours k of i not yet explored; k is explored iff its chain
        // entry k_1 is in A.
        int fresh = 0;
        for (AgentId k : original_->neighbors(i)) {
          if (!state.explored(map_.reduced_id(k, 0))) ++fresh;
        }
        return static_cast<double>(fresh);
      }
      case StrategyKind::kRandom:
        return random_scores_[static_cast<size_t>(i)];
    }
    throw std::logic_error("unknown strategy kind");
  }

 private:
  StrategyKind kind_;
  std::shared_ptr<const ProfileGraph> original_;
  ReductionMap map_;
  std::vector<int> distances_;
  std::vector<double> random_scores_;
};

class OwnerStrategy : public PriorityStrategy {
 public:
  OwnerStrategy(StrategyKind kind, std::uint64_t seed,
                std::shared_ptr<const ProfileGraph> original_graph, ReductionMap map)
      : kind_(kind), seed_(seed), original_(std::move(original_graph)), map_(map) {}

  std::unique_ptr<PriorityScorer> begin_run(const ProfileGraph& reduced_graph) const override {
    return std::make_unique<OwnerScorer>(kind_, seed_, reduced_graph, original_, map_);
  }
  std::string_view name() const override { return strategy_name(kind_); }

 private:
  StrategyKind kind_;
  std::uint64_t seed_;
  std::shared_ptr<const ProfileGraph> original_;
  ReductionMap map_;
};

// Original-shape profile graph: same nodes/edges as the multi-demand network,
// top slot as the valuation (only adjacency and reachability are consumed).
std::shared_ptr<const ProfileGraph> original_shape_graph(const MultiAuctionInstance& instance,
                                                         const MultiReportVector& reports) {
  AuctionInstance shape;
  shape.item_count = 1;
  shape.seller_neighbors = instance.seller_neighbors;
  shape.profiles.resize(instance.profiles.size());
  for (size_t i = 0; i < instance.profiles.size(); ++i) {
    shape.profiles[i].valuation =
        instance.profiles[i].valuations.empty() ? 0.0 : instance.profiles[i].valuations.front();
    shape.profiles[i].neighbors = instance.profiles[i].neighbors;
  }
  ReportVector shape_reports;
  shape_reports.entries.resize(reports.entries.size());
  for (size_t i = 0; i < reports.entries.size(); ++i) {
    const MultiReport& r = reports.entries[i];
    if (r.silent) {
      shape_reports.entries[i] = Report{0.0, {}, true};
    } else {
      shape_reports.entries[i] =
          Report{r.valuations.empty() ? 0.0 : r.valuations.front(), r.neighbors, false};
    }
  }
  return std::make_shared<ProfileGraph>(shape, shape_reports);
}

MultiOutcome lift_outcome(const Outcome& reduced, const ReductionMap& map, int n) {
  MultiOutcome out;
  out.slots = map.slots;
  out.allocation.assign(static_cast<size_t>(n) * static_cast<size_t>(map.slots), 0);
  out.payment.assign(out.allocation.size(), 0.0);
  for (size_t id = 0; id < reduced.allocation.size(); ++id) {
    out.allocation[id] = reduced.allocation[id];
    out.payment[id] = reduced.payment[id];
  }
  return out;
}

template <typename Runner>
MultiRunResult run_reduced(const MultiAuctionInstance& instance, const MultiReportVector& reports,
                           StrategyKind strategy, std::uint64_t seed, Runner&& runner) {
  MultiRunResult result;
  result.reduced = reduce_instance(instance, reports);
  OwnerStrategy owner_strategy(strategy, seed, original_shape_graph(instance, reports),
                               result.reduced.map);
  runner(result, owner_strategy);
  result.outcome = lift_outcome(result.reduced_result.outcome, result.reduced.map,
                                instance.buyer_count());
  return result;
}

}  // namespace

MultiRunResult run_mudan_m(const MultiAuctionInstance& instance, const MultiReportVector& reports,
                           StrategyKind strategy, std::uint64_t seed) {
  return run_reduced(instance, reports, strategy, seed,
                     [&](MultiRunResult& result, const PriorityStrategy& owner_strategy) {
                       MudanResult r = run_mudan(result.reduced.instance, result.reduced.reports,
                                                 owner_strategy);
                       result.reduced_result =
                           MechanismResult{std::move(r.outcome), r.last_winner};
                       result.reduced_trace = std::move(r.trace);
                     });
}

MultiRunResult run_mudar_m(const MultiAuctionInstance& instance, const MultiReportVector& reports,
                           StrategyKind strategy, std::uint64_t seed) {
  return run_reduced(instance, reports, strategy, seed,
                     [&](MultiRunResult& result, const PriorityStrategy& owner_strategy) {
                       MudarResult r = run_mudar(result.reduced.instance, result.reduced.reports,
                                                 owner_strategy);
                       result.reduced_result = MechanismResult{std::move(r.outcome), std::nullopt};
                       result.reduced_trace = std::move(r.trace);
                     });
}

}  // namespace muda
