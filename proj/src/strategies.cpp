#include "muda/strategies.hpp"

#include <string>

#include "muda/rng.hpp"

namespace muda {

namespace {

class DegreeScorer : public PriorityScorer {
 public:
  explicit DegreeScorer(const ProfileGraph& graph) : graph_(&graph) {}
  double score(AgentId agent, const ExplorationState&) const override {
    return static_cast<double>(graph_->neighbors(agent).size());
  }

 private:
  const ProfileGraph* graph_;
};

// Distances are frozen at run start; they would be ill-defined for agents that
// joined the explored set mid-run otherwise.
class HopScorer : public PriorityScorer {
 public:
  HopScorer(const ProfileGraph& graph, double sign)
      : distances_(seller_distances(graph)), sign_(sign) {}
  double score(AgentId agent, const ExplorationState&) const override {
    return sign_ * static_cast<double>(distances_[static_cast<size_t>(agent)]);
  }

 private:
  std::vector<int> distances_;
  double sign_;
};

class NewAgentScorer : public PriorityScorer {
 public:
  explicit NewAgentScorer(const ProfileGraph& graph) : graph_(&graph) {}
  double score(AgentId agent, const ExplorationState& state) const override {
    int fresh = 0;
    for (AgentId j : graph_->neighbors(agent)) {
      if (!state.explored(j)) ++fresh;
    }
    return static_cast<double>(fresh);
  }

 private:
  const ProfileGraph* graph_;
};

class RandomScorer : public PriorityScorer {
 public:
  RandomScorer(const ProfileGraph& graph, std::uint64_t seed) {
    scores_.resize(static_cast<size_t>(graph.buyer_count()));
    Rng rng(seed);
    for (double& s : scores_) s = rng.next_double();
  }
  double score(AgentId agent, const ExplorationState&) const override {
    return scores_[static_cast<size_t>(agent)];
  }

 private:
  std::vector<double> scores_;
};

class BasicStrategy : public PriorityStrategy {
 public:
  BasicStrategy(StrategyKind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}

  std::unique_ptr<PriorityScorer> begin_run(const ProfileGraph& graph) const override {
    switch (kind_) {
      case StrategyKind::kDegree:
        return std::make_unique<DegreeScorer>(graph);
      case StrategyKind::kDistance:
        return std::make_unique<HopScorer>(graph, -1.0);
      case StrategyKind::kDepth:
        return std::make_unique<HopScorer>(graph, 1.0);
      case StrategyKind::kNewAgent:
        return std::make_unique<NewAgentScorer>(graph);
      case StrategyKind::kRandom:
        return std::make_unique<RandomScorer>(graph, seed_);
    }
    throw std::logic_error("unknown strategy kind");
  }

  std::string_view name() const override { return strategy_name(kind_); }

 private:
  StrategyKind kind_;
  std::uint64_t seed_;
};

}  // namespace

std::unique_ptr<PriorityStrategy> make_strategy(StrategyKind kind, std::uint64_t seed) {
  return std::make_unique<BasicStrategy>(kind, seed);
}

StrategyKind strategy_from_name(std::string_view name) {
  if (name == "degree") return StrategyKind::kDegree;
  if (name == "distance") return StrategyKind::kDistance;
  if (name == "depth") return StrategyKind::kDepth;
  if (name == "new-agent" || name == "new_agent") return StrategyKind::kNewAgent;
  if (name == "random") return StrategyKind::kRandom;
  throw std::invalid_argument("unknown strategy: " + std::string(name));
}

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kDegree: return "degree";
    case StrategyKind::kDistance: return "distance";
    case StrategyKind::kDepth: return "depth";
    case StrategyKind::kNewAgent: return "new-agent";
    case StrategyKind::kRandom: return "random";
  }
  return "unknown";
}

}  // namespace muda
