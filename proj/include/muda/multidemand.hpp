#pragma once

#include <memory>

#include "muda/explorer.hpp"
#include "muda/mechanism.hpp"
#include "muda/strategies.hpp"

namespace muda {

// Multi-demand profile: a non-increasing valuation vector (one slot per item,
// zero-padded to length m) plus a neighbour set.
struct MultiProfile {
  std::vector<double> valuations;  // descending, size == item_count
  std::vector<AgentId> neighbors;  // sorted ascending
};

struct MultiAuctionInstance {
  int item_count = 1;  // m: items for sale and slots per buyer
  std::vector<AgentId> seller_neighbors;
  std::vector<MultiProfile> profiles;

  int buyer_count() const { return static_cast<int>(profiles.size()); }
  void validate() const;
};

struct MultiReport {
  std::vector<double> valuations;
  std::vector<AgentId> neighbors;
  bool silent = false;
};

struct MultiReportVector {
  std::vector<MultiReport> entries;

  static MultiReportVector truthful(const MultiAuctionInstance& instance);
};

void validate_multi_reports(const MultiAuctionInstance& instance, const MultiReportVector& reports);

// (buyer, slot) <-> reduced AgentId bijection. Slot j of buyer i becomes the
// j-th node of i's chain.
struct ReductionMap {
  int slots = 1;  // m

  AgentId reduced_id(AgentId buyer, int slot) const { return buyer * slots + slot; }
  AgentId owner(AgentId reduced) const { return reduced / slots; }
  int slot(AgentId reduced) const { return reduced % slots; }
};

struct ReducedInstance {
  AuctionInstance instance;
  ReportVector reports;
  ReductionMap map;
};

// Chain-gadget reduction: buyer i becomes m single-demand buyers i_1..i_m in
// a chain; s->i_1 mirrors s->i and i_m->j_1 mirrors i->j. Valuation of i_j is
// slot j of i's vector. Throws on non-monotone vectors.
ReducedInstance reduce_instance(const MultiAuctionInstance& instance,
                                const MultiReportVector& reports);

// n x m allocation bits and payments, indexed buyer-major (i * m + j).
struct MultiOutcome {
  int slots = 1;
  std::vector<std::uint8_t> allocation;
  std::vector<double> payment;

  std::uint8_t& alloc(AgentId i, int j) { return allocation[static_cast<size_t>(i * slots + j)]; }
  double& pay(AgentId i, int j) { return payment[static_cast<size_t>(i * slots + j)]; }
  std::uint8_t alloc(AgentId i, int j) const { return allocation[static_cast<size_t>(i * slots + j)]; }
  double pay(AgentId i, int j) const { return payment[static_cast<size_t>(i * slots + j)]; }
  int allocated_count() const {
    int c = 0;
    for (std::uint8_t b : allocation) c += b;
    return c;
  }
};

struct MultiMetrics {
  std::vector<double> utilities;  // per buyer, over true slot values
  double social_welfare = 0.0;
  double revenue = 0.0;
  double sw_opt = 0.0;  // top-m among all n*m true slot values
};

MultiMetrics compute_multi_metrics(const MultiAuctionInstance& instance, const MultiOutcome& outcome);
double multi_optimal_welfare(const MultiAuctionInstance& instance);

struct MultiRunResult {
  MultiOutcome outcome;
  ReducedInstance reduced;
  MechanismResult reduced_result;   // the inner single-demand run
  ExplorationTrace reduced_trace;
};

MultiRunResult run_mudan_m(const MultiAuctionInstance& instance, const MultiReportVector& reports,
                           StrategyKind strategy, std::uint64_t seed = 0);
MultiRunResult run_mudar_m(const MultiAuctionInstance& instance, const MultiReportVector& reports,
                           StrategyKind strategy, std::uint64_t seed = 0);

// Uniform interface for the multi-demand oracle.
class MultiMechanism {
 public:
  virtual ~MultiMechanism() = default;
  virtual MultiOutcome run(const MultiAuctionInstance& instance,
                           const MultiReportVector& reports) const = 0;
  virtual std::string_view name() const = 0;
};

class MudanMMechanism : public MultiMechanism {
 public:
  explicit MudanMMechanism(StrategyKind kind = StrategyKind::kDegree, std::uint64_t seed = 0)
      : kind_(kind), seed_(seed) {}
  MultiOutcome run(const MultiAuctionInstance& instance,
                   const MultiReportVector& reports) const override {
    return run_mudan_m(instance, reports, kind_, seed_).outcome;
  }
  std::string_view name() const override { return "mudan-m"; }

 private:
  StrategyKind kind_;
  std::uint64_t seed_;
};

class MudarMMechanism : public MultiMechanism {
 public:
  explicit MudarMMechanism(StrategyKind kind = StrategyKind::kDegree, std::uint64_t seed = 0)
      : kind_(kind), seed_(seed) {}
  MultiOutcome run(const MultiAuctionInstance& instance,
                   const MultiReportVector& reports) const override {
    return run_mudar_m(instance, reports, kind_, seed_).outcome;
  }
  std::string_view name() const override { return "mudar-m"; }

 private:
  StrategyKind kind_;
  std::uint64_t seed_;
};

}  // namespace muda
