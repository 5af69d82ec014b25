#pragma once

#include <span>

#include "muda/mechanism.hpp"
#include "muda/multidemand.hpp"
#include "muda/rng.hpp"

namespace muda {

// kMuBounded checks every deviation with v'' < v_i or v'' >= mu, the literal
// mu-IC quantification. Its closed boundary is not actually safe: bidding
// exactly mu can tie the mu-valued buyer, lose the ascending-id tie-break for
// the top-m prefix, and profit through the reward channel, for any
// deterministic tie order. kMuBoundedOpen checks the provable claim
// (v'' < v_i or v'' > mu); the suites run both and report the v'' == mu
// boundary separately.
enum class DeviationMode { kFull, kMuBounded, kMuBoundedOpen };

// Best misreport found for one agent, with the replayable witness.
struct DeviationReport {
  AgentId agent = 0;
  double truthful_utility = 0.0;
  double deviating_utility = 0.0;
  double best_valuation = 0.0;
  std::vector<AgentId> best_neighbors;
  long long deviations_tried = 0;
  bool violation = false;  // deviating_utility > truthful_utility + tolerance
};

// Candidate reported valuations for the deviation search: 0, the agent's true
// value, every other agent's reported value, and each of those +- one step.
// Mechanism outcomes are piecewise constant in one agent's report between the
// other reports, so with step <= 1/2 this grid is outcome-exhaustive on
// integer instances.
std::vector<double> make_value_grid(const AuctionInstance& instance, const ReportVector& reports,
                                    AgentId agent, double step = 0.5);

// Enumerates (valuation from the grid) x (reported neighbour subset of the
// true set), reruns the mechanism with everyone else fixed at base_reports
// (profile-graph construction applies the silencing footnote), and returns
// the argmax of the agent's true-valuation utility. kMuBounded restricts the
// sweep to v'' < v_i or v'' >= mu. Subset enumeration is exhaustive up to
// max_subset_bits neighbours and falls back to seeded sampling beyond.
DeviationReport best_deviation(const Mechanism& mechanism, const AuctionInstance& instance,
                               const ReportVector& base_reports, AgentId agent,
                               std::span<const double> grid,
                               DeviationMode mode = DeviationMode::kFull, double mu = 0.0,
                               double tolerance = kMoneyTol, int max_subset_bits = 12,
                               std::uint64_t sample_seed = 0);

struct StaticChecks {
  bool ir = false;         // truthful utilities all >= 0
  bool nd = false;         // revenue >= 0
  bool nw = false;         // allocated = min(m, reachable)
  bool efficient = false;  // SW == sw_opt
  double min_payment = 0.0;
  double social_welfare = 0.0;
  double sw_opt = 0.0;
  double revenue = 0.0;
  // SW / SW_wopt; only meaningful for mechanisms that report w* (MUDAN family).
  double weak_eff_ratio = 0.0;
  double sw_wopt = 0.0;
  bool has_weak_eff = false;
};

StaticChecks check_static(const Mechanism& mechanism, const AuctionInstance& instance,
                          const ReportVector& reports, double tolerance = kMoneyTol);

// Random seller-connected instance: n ~ U[1, n_max], m ~ U[1, m_max], every
// buyer wired to an already-connected agent (or the seller), extra edges with
// probability extra_edge_prob, integer valuations in [0, ceiling].
AuctionInstance random_instance(int n_max, int m_max, int value_ceiling, Rng& rng,
                                double extra_edge_prob = 0.2);
MultiAuctionInstance random_multi_instance(int n_max, int m_max, int value_ceiling, Rng& rng,
                                           double extra_edge_prob = 0.2);

// Random feasible opponent misreports (valuations in [0, ceiling], neighbour
// subsets of the true sets); `agent` keeps her truthful report.
ReportVector random_opponent_reports(const AuctionInstance& instance, AgentId agent,
                                     int value_ceiling, Rng& rng);

// Multi-demand deviation search: the deviation is one buyer's whole vector
// plus a neighbour subset (slot-wise deviations composed jointly). Vectors
// are non-increasing tuples over the per-slot grid; beyond joint_cap the
// sweep keeps every single-slot edit of the truthful vector and a seeded
// sample of full vectors. kMuBounded keeps the verbatim per-slot form: a
// vector is in scope iff some slot j has v''_j < v_j, or v''_j >= mu with
// mu >= v_j. That form is falsifiable (a qualifying slot can ride along with
// another slot's in-band overbid, the channel mu-IC permits to profit);
// kMuBoundedOpen checks the provable form, where every slot must be an
// underbid or a strictly-above-mu overbid.
struct MultiDeviationReport {
  AgentId agent = 0;
  double truthful_utility = 0.0;
  double deviating_utility = 0.0;
  std::vector<double> best_valuations;
  std::vector<AgentId> best_neighbors;
  long long deviations_tried = 0;
  bool violation = false;
};

MultiDeviationReport best_multi_deviation(const MultiMechanism& mechanism,
                                          const MultiAuctionInstance& instance,
                                          const MultiReportVector& base_reports, AgentId agent,
                                          DeviationMode mode = DeviationMode::kFull, double mu = 0.0,
                                          double tolerance = kMoneyTol, long long joint_cap = 40000,
                                          std::uint64_t sample_seed = 0);

// mu for the mu-IC checks: the m-th highest true valuation (slot value in the
// multi-demand case); 0 when fewer than m values exist.
double mu_threshold(const AuctionInstance& instance);
double mu_threshold(const MultiAuctionInstance& instance);

}  // namespace muda
