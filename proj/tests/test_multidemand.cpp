#include "doctest.h"

#include <set>

#include "fixtures.hpp"
#include "muda/multidemand.hpp"
#include "muda/oracle.hpp"

using namespace muda;
using namespace muda::testing;

namespace {

MultiAuctionInstance two_buyer_example() {
  // n=2, m=2, s -> buyer0, buyer0 -> buyer1, vectors (5,3) and (4,0).
  MultiAuctionInstance inst;
  inst.item_count = 2;
  inst.seller_neighbors = {0};
  inst.profiles = {{{5.0, 3.0}, {1}}, {{4.0, 0.0}, {}}};
  inst.validate();
  return inst;
}

}  // namespace

TEST_CASE("reduction of the two-buyer example") {
  MultiAuctionInstance inst = two_buyer_example();
  ReducedInstance reduced = reduce_instance(inst, MultiReportVector::truthful(inst));

  CHECK(reduced.instance.buyer_count() == 4);
  CHECK(reduced.instance.seller_neighbors == std::vector<AgentId>{0});          // s -> 0_1
  CHECK(reduced.instance.profiles[0].neighbors == std::vector<AgentId>{1});     // 0_1 -> 0_2
  CHECK(reduced.instance.profiles[1].neighbors == std::vector<AgentId>{2});     // 0_2 -> 1_1
  CHECK(reduced.instance.profiles[2].neighbors == std::vector<AgentId>{3});     // 1_1 -> 1_2
  CHECK(reduced.instance.profiles[3].neighbors.empty());
  CHECK(reduced.instance.profiles[0].valuation == 5.0);
  CHECK(reduced.instance.profiles[1].valuation == 3.0);
  CHECK(reduced.instance.profiles[2].valuation == 4.0);
  CHECK(reduced.instance.profiles[3].valuation == 0.0);
  CHECK(reduced.map.reduced_id(1, 0) == 2);
  CHECK(reduced.map.owner(3) == 1);
  CHECK(reduced.map.slot(3) == 1);
}

TEST_CASE("m=1 reduction is the identity up to renaming") {
  MultiAuctionInstance inst;
  inst.item_count = 1;
  inst.seller_neighbors = {0};
  inst.profiles = {{{2.0}, {1}}, {{7.0}, {}}};
  ReducedInstance reduced = reduce_instance(inst, MultiReportVector::truthful(inst));
  CHECK(reduced.instance.buyer_count() == 2);
  CHECK(reduced.instance.seller_neighbors == std::vector<AgentId>{0});
  CHECK(reduced.instance.profiles[0].neighbors == std::vector<AgentId>{1});
  CHECK(reduced.instance.profiles[0].valuation == 2.0);
  CHECK(reduced.instance.profiles[1].valuation == 7.0);
}

TEST_CASE("non-monotone vectors are rejected") {
  MultiAuctionInstance inst;
  inst.item_count = 2;
  inst.seller_neighbors = {0};
  inst.profiles = {{{1.0, 4.0}, {}}};
  CHECK_THROWS_AS(reduce_instance(inst, MultiReportVector::truthful(inst)), std::invalid_argument);
}

TEST_CASE("reduced edge structure follows the three rules on random instances") {
  Rng rng(701);
  for (int k = 0; k < 40; ++k) {
    MultiAuctionInstance inst = random_multi_instance(5, 3, 9, rng);
    ReducedInstance reduced = reduce_instance(inst, MultiReportVector::truthful(inst));
    const int m = inst.item_count;

    std::set<std::pair<AgentId, AgentId>> expected;
    for (AgentId i = 0; i < inst.buyer_count(); ++i) {
      for (int j = 0; j + 1 < m; ++j)
        expected.emplace(reduced.map.reduced_id(i, j), reduced.map.reduced_id(i, j + 1));
      for (AgentId t : inst.profiles[static_cast<size_t>(i)].neighbors)
        expected.emplace(reduced.map.reduced_id(i, m - 1), reduced.map.reduced_id(t, 0));
    }
    std::set<std::pair<AgentId, AgentId>> actual;
    for (AgentId u = 0; u < reduced.instance.buyer_count(); ++u) {
      for (AgentId v : reduced.instance.profiles[static_cast<size_t>(u)].neighbors)
        actual.emplace(u, v);
    }
    CHECK(actual == expected);

    std::set<AgentId> expected_seed;
    for (AgentId j : inst.seller_neighbors) expected_seed.insert(reduced.map.reduced_id(j, 0));
    CHECK(std::set<AgentId>(reduced.instance.seller_neighbors.begin(),
                            reduced.instance.seller_neighbors.end()) == expected_seed);
  }
}

TEST_CASE("the reduction conserves utilities, welfare, revenue, and counts") {
  Rng rng(702);
  for (int k = 0; k < 60; ++k) {
    MultiAuctionInstance inst = random_multi_instance(5, 3, 9, rng);
    MultiReportVector truthful = MultiReportVector::truthful(inst);
    for (bool mudar : {false, true}) {
      MultiRunResult run = mudar ? run_mudar_m(inst, truthful, StrategyKind::kDegree)
                                 : run_mudan_m(inst, truthful, StrategyKind::kDegree);
      const MultiMetrics lifted = compute_multi_metrics(inst, run.outcome);
      const Metrics reduced =
          compute_metrics(run.reduced.instance, run.reduced_result.outcome);

      CHECK(lifted.social_welfare == reduced.social_welfare);
      CHECK(lifted.revenue == reduced.revenue);
      CHECK(lifted.sw_opt == reduced.sw_opt);
      CHECK(run.outcome.allocated_count() == run.reduced_result.outcome.allocated_count());
      for (AgentId i = 0; i < inst.buyer_count(); ++i) {
        double chain_utility = 0.0;
        for (int j = 0; j < inst.item_count; ++j)
          chain_utility +=
              reduced.utilities[static_cast<size_t>(run.reduced.map.reduced_id(i, j))];
        CHECK(lifted.utilities[static_cast<size_t>(i)] == chain_utility);
      }
    }
  }
}

TEST_CASE("a seller-adjacent buyer holding the top slots takes every item") {
  MultiAuctionInstance inst;
  inst.item_count = 3;
  inst.seller_neighbors = {0};
  inst.profiles = {{{9.0, 8.0, 7.0}, {1}}, {{2.0, 1.0, 0.0}, {}}};
  MultiRunResult run = run_mudan_m(inst, MultiReportVector::truthful(inst), StrategyKind::kDegree);
  for (int j = 0; j < 3; ++j) CHECK(run.outcome.alloc(0, j) == 1);
  CHECK(run.outcome.allocated_count() == 3);
}

TEST_CASE("all-zero vectors allocate everything at zero payments") {
  MultiAuctionInstance inst;
  inst.item_count = 2;
  inst.seller_neighbors = {0, 1};
  inst.profiles = {{{0.0, 0.0}, {}}, {{0.0, 0.0}, {}}};
  MultiRunResult run = run_mudan_m(inst, MultiReportVector::truthful(inst), StrategyKind::kDegree);
  CHECK(run.outcome.allocated_count() == 2);
  for (double p : run.outcome.payment) CHECK(p == 0.0);
}

TEST_CASE("mudar-m with a single buyer hands over m items for free") {
  MultiAuctionInstance inst;
  inst.item_count = 3;
  inst.seller_neighbors = {0};
  inst.profiles = {{{5.0, 4.0, 1.0}, {}}};
  MultiRunResult run = run_mudar_m(inst, MultiReportVector::truthful(inst), StrategyKind::kDegree);
  CHECK(run.outcome.allocated_count() == 3);
  for (double p : run.outcome.payment) CHECK(p == 0.0);
}

TEST_CASE("mudar-m welfare equals the brute-force top-m slot sum") {
  Rng rng(703);
  for (int k = 0; k < 60; ++k) {
    MultiAuctionInstance inst = random_multi_instance(3, 2, 9, rng);
    MultiRunResult run = run_mudar_m(inst, MultiReportVector::truthful(inst), StrategyKind::kDegree);
    // Independent oracle: flatten all slot values and take the top m.
    std::vector<double> values;
    for (const MultiProfile& p : inst.profiles)
      for (double v : p.valuations) values.push_back(v);
    std::sort(values.begin(), values.end(), std::greater<double>());
    double expected = 0.0;
    for (int j = 0; j < inst.item_count && j < static_cast<int>(values.size()); ++j)
      expected += values[static_cast<size_t>(j)];
    CHECK(compute_multi_metrics(inst, run.outcome).social_welfare == expected);
  }
}

TEST_CASE("chain admission: at most one slot per buyer is ever a live candidate") {
  Rng rng(704);
  for (int k = 0; k < 60; ++k) {
    MultiAuctionInstance inst = random_multi_instance(5, 3, 9, rng);
    MultiRunResult run = run_mudan_m(inst, MultiReportVector::truthful(inst), StrategyKind::kDegree);

    std::set<AgentId> winners_so_far;
    for (const IterationRecord& rec : run.reduced_trace.iterations) {
      std::set<AgentId> owners;
      for (AgentId id : rec.potential) {
        if (winners_so_far.count(id)) continue;
        CHECK(owners.insert(run.reduced.map.owner(id)).second);
      }
      if (rec.winner) winners_so_far.insert(*rec.winner);
    }
  }
}

TEST_CASE("consecutive wins: once i_j wins, i_{j+1} wins or never becomes a candidate") {
  Rng rng(705);
  for (int k = 0; k < 60; ++k) {
    MultiAuctionInstance inst = random_multi_instance(5, 3, 9, rng);
    MultiRunResult run = run_mudan_m(inst, MultiReportVector::truthful(inst), StrategyKind::kDegree);
    const int m = inst.item_count;

    std::set<AgentId> winners;
    std::set<AgentId> ever_candidate;
    for (const IterationRecord& rec : run.reduced_trace.iterations) {
      for (AgentId id : rec.potential) ever_candidate.insert(id);
      if (rec.winner) winners.insert(*rec.winner);
    }
    for (AgentId id : winners) {
      const int j = run.reduced.map.slot(id);
      if (j + 1 >= m) continue;
      const AgentId next = id + 1;
      CHECK((winners.count(next) || !ever_candidate.count(next)));
    }
  }
}

TEST_CASE("per-slot mu scope leaks in-band overbids; the vector form does not") {
  // n=3, m=2, slot values {9,4}, {5,1}, {8,2}: mu = 8. Buyer 1 can deviate to
  // (7.5, 0.5): the slot-2 underbid satisfies the verbatim per-slot scope
  // while the slot-1 overbid sits inside (5, 8], the band mu-IC permits to
  // profit, and her reward grows from 5 to 7.5. Requiring every slot to be an
  // underbid or a strictly-above-mu overbid closes the leak.
  MultiAuctionInstance inst;
  inst.item_count = 2;
  inst.seller_neighbors = {0, 1};
  inst.profiles = {{{9.0, 4.0}, {}}, {{5.0, 1.0}, {2}}, {{8.0, 2.0}, {0}}};
  inst.validate();
  MultiReportVector truthful = MultiReportVector::truthful(inst);
  MudarMMechanism mechanism;
  const double mu = mu_threshold(inst);
  CHECK(mu == 8.0);

  MultiDeviationReport verbatim =
      best_multi_deviation(mechanism, inst, truthful, 1, DeviationMode::kMuBounded, mu);
  CHECK(verbatim.violation);
  REQUIRE(verbatim.best_valuations.size() == 2);
  CHECK(verbatim.best_valuations[0] > 5.0);
  CHECK(verbatim.best_valuations[0] <= mu);

  MultiDeviationReport vector_form =
      best_multi_deviation(mechanism, inst, truthful, 1, DeviationMode::kMuBoundedOpen, mu);
  CHECK(!vector_form.violation);
}

TEST_CASE("mudar-m reward inflation through joint above-mu overbids") {
  // n=2, m=2, s -> 0 -> 1; vectors (3,0) and (9,5); mu = 5. Buyer 0 reports
  // (9.5, 8.5): both slots sit strictly above mu, yet her slot-2 node is
  // crowded out of the global top-2 by her own slot-1 bid plus buyer 1's 9,
  // becomes a reward winner with tentative payment 0 (recorded before buyer 1
  // was explored), and collects 8.5. Utility rises from 3 to 11.5 and scales
  // with the report, so the bounded-truthfulness claim fails outright in the
  // multi-demand reduction. This pins the behaviour; the acceptance suite
  // reports it as a falsified criterion.
  MultiAuctionInstance inst;
  inst.item_count = 2;
  inst.seller_neighbors = {0};
  inst.profiles = {{{3.0, 0.0}, {1}}, {{9.0, 5.0}, {}}};
  inst.validate();
  MultiReportVector truthful = MultiReportVector::truthful(inst);
  const double mu = mu_threshold(inst);
  CHECK(mu == 5.0);

  MultiReportVector deviated = truthful;
  deviated.entries[0].valuations = {9.5, 8.5};
  MultiRunResult honest = run_mudar_m(inst, truthful, StrategyKind::kDegree);
  MultiRunResult exploited = run_mudar_m(inst, deviated, StrategyKind::kDegree);
  const MultiMetrics honest_metrics = compute_multi_metrics(inst, honest.outcome);
  CHECK(honest_metrics.utilities[0] == 3.0);

  // True-value utility of buyer 0 under the deviation.
  double utility = 0.0;
  const std::vector<double> true_values = {3.0, 0.0};
  for (int j = 0; j < 2; ++j)
    utility += true_values[static_cast<size_t>(j)] * (exploited.outcome.alloc(0, j) ? 1.0 : 0.0) -
               exploited.outcome.pay(0, j);
  CHECK(utility == 11.5);

  MudarMMechanism mechanism;
  MultiDeviationReport report =
      best_multi_deviation(mechanism, inst, truthful, 0, DeviationMode::kMuBoundedOpen, mu);
  CHECK(report.violation);
  CHECK(report.deviating_utility >= 11.5);
}

TEST_CASE("validation flags bad multi reports") {
  MultiAuctionInstance inst = two_buyer_example();
  MultiReportVector reports = MultiReportVector::truthful(inst);
  reports.entries[1].neighbors = {0};  // not a subset of the true (empty) set
  CHECK_THROWS_AS(validate_multi_reports(inst, reports), std::invalid_argument);

  MultiReportVector ascending = MultiReportVector::truthful(inst);
  ascending.entries[0].valuations = {3.0, 5.0};
  CHECK_THROWS_AS(validate_multi_reports(inst, ascending), std::invalid_argument);
}
