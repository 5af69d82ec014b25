#include "doctest.h"

#include "fixtures.hpp"
#include "muda/mechanism.hpp"
#include "muda/mudan.hpp"
#include "muda/oracle.hpp"

using namespace muda;
using namespace muda::testing;

TEST_CASE("metrics on a hand-computed allocation") {
  // n=3, m=2, values (5,2,1); allocate buyers 0 and 1 at payments (2,1).
  AuctionInstance inst = star_instance({5.0, 2.0, 1.0}, 2);
  Outcome outcome(3);
  outcome.allocation = {1, 1, 0};
  outcome.payment = {2.0, 1.0, 0.0};
  Metrics m = compute_metrics(inst, outcome);
  CHECK(m.social_welfare == 7.0);
  CHECK(m.revenue == 3.0);
  CHECK(m.utilities == std::vector<double>{3.0, 1.0, 0.0});
  CHECK(m.sw_opt == 7.0);
}

TEST_CASE("all-zero outcome has zero metrics") {
  AuctionInstance inst = seven_buyer_instance();
  Metrics m = compute_metrics(inst, Outcome(7));
  CHECK(m.social_welfare == 0.0);
  CHECK(m.revenue == 0.0);
  for (double u : m.utilities) CHECK(u == 0.0);
}

TEST_CASE("metric dimensions are checked") {
  AuctionInstance inst = seven_buyer_instance();
  CHECK_THROWS_AS(compute_metrics(inst, Outcome(3)), std::invalid_argument);
}

TEST_CASE("sw_wopt on the chain follows MUDAN's last winner") {
  AuctionInstance inst = chain_instance({1.0, 2.0, 3.0}, 1);
  ReportVector truthful = ReportVector::truthful(inst);
  auto strategy = make_strategy(StrategyKind::kDegree);
  MudanResult r = run_mudan(inst, truthful, *strategy);
  CHECK(r.last_winner == 0);
  CHECK(weakly_optimal_welfare(inst, truthful, r.last_winner) == 1.0);
}

TEST_CASE("sw_wopt on a star equals sw_opt") {
  AuctionInstance inst = star_instance({4.0, 7.0, 2.0}, 2);
  ReportVector truthful = ReportVector::truthful(inst);
  for (AgentId w = 0; w < 3; ++w)
    CHECK(weakly_optimal_welfare(inst, truthful, w) == optimal_welfare(inst));
}

TEST_CASE("tightness-family closed forms for sw_wopt") {
  // SW_wopt = m*n^2 - (m-1)*tau once the last winner is i_m.
  for (auto [n, m] : {std::pair{10, 3}, std::pair{100, 3}}) {
    AuctionInstance inst = tightness_instance(n, m, 0.5);
    ReportVector truthful = ReportVector::truthful(inst);
    auto strategy = make_strategy(StrategyKind::kDegree);
    MudanResult r = run_mudan(inst, truthful, *strategy);
    CHECK(r.last_winner == m - 1);
    const double expected = m * static_cast<double>(n) * n - (m - 1) * 0.5;
    CHECK(weakly_optimal_welfare(inst, truthful, r.last_winner) == expected);
  }
  AuctionInstance small = tightness_instance(10, 3, 0.5);
  CHECK(weakly_optimal_welfare(small, ReportVector::truthful(small), 2) == 299.0);
}

TEST_CASE("sw_wopt requires a reachable w*") {
  AuctionInstance inst = seven_buyer_instance();
  CHECK_THROWS_AS(weakly_optimal_welfare(inst, seven_buyer_f_hides(), G), std::invalid_argument);
}

TEST_CASE("sw and sw_wopt never exceed sw_opt") {
  Rng rng(33);
  auto strategy = make_strategy(StrategyKind::kDegree);
  for (int k = 0; k < 100; ++k) {
    AuctionInstance inst = random_instance(7, 3, 9, rng);
    ReportVector truthful = ReportVector::truthful(inst);
    MudanResult r = run_mudan(inst, truthful, *strategy);
    Metrics m = compute_metrics(inst, r.outcome);
    CHECK(m.social_welfare <= m.sw_opt + kMoneyTol);
    CHECK(weakly_optimal_welfare(inst, truthful, r.last_winner) <= m.sw_opt + kMoneyTol);
  }
}

TEST_CASE("metrics scale linearly in the true valuations") {
  Rng rng(34);
  for (int k = 0; k < 50; ++k) {
    AuctionInstance inst = random_instance(6, 3, 9, rng);
    Outcome outcome(inst.buyer_count());
    for (AgentId i = 0; i < inst.buyer_count(); ++i) {
      outcome.allocation[static_cast<size_t>(i)] = rng.bernoulli(0.5) ? 1 : 0;
      outcome.payment[static_cast<size_t>(i)] = static_cast<double>(rng.uniform_int(-3, 5));
    }
    const double c = 3.0;
    AuctionInstance scaled = inst;
    for (Profile& p : scaled.profiles) p.valuation *= c;

    Metrics base = compute_metrics(inst, outcome);
    Metrics after = compute_metrics(scaled, outcome);
    CHECK(after.social_welfare == doctest::Approx(c * base.social_welfare));
    CHECK(after.sw_opt == doctest::Approx(c * base.sw_opt));
    CHECK(after.revenue == doctest::Approx(base.revenue));
    for (AgentId i = 0; i < inst.buyer_count(); ++i) {
      const double value_term =
          base.utilities[static_cast<size_t>(i)] + outcome.payment[static_cast<size_t>(i)];
      CHECK(after.utilities[static_cast<size_t>(i)] ==
            doctest::Approx(c * value_term - outcome.payment[static_cast<size_t>(i)]));
    }
  }
}
