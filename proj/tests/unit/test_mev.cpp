#include <doctest.h>

#include <blocklab/mev.hpp>

using namespace blocklab;

namespace {

MempoolTx user_tx(int id, Gas size, Value value, MevKind kind = MevKind::Plain,
                  std::optional<Value> opp = std::nullopt, bool visible = true) {
  MempoolTx tx;
  tx.tx_id = id;
  tx.sender_id = id;
  tx.size = size;
  tx.true_value = value;
  tx.kind = kind;
  tx.visible = visible;
  tx.embedded_opportunity = opp;
  return tx;
}

SearcherTx hunter(int id, int searcher, int source, MevAction action) {
  return SearcherTx{id, searcher, source, action, 21};
}

}  // namespace

TEST_SUITE("mev") {

TEST_CASE("transaction validation ties opportunities to kinds") {
  CHECK_NOTHROW(user_tx(1, 10, 5).validate());
  CHECK_NOTHROW(user_tx(1, 10, 50, MevKind::ArbitrageCapture, 50).validate());
  CHECK_NOTHROW(user_tx(1, 10, 30, MevKind::AnomalyCreator, 40).validate());
  CHECK_NOTHROW(user_tx(1, 10, 70, MevKind::VulnerableFunds, 70).validate());

  CHECK_THROWS_AS(user_tx(1, 10, 5, MevKind::Plain, 3).validate(), ConfigError);
  CHECK_THROWS_AS(user_tx(1, 10, 50, MevKind::ArbitrageCapture).validate(), ConfigError);
  // Diverted value must be exactly what the sender stood to realize.
  CHECK_THROWS_AS(user_tx(1, 10, 50, MevKind::ArbitrageCapture, 49).validate(), ConfigError);
  CHECK_THROWS_AS(user_tx(1, 10, 70, MevKind::VulnerableFunds, 71).validate(), ConfigError);
  CHECK_THROWS_AS(user_tx(1, 0, 5).validate(), ConfigError);
  CHECK_THROWS_AS(user_tx(1, 10, -5).validate(), ConfigError);
}

TEST_CASE("kind names round-trip") {
  for (auto kind : {MevKind::Plain, MevKind::ArbitrageCapture, MevKind::AnomalyCreator,
                    MevKind::VulnerableFunds})
    CHECK(mev_kind_from_name(mev_kind_name(kind)) == kind);
  CHECK_FALSE(mev_kind_from_name("bogus").has_value());
}

TEST_CASE("scanning sees only visible non-plain transactions") {
  std::vector<MempoolTx> pool{
      user_tx(1, 100, 9),
      user_tx(2, 100, 50, MevKind::ArbitrageCapture, 50),
      user_tx(3, 100, 30, MevKind::AnomalyCreator, 40),
      user_tx(4, 100, 70, MevKind::VulnerableFunds, 70, false),
  };
  auto opps = scan_mempool(pool);
  REQUIRE(opps.size() == 2);
  CHECK(opps[0].source_tx_id == 2);
  CHECK(opps[0].value == 50);
  CHECK(opps[0].action == MevAction::FrontRun);
  CHECK(opps[1].source_tx_id == 3);
  CHECK(opps[1].value == 40);
  CHECK(opps[1].action == MevAction::BackRun);

  pool[3].visible = true;
  CHECK(scan_mempool(pool).size() == 3);
  CHECK(scan_mempool(pool)[2].action == MevAction::FrontRun);
}

TEST_CASE("front-run before the source diverts its value") {
  std::vector<BlockTx> order{hunter(100, 9, 5, MevAction::FrontRun),
                             user_tx(5, 100, 50, MevKind::ArbitrageCapture, 50)};
  auto r = apply_extraction(order);
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].searcher_id == 9);
  CHECK(r.events[0].source_tx == 5);
  CHECK(r.events[0].captured_value == 50);
  CHECK(r.events[0].classification == MevClass::Diverting);
  CHECK(r.realized_user_values == std::vector<std::pair<int, Value>>{{5, 0}});
  CHECK(r.total_user_value == 0);
  CHECK(r.total_searcher_value == 50);
}

TEST_CASE("front-run after the source misses") {
  std::vector<BlockTx> order{user_tx(5, 100, 50, MevKind::ArbitrageCapture, 50),
                             hunter(100, 9, 5, MevAction::FrontRun)};
  auto r = apply_extraction(order);
  CHECK(r.events.empty());
  CHECK(r.total_user_value == 50);
  CHECK(r.total_searcher_value == 0);
}

TEST_CASE("back-run after the source mints new value") {
  std::vector<BlockTx> order{user_tx(7, 100, 30, MevKind::AnomalyCreator, 40),
                             hunter(101, 4, 7, MevAction::BackRun)};
  auto r = apply_extraction(order);
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].classification == MevClass::Creating);
  CHECK(r.events[0].captured_value == 40);
  CHECK(r.total_user_value == 30);  // the sender keeps everything
  CHECK(r.total_searcher_value == 40);

  std::vector<BlockTx> wrong{hunter(101, 4, 7, MevAction::BackRun),
                             user_tx(7, 100, 30, MevKind::AnomalyCreator, 40)};
  CHECK(apply_extraction(wrong).events.empty());
}

TEST_CASE("each opportunity pays out once, to the first claimant") {
  std::vector<BlockTx> order{hunter(100, 1, 5, MevAction::FrontRun),
                             hunter(101, 2, 5, MevAction::FrontRun),
                             user_tx(5, 100, 50, MevKind::ArbitrageCapture, 50)};
  auto r = apply_extraction(order);
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].searcher_id == 1);
  CHECK(r.total_searcher_value == 50);
}

TEST_CASE("a hunter without its prey realizes nothing") {
  std::vector<BlockTx> order{hunter(100, 9, 77, MevAction::FrontRun), user_tx(1, 50, 8)};
  auto r = apply_extraction(order);
  CHECK(r.events.empty());
  CHECK(r.total_user_value == 8);
}

TEST_CASE("vulnerable funds drain like arbitrage") {
  std::vector<BlockTx> order{hunter(100, 3, 8, MevAction::FrontRun),
                             user_tx(8, 50, 70, MevKind::VulnerableFunds, 70)};
  auto r = apply_extraction(order);
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].classification == MevClass::Diverting);
  CHECK(r.total_user_value == 0);
  CHECK(r.total_searcher_value == 70);
}

TEST_CASE("open outbidding escalates until the margin is gone") {
  PgaConfig cfg;
  cfg.searchers = 2;
  cfg.increment = 10;
  cfg.per_bid_gas_cost = 2;
  auto r = run_pga(100, cfg);
  REQUIRE(r.winner.has_value());
  CHECK(*r.winner == 0);
  CHECK(r.winning_fee == 90);
  CHECK(r.bids_placed == 9);
  CHECK(r.sunk_costs == std::vector<Value>{10, 8});
  CHECK(r.miner_revenue == 108);
}

TEST_CASE("a coarse increment ends the war after one bid") {
  PgaConfig cfg;
  cfg.searchers = 2;
  cfg.increment = 100;
  auto r = run_pga(100, cfg);
  REQUIRE(r.winner.has_value());
  CHECK(r.winning_fee == 100);
  CHECK(r.bids_placed == 1);
  CHECK(r.miner_revenue == 100);
}

TEST_CASE("a worthless opportunity draws no bids") {
  auto r = run_pga(0, PgaConfig{});
  CHECK_FALSE(r.winner.has_value());
  CHECK(r.winning_fee == 0);
  CHECK(r.bids_placed == 0);
  CHECK(r.miner_revenue == 0);
}

TEST_CASE("fine increments compete the whole rent away") {
  PgaConfig cfg;
  cfg.searchers = 2;
  cfg.increment = 1;
  for (Value v : {1, 2, 5, 17, 100, 999}) {
    auto r = run_pga(v, cfg);
    CHECK(r.miner_revenue >= v - 2);
    CHECK(r.miner_revenue <= v);
  }
}

TEST_CASE("losing bids still burn gas") {
  PgaConfig cfg;
  cfg.searchers = 3;
  cfg.increment = 1;
  cfg.per_bid_gas_cost = 3;
  auto r = run_pga(50, cfg);
  REQUIRE(r.winner.has_value());
  Value winner_value = 50 - r.winning_fee - r.sunk_costs[(std::size_t)*r.winner];
  CHECK(winner_value >= 0);
  bool some_loser_paid = false;
  for (int s = 0; s < cfg.searchers; ++s)
    if (s != *r.winner && r.sunk_costs[(std::size_t)s] > 0) some_loser_paid = true;
  CHECK(some_loser_paid);
  Value sunk_total = 0;
  for (Value c : r.sunk_costs) sunk_total += c;
  CHECK(r.miner_revenue == r.winning_fee + sunk_total);
}

TEST_CASE("pga configuration bounds") {
  PgaConfig lonely;
  lonely.searchers = 1;
  CHECK_THROWS_AS(run_pga(10, lonely), ConfigError);
  PgaConfig stuck;
  stuck.increment = 0;
  CHECK_THROWS_AS(run_pga(10, stuck), ConfigError);
}

TEST_CASE("private routing hides transactions and seals their fees") {
  std::vector<PricedTx> txs{{user_tx(2, 100, 50, MevKind::ArbitrageCapture, 50), 40}};
  std::vector<Bundle> bundles{{3, 9, {user_tx(10, 50, 5), user_tx(11, 70, 6)}, 55}};
  RelayConfig relay{1};
  auto profile = route_private(txs, bundles, relay, 400);

  CHECK(profile.capacity == 400);
  REQUIRE(profile.bids.size() == 2);
  CHECK(profile.bids[0].agent_id == 2);
  CHECK(profile.bids[0].amount == 40);
  CHECK(profile.bids[0].size == 100);
  CHECK(profile.bids[1].agent_id == kBundleAgentBase + 3);
  CHECK(profile.bids[1].amount == 55);
  CHECK(profile.bids[1].size == 120);

  CHECK_FALSE(txs[0].tx.visible);
  CHECK_FALSE(bundles[0].txs[0].visible);
  CHECK_FALSE(bundles[0].txs[1].visible);
  CHECK(scan_mempool(std::vector<MempoolTx>{txs[0].tx}).empty());
}

TEST_CASE("private routing needs a relay") {
  std::vector<PricedTx> txs;
  std::vector<Bundle> bundles;
  RelayConfig none{0};
  CHECK_THROWS_AS(route_private(txs, bundles, none, 100), ConfigError);
  RelayConfig one{1};
  CHECK(route_private(txs, bundles, one, 100).bids.empty());
}

}  // TEST_SUITE
