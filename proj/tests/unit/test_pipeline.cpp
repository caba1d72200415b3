#include <doctest.h>

#include <blocklab/pipeline.hpp>

using namespace blocklab;

namespace {

EraConfig era_config(Era era) {
  EraConfig cfg;
  cfg.era = era;
  cfg.block_reward = 100;
  if (era == Era::RelayEra || era == Era::Eip1559Era || era == Era::PbsEra) cfg.relay_count = 1;
  if (era == Era::PbsEra) cfg.builder_count = 3;
  if (era == Era::PgaEra) cfg.pga_bid_gas_cost = 1;
  return cfg;
}

MempoolParams small_pool() {
  MempoolParams p;
  p.tx_count = 40;
  p.gas_max = 300'000;
  p.mix_plain_milli = 700;
  p.mix_arbitrage_milli = 150;
  p.mix_anomaly_milli = 100;
  p.mix_vulnerable_milli = 50;
  return p;
}

Value payoff_sum(const FlowLedger& led) {
  return led.pi_u + led.pi_s + led.pi_b + led.pi_p;
}

const MempoolTx* find_user_tx(const std::vector<BlockTx>& order, int tx_id, std::size_t* pos) {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (const auto* u = std::get_if<MempoolTx>(&order[i]); u && u->tx_id == tx_id) {
      *pos = i;
      return u;
    }
  return nullptr;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("era names round-trip") {
  for (auto era :
       {Era::Baseline, Era::PgaEra, Era::RelayEra, Era::Eip1559Era, Era::PbsEra}) {
    CHECK(era_from_name(era_name(era)) == era);
  }
  CHECK_FALSE(era_from_name("dark ages").has_value());
}

TEST_CASE("era configuration validation") {
  CHECK_NOTHROW(era_config(Era::Baseline).validate());
  CHECK_NOTHROW(era_config(Era::PbsEra).validate());

  auto anachronism = era_config(Era::Baseline);
  anachronism.relay_count = 1;
  CHECK_THROWS_AS(anachronism.validate(), ConfigError);

  auto no_relay = era_config(Era::RelayEra);
  no_relay.relay_count = 0;
  CHECK_THROWS_AS(no_relay.validate(), ConfigError);

  auto lonely_war = era_config(Era::PgaEra);
  lonely_war.searcher_count = 1;
  CHECK_THROWS_AS(lonely_war.validate(), ConfigError);

  auto no_builders = era_config(Era::PbsEra);
  no_builders.builder_count = 0;
  CHECK_THROWS_AS(no_builders.validate(), ConfigError);

  auto bad_shade = era_config(Era::RelayEra);
  bad_shade.searcher_shade_milli = 1001;
  CHECK_THROWS_AS(bad_shade.validate(), ConfigError);

  auto bad_increment = era_config(Era::PgaEra);
  bad_increment.pga_increment = 0;
  CHECK_THROWS_AS(bad_increment.validate(), ConfigError);
}

TEST_CASE("mempool parameter validation") {
  CHECK_NOTHROW(small_pool().validate());
  auto bad_mix = small_pool();
  bad_mix.mix_plain_milli = 800;
  CHECK_THROWS_AS(bad_mix.validate(), ConfigError);
  auto no_room = small_pool();
  no_room.gas_min = 500;
  no_room.gas_max = 900;
  no_room.gas_granularity = 1000;
  CHECK_THROWS_AS(no_room.validate(), ConfigError);
  auto empty_with_mix = small_pool();
  empty_with_mix.tx_count = 0;
  CHECK_THROWS_AS(empty_with_mix.validate(), ConfigError);
}

TEST_CASE("mempool generation is deterministic and well-formed") {
  auto params = small_pool();
  auto a = generate_mempool(99, params);
  auto b = generate_mempool(99, params);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == (std::size_t)params.tx_count);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].tx_id == b[i].tx_id);
    CHECK(a[i].size == b[i].size);
    CHECK(a[i].true_value == b[i].true_value);
    CHECK(a[i].kind == b[i].kind);
    CHECK_NOTHROW(a[i].validate());
    CHECK(a[i].size >= params.gas_min);
    CHECK(a[i].size <= params.gas_max);
    CHECK(a[i].size % params.gas_granularity == 0);
  }
  CHECK(generate_mempool(100, params)[0].true_value != a[0].true_value);
}

TEST_CASE("an all-plain mix yields no opportunities") {
  auto params = small_pool();
  params.mix_plain_milli = 1000;
  params.mix_arbitrage_milli = 0;
  params.mix_anomaly_milli = 0;
  params.mix_vulnerable_milli = 0;
  auto pool = generate_mempool(5, params);
  for (const auto& tx : pool) CHECK(tx.kind == MevKind::Plain);
  CHECK(scan_mempool(pool).empty());
}

TEST_CASE("slot inputs pair tip offers with transactions") {
  auto params = small_pool();
  auto slot = generate_slot_input(17, params);
  REQUIRE(slot.tip_offers.size() == slot.txs.size());
  auto pool = generate_mempool(17, params);
  CHECK(slot.txs.size() == pool.size());
  for (std::size_t i = 0; i < slot.txs.size(); ++i) {
    CHECK(slot.txs[i].tx_id == pool[i].tx_id);
    CHECK(slot.tip_offers[i] >= params.tip_per_gas_min * slot.txs[i].size);
    CHECK(slot.tip_offers[i] <= params.tip_per_gas_max * slot.txs[i].size);
  }
}

TEST_CASE("open-era ledger arithmetic") {
  FlowLedger led;
  led.v_u = 100;
  led.f_u = 20;
  led.reward = 10;
  led.finalize(Era::Baseline);
  CHECK(led.pi_u == 80);
  CHECK(led.pi_b == 30);
  CHECK(led.total_surplus == 110);
  CHECK(led.v_hat == 100);
  CHECK(payoff_sum(led) == led.v_hat + led.reward - led.burn());
}

TEST_CASE("builder-market ledger arithmetic") {
  FlowLedger led;
  led.v_u = 100;
  led.m_s = 20;
  led.m_b = 5;
  led.m_p = 3;
  led.reward = 10;
  led.b_u = 6;
  led.b_s = 2;
  led.t_u = 30;
  led.t_s = 12;
  led.f_b = 9;
  led.finalize(Era::PbsEra);
  CHECK(led.pi_u == 64);
  CHECK(led.pi_s == 6);
  CHECK(led.pi_b == 38);
  CHECK(led.pi_p == 22);
  CHECK(led.total_surplus == 130);
  CHECK(led.v_hat == 128);
  CHECK(led.burn() == 8);
  CHECK(led.total_surplus == led.v_hat + led.reward - led.burn());
  CHECK(led.f_u == 36);  // derived from burn and tip components
  CHECK(led.f_s == 14);
}

TEST_CASE("ledger rejects flows that do not belong to the era") {
  FlowLedger negative;
  negative.v_u = -1;
  CHECK_THROWS_AS(negative.finalize(Era::Baseline), ContractViolation);

  FlowLedger early_burn;
  early_burn.v_u = 10;
  early_burn.b_u = 5;
  CHECK_THROWS_AS(early_burn.finalize(Era::Baseline), ContractViolation);

  FlowLedger early_bribe;
  early_bribe.v_u = 10;
  early_bribe.f_b = 5;
  CHECK_THROWS_AS(early_bribe.finalize(Era::RelayEra), ContractViolation);

  FlowLedger stray_proposer;
  stray_proposer.v_u = 10;
  stray_proposer.m_p = 5;
  CHECK_THROWS_AS(stray_proposer.finalize(Era::Eip1559Era), ContractViolation);
}

TEST_CASE("proposer takes the highest bribe, ties break low") {
  std::vector<SealedHeader> two{{1, 9, 0, 0}, {2, 11, 0, 1}};
  CHECK(select_header(two) == 1);

  std::vector<SealedHeader> relay_tie{{1, 9, 1, 0}, {2, 9, 0, 1}};
  CHECK(select_header(relay_tie) == 1);

  std::vector<SealedHeader> builder_tie{{1, 9, 0, 2}, {2, 9, 0, 1}};
  CHECK(select_header(builder_tie) == 1);
}

TEST_CASE("every era conserves value block by block") {
  auto slot = generate_slot_input(21, small_pool());
  for (auto era :
       {Era::Baseline, Era::PgaEra, Era::RelayEra, Era::Eip1559Era, Era::PbsEra}) {
    CAPTURE(era_name(era));
    PipelineState state;
    state.fees.base_fee = 10;
    auto block = run_block(era_config(era), slot, state);
    const auto& led = block.ledger;
    CHECK(payoff_sum(led) == led.v_hat + led.reward - led.burn());
    CHECK(led.total_surplus == payoff_sum(led));
    CHECK(block.gas_used <= state.fees.max_gas);
    CHECK(block.efficiency >= 0.0);
    CHECK(block.efficiency <= 1.0);
  }
}

TEST_CASE("searcher transactions sit next to their prey") {
  auto slot = generate_slot_input(33, small_pool());
  PipelineState state;
  auto block = run_block(era_config(Era::RelayEra), slot, state);
  int searcher_txs = 0;
  for (std::size_t i = 0; i < block.order.size(); ++i) {
    const auto* stx = std::get_if<SearcherTx>(&block.order[i]);
    if (!stx) continue;
    ++searcher_txs;
    std::size_t src_pos = 0;
    if (!find_user_tx(block.order, stx->source_tx_id, &src_pos)) continue;
    if (stx->action == MevAction::FrontRun)
      CHECK(i + 1 == src_pos);
    else
      CHECK(i == src_pos + 1);
  }
  CHECK(searcher_txs > 0);
  CHECK_FALSE(block.events.empty());
}

TEST_CASE("burn era splits fees and moves the reserve price") {
  auto slot = generate_slot_input(44, small_pool());
  PipelineState state;
  state.fees.base_fee = 5;
  auto block = run_block(era_config(Era::Eip1559Era), slot, state);
  CHECK(block.base_fee == 5);  // price the block ran under
  CHECK(block.ledger.burn() > 0);
  CHECK(state.fees.cumulative_burn == block.ledger.burn());
  CHECK(block.ledger.f_u == block.ledger.b_u + block.ledger.t_u);
}

TEST_CASE("builder market produces headers and a winner") {
  auto slot = generate_slot_input(55, small_pool());
  PipelineState state;
  auto cfg = era_config(Era::PbsEra);
  auto block = run_block(cfg, slot, state);
  REQUIRE(block.headers.size() == (std::size_t)cfg.builder_count);
  CHECK(block.winning_builder >= 0);
  CHECK(block.winning_builder < cfg.builder_count);
  Value best = 0;
  for (const auto& h : block.headers) best = std::max(best, h.bribe);
  CHECK(block.headers[(std::size_t)select_header(block.headers)].builder_id ==
        block.winning_builder);
  CHECK(block.ledger.f_b == best);
  CHECK(block.ledger.pi_p >= cfg.block_reward);
}

TEST_CASE("one epoch is thirty-two slots") {
  PipelineScenario scenario;
  scenario.era = era_config(Era::Baseline);
  scenario.mempool = small_pool();
  auto report = run_epochs(scenario, Era::Baseline, 3);
  CHECK(report.rows.size() == 32);
  for (const auto& row : report.rows) {
    CHECK(row.efficiency >= 0.0);
    CHECK(row.efficiency <= 1.0);
    CHECK(payoff_sum(row.ledger) == row.ledger.v_hat + row.ledger.reward - row.ledger.burn());
    Value captured = 0;
    for (const auto& ev : row.events) captured += ev.captured_value;
    CHECK(captured == row.mev_diverted + row.mev_created);
  }
}

TEST_CASE("identical seeds replay identical epochs") {
  PipelineScenario scenario;
  scenario.era = era_config(Era::PbsEra);
  scenario.mempool = small_pool();
  auto a = run_epochs(scenario, Era::PbsEra, 9);
  auto b = run_epochs(scenario, Era::PbsEra, 9);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].ledger.total_surplus == b.rows[i].ledger.total_surplus);
    CHECK(a.rows[i].gas_used == b.rows[i].gas_used);
    CHECK(a.rows[i].base_fee == b.rows[i].base_fee);
  }
  CHECK(a.totals.v_hat == b.totals.v_hat);
}

TEST_CASE("sealed bids leave searchers more rent than open wars") {
  PipelineScenario scenario;
  scenario.era = era_config(Era::PgaEra);
  scenario.era.slots_per_epoch = 8;
  scenario.mempool = small_pool();
  Era eras[] = {Era::PgaEra, Era::RelayEra};
  auto rows = compare_eras(scenario, eras, 7);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].era == Era::PgaEra);
  CHECK(rows[1].era == Era::RelayEra);
  CHECK(rows[1].pi_s > rows[0].pi_s);
  CHECK(rows[0].pga_sunk > 0);
  CHECK(rows[1].pga_sunk == 0);
}

TEST_CASE("no extraction kinds means no searcher payoff anywhere") {
  PipelineScenario scenario;
  scenario.era = era_config(Era::Baseline);
  scenario.era.slots_per_epoch = 4;
  scenario.mempool = small_pool();
  scenario.mempool.mix_plain_milli = 1000;
  scenario.mempool.mix_arbitrage_milli = 0;
  scenario.mempool.mix_anomaly_milli = 0;
  scenario.mempool.mix_vulnerable_milli = 0;
  Era eras[] = {Era::Baseline, Era::PgaEra, Era::RelayEra, Era::Eip1559Era, Era::PbsEra};
  auto rows = compare_eras(scenario, eras, 3);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    CHECK(row.pi_s == 0);
    CHECK(row.mev_diverted == 0);
    CHECK(row.mev_created == 0);
  }
}

TEST_CASE("burn eras actually burn") {
  PipelineScenario scenario;
  scenario.era = era_config(Era::Eip1559Era);
  scenario.era.slots_per_epoch = 4;
  scenario.mempool = small_pool();
  Era eras[] = {Era::Eip1559Era, Era::PbsEra};
  auto rows = compare_eras(scenario, eras, 11);
  for (const auto& row : rows) CHECK(row.burn > 0);
}

}  // TEST_SUITE
