#include <doctest.h>

#include <blocklab/io.hpp>
#include <sstream>

using namespace blocklab;

namespace {

KnapsackInstance instance_from(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

ProfileInput profile_from(const std::string& text) {
  std::istringstream in(text);
  return parse_profile(in);
}

MempoolInput mempool_from(const std::string& text) {
  std::istringstream in(text);
  return parse_mempool(in);
}

Scenario scenario_from(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

int line_of(const std::function<void()>& thrower) {
  try {
    thrower();
  } catch (const ParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("instance text round trip") {
  auto inst = instance_from("# decoy pair\nK=10\n\n1,1,1\n2,10,9\n");
  CHECK(inst.capacity == 10);
  REQUIRE(inst.items.size() == 2);
  CHECK(inst.items[1].id == 2);
  CHECK(inst.items[1].size == 10);
  CHECK(inst.items[1].value == 9);
}

TEST_CASE("instance errors carry line numbers") {
  CHECK(line_of([] { instance_from(""); }) == 0);
  CHECK(line_of([] { instance_from("J=10\n1,1,1\n"); }) == 1);
  CHECK(line_of([] { instance_from("K=10\n1,1\n"); }) == 2);
  CHECK(line_of([] { instance_from("K=10\n1,one,1\n"); }) == 2);
  CHECK(line_of([] { instance_from("# pad\nK=10\n1,1,1\n1,2,2\n"); }) == 0);  // duplicate id
}

TEST_CASE("profile text with and without true values") {
  auto bare = profile_from("K=2\n1,1,5\n2,1,3\n3,1,2\n");
  CHECK_FALSE(bare.has_true_values);
  CHECK(bare.profile.capacity == 2);
  REQUIRE(bare.profile.bids.size() == 3);
  CHECK(bare.profile.bids[0].agent_id == 1);
  CHECK(bare.profile.bids[0].size == 1);
  CHECK(bare.profile.bids[0].amount == 5);

  auto valued = profile_from("K=2\n1,1,4,5\n2,1,3,3\n");
  CHECK(valued.has_true_values);
  CHECK(valued.true_values == std::vector<Value>{5, 3});
  CHECK(valued.profile.bids[0].amount == 4);

  CHECK(line_of([] { profile_from("K=2\n1,1,4,5\n2,1,3\n"); }) == 3);
}

TEST_CASE("mempool text covers kinds, opportunities and visibility") {
  auto pool = mempool_from(
      "K=1000\n"
      "1,100,9\n"
      "2,100,50,arbitrage,50\n"
      "3,100,30,anomaly,40,0\n");
  CHECK(pool.capacity == 1000);
  REQUIRE(pool.txs.size() == 3);
  CHECK(pool.txs[0].kind == MevKind::Plain);
  CHECK(pool.txs[1].kind == MevKind::ArbitrageCapture);
  CHECK(pool.txs[1].embedded_opportunity == 50);
  CHECK(pool.txs[1].visible);
  CHECK(pool.txs[2].kind == MevKind::AnomalyCreator);
  CHECK_FALSE(pool.txs[2].visible);

  CHECK(line_of([] { mempool_from("K=10\n1,100,9,weird\n"); }) == 2);
  CHECK(line_of([] { mempool_from("K=10\n1,100,9,plain,5\n"); }) == 2);   // plain with opportunity
  CHECK(line_of([] { mempool_from("K=10\n1,100,50,arbitrage,49\n"); }) == 2);
  CHECK(line_of([] { mempool_from("K=10\n1,100,9,plain,,2\n"); }) == 2);  // visible must be 0/1
}

TEST_CASE("scenario defaults and era-specific relay counts") {
  auto sc = scenario_from("[era]\nera = baseline\n");
  CHECK(sc.pipeline.era.era == Era::Baseline);
  CHECK(sc.pipeline.era.relay_count == 0);
  CHECK(sc.pipeline.epochs == 1);
  CHECK(sc.agent_kind == Strategy::QLearn);

  auto relayed = scenario_from("[era]\nera = relay\n");
  CHECK(relayed.pipeline.era.relay_count == 1);

  auto pbs = scenario_from("[era]\nera = pbs\nbuilders = 4\nrelays = 2\n");
  CHECK(pbs.pipeline.era.builder_count == 4);
  CHECK(pbs.pipeline.era.relay_count == 2);

  auto multi = scenario_from("[era]\nera = pga\neras = baseline,pga,relay\n");
  CHECK(multi.pipeline.eras ==
        std::vector<Era>{Era::Baseline, Era::PgaEra, Era::RelayEra});
}

TEST_CASE("scenario text rejects unknown structure precisely") {
  CHECK(line_of([] { scenario_from("[era]\nera = baseline\nwarp = 9\n"); }) == 3);
  CHECK(line_of([] { scenario_from("[warp]\nspeed = 9\n"); }) == 0);
  CHECK(line_of([] { scenario_from("era = baseline\n"); }) == 1);
  CHECK(line_of([] { scenario_from("[era]\nera = baseline\nera = pga\n"); }) == 3);
  CHECK(line_of([] { scenario_from("[era]\nera = atlantis\n"); }) == 2);
  CHECK(line_of([] { scenario_from("[era\nera = baseline\n"); }) == 1);
}

TEST_CASE("scenario cross-field validation") {
  CHECK_THROWS_AS(scenario_from("[era]\nera = baseline\nrelays = 1\n"), ConfigError);
  CHECK_THROWS_AS(scenario_from("[era]\nera = baseline\nepochs = 0\n"), ConfigError);
  CHECK_THROWS_AS(scenario_from("[mempool]\nmix_plain_milli = 900\n"), ConfigError);
  CHECK_THROWS_AS(scenario_from("[agents]\nrule = critical\n"), ConfigError);
}

TEST_CASE("agent demand sizes track the configured count") {
  auto def = scenario_from("[agents]\n");
  CHECK(def.agents_env.sizes == std::vector<Gas>{1, 1, 2, 3});

  auto counted = scenario_from("[agents]\ncount = 6\n");
  CHECK(counted.agents_env.agent_count == 6);
  CHECK(counted.agents_env.sizes.empty());  // a bare count means unit demands

  auto sized = scenario_from("[agents]\ncount = 2\nsizes = 2,3\n");
  CHECK(sized.agents_env.sizes == std::vector<Gas>{2, 3});

  auto unit = scenario_from("[agents]\ncount = 4\nsizes =\n");
  CHECK(unit.agents_env.sizes.empty());

  CHECK_THROWS_AS(scenario_from("[agents]\ncount = 3\nsizes = 1,2\n"), ConfigError);
}

TEST_CASE("serialization is canonical and hash-stable") {
  auto a = scenario_from("[era]\nera = pbs\nbuilders = 4\n[mempool]\ntx_count = 50\n");
  auto b = scenario_from("[mempool]\ntx_count = 50\n[era]\nbuilders = 4\nera = pbs\n");
  CHECK(serialize_scenario(a) == serialize_scenario(b));
  CHECK(fnv1a(serialize_scenario(a)) == fnv1a(serialize_scenario(b)));

  auto c = scenario_from(serialize_scenario(a));
  CHECK(serialize_scenario(c) == serialize_scenario(a));

  auto other = scenario_from("[era]\nera = pbs\nbuilders = 5\n");
  CHECK(serialize_scenario(other) != serialize_scenario(a));
}

TEST_CASE("rational text forms") {
  CHECK(parse_rational("9") == Rational(9));
  CHECK(parse_rational("91/10") == Rational(91, 10));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("x/2"), ParseError);
}

TEST_CASE("ratio formatting is fixed-width") {
  CHECK(format_ratio(1.0) == "1.000000");
  CHECK(format_ratio(0.1234567) == "0.123457");
  CHECK(format_ratio(0.0) == "0.000000");
}

TEST_CASE("solve rows list ids with semicolons") {
  PackingResult r;
  r.selected = {2, 3};
  r.total_size = 6;
  r.total_value = Rational(9);
  std::ostringstream out;
  write_solve_row(out, "exact", r, true);
  CHECK(out.str() == "solver,selected_ids,total_size,total_value\nexact,2;3,6,9\n");

  PackingResult frac;
  frac.selected = {1};
  frac.total_size = 10;
  frac.total_value = Rational(91, 10);
  frac.fractional_tail = FractionalTail{2, Rational(9, 10)};
  std::ostringstream out2;
  write_solve_row(out2, "fractional", frac, false);
  CHECK(out2.str() == "fractional,1;2,10,91/10\n");
}

TEST_CASE("outcome rows cover every bidder") {
  BidProfile p;
  p.capacity = 2;
  p.bids = {{1, 5, 1}, {2, 3, 1}, {3, 2, 1}};
  auto outcome = run_auction(p, PricingRule::UP);
  std::ostringstream out;
  write_outcome_csv(out, p, outcome);
  CHECK(out.str() ==
        "rule,agent_id,won,payment,bid,size\n"
        "up,1,1,2,5,1\n"
        "up,2,1,2,3,1\n"
        "up,3,0,0,2,1\n");
}

TEST_CASE("report csv headers match the published schemas") {
  std::ostringstream events, run, cmp, fees, training, tourney;
  write_events_csv(events, {});
  CHECK(events.str() == "block,searcher_id,source_tx,classification,captured_value\n");
  write_run_report_csv(run, {});
  CHECK(run.str() == "slot,era,pi_u,pi_s,pi_b,pi_p,Pi,V_hat,R,B,F_b,efficiency_ratio\n");
  write_comparison_csv(cmp, {});
  CHECK(cmp.str() ==
        "era,pi_u,pi_s,pi_b,pi_p,Pi,V_hat,R,B,F_b,mev_diverted,mev_created,pga_sunk,"
        "mean_efficiency\n");
  write_feemarket_csv(fees, {});
  CHECK(fees.str() == "block,base_fee,gas_used,burn,tips\n");

  TrainingReport tr;
  tr.rule = PricingRule::GSP;
  tr.rows = {{0, 10, 14, 0.5, 0.2}};
  write_training_csv(training, tr);
  CHECK(training.str() ==
        "episode,rule,revenue,surplus,efficiency\n"
        "0,gsp,10,4,0.500000\n");

  TournamentReport rep;
  rep.rows = {{7, PricingRule::DP, 12.0, 0.75}};
  rep.stats = {{PricingRule::DP, 12.0, 0.75}};
  rep.revenue_ranking_fraction = 1.0;
  rep.efficiency_ranking_fraction = 0.5;
  write_tournament_csv(tourney, rep);
  CHECK(tourney.str() ==
        "seed,rule,revenue,efficiency,revenue_ranking_fraction,efficiency_ranking_fraction\n"
        "7,dp,12.000000,0.750000,,\n"
        "all,dp,12.000000,0.750000,1.000000,0.500000\n");
}

TEST_CASE("run report rows serialize the ledger exactly") {
  SlotRow row;
  row.slot = 3;
  row.era = Era::PbsEra;
  row.ledger.v_u = 100;
  row.ledger.m_s = 20;
  row.ledger.m_b = 5;
  row.ledger.m_p = 3;
  row.ledger.reward = 10;
  row.ledger.b_u = 6;
  row.ledger.b_s = 2;
  row.ledger.t_u = 30;
  row.ledger.t_s = 12;
  row.ledger.f_b = 9;
  row.ledger.finalize(Era::PbsEra);
  row.efficiency = 0.9375;
  std::ostringstream out;
  write_run_report_csv(out, {&row, 1});
  CHECK(out.str() ==
        "slot,era,pi_u,pi_s,pi_b,pi_p,Pi,V_hat,R,B,F_b,efficiency_ratio\n"
        "3,pbs,64,6,38,22,130,128,10,8,9,0.937500\n");
}

}  // TEST_SUITE
