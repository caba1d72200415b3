#include "blocklab/pipeline.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "blocklab/rng.hpp"

namespace blocklab {

namespace {

// Searcher transactions get ids above any generated user tx id.
constexpr int kSearcherTxBase = 100'000;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t x) {
  h ^= x;
  return h * 1099511628211ULL;
}

bool is_burn_era(Era era) { return era == Era::Eip1559Era || era == Era::PbsEra; }

// One bid in the slot's block-space auction: either a user transaction or a
// searcher injection (possibly wrapped in a bundle). In the burn eras `bid`
// is the tip on top of the mandatory base component; earlier it is the whole
// fee.
struct Candidate {
  int agent_id;
  Value bid;
  Gas size;
  bool searcher;
  const MempoolTx* user{nullptr};
  SearcherTx stx{};
};

struct Injection {
  SearcherTx stx;
  Value fee;  // total fee the searcher offers (burn component included)
};

// Deterministic sealed competition for one opportunity: every searcher is
// equally sharp, so the shaded bid is shared and the win rotates by source id.
Injection sealed_injection(const EraConfig& cfg, const Opportunity& opp, Gas source_size,
                           int next_tx_id) {
  Injection inj;
  inj.stx.tx_id = next_tx_id;
  inj.stx.searcher_id = (int)(opp.source_tx_id % cfg.searcher_count);
  inj.stx.source_tx_id = opp.source_tx_id;
  inj.stx.action = opp.action;
  inj.stx.size = opp.action == MevAction::FrontRun ? source_size : cfg.searcher_tx_gas;
  inj.fee = scale_floor(opp.value, cfg.searcher_shade_milli, 1000);
  return inj;
}

// Winner order into an executable order, then honor each searcher's placement
// intent: the producer moves a paid injection right next to its source.
std::vector<BlockTx> assemble_order(const std::vector<Candidate*>& winners) {
  std::vector<BlockTx> order;
  for (const Candidate* c : winners) {
    if (c->searcher)
      order.push_back(c->stx);
    else
      order.push_back(*c->user);
  }
  std::vector<SearcherTx> moves;
  for (const BlockTx& tx : order)
    if (const SearcherTx* s = std::get_if<SearcherTx>(&tx)) moves.push_back(*s);
  for (const SearcherTx& mv : moves) {
    auto self = std::find_if(order.begin(), order.end(), [&](const BlockTx& t) {
      const SearcherTx* s = std::get_if<SearcherTx>(&t);
      return s && s->tx_id == mv.tx_id;
    });
    auto source = std::find_if(order.begin(), order.end(), [&](const BlockTx& t) {
      const MempoolTx* u = std::get_if<MempoolTx>(&t);
      return u && u->tx_id == mv.source_tx_id;
    });
    if (self == order.end() || source == order.end()) continue;
    BlockTx moved = *self;
    std::size_t src_idx = (std::size_t)(source - order.begin());
    std::size_t self_idx = (std::size_t)(self - order.begin());
    order.erase(self);
    if (self_idx < src_idx) --src_idx;
    std::size_t at = mv.action == MevAction::FrontRun ? src_idx : src_idx + 1;
    order.insert(order.begin() + at, moved);
  }
  return order;
}

struct AuctionPass {
  std::vector<Candidate*> winners;      // packing order
  std::vector<std::pair<int, Value>> payments;  // agent -> paid (fee or tip)
  Value revenue{0};
};

AuctionPass run_block_auction(std::vector<Candidate>& candidates, Gas capacity,
                              PricingRule rule) {
  AuctionPass pass;
  if (candidates.empty()) return pass;
  BidProfile profile;
  profile.capacity = capacity;
  for (const Candidate& c : candidates) profile.bids.push_back({c.agent_id, c.bid, c.size});

  Gas total = 0;
  for (const Candidate& c : candidates) total += c.size;
  // An undersubscribed block has no losers to price against: everyone gets in
  // at their own offer. Otherwise the configured rule prices the scarce space.
  AuctionOutcome outcome = total <= capacity
                               ? price_dp(profile, allocate_greedy(profile).winners)
                               : run_auction(profile, rule);

  std::unordered_map<int, Candidate*> by_agent;
  for (Candidate& c : candidates) by_agent[c.agent_id] = &c;
  for (int id : outcome.winners) pass.winners.push_back(by_agent.at(id));
  pass.payments = outcome.payments;
  pass.revenue = outcome.revenue;
  return pass;
}

double block_efficiency(const SlotInput& slot, Gas capacity,
                        const std::vector<BlockTx>& order) {
  if (slot.txs.empty()) return 1.0;
  KnapsackInstance inst;
  inst.capacity = capacity;
  for (const MempoolTx& tx : slot.txs) inst.items.push_back({tx.tx_id, tx.size, tx.true_value});
  Value optimum = solve_exact_value(inst);
  if (optimum == 0) return 1.0;
  Value realized = 0;
  for (const BlockTx& btx : order)
    if (const MempoolTx* u = std::get_if<MempoolTx>(&btx)) realized += u->true_value;
  return (double)realized / (double)optimum;
}

Value floor_vpg(const MempoolTx& tx) { return tx.true_value / tx.size; }

// Fees users put on the wire never exceed what the inclusion is worth to them.
Value clamp_offer(Value offer, Value ceiling) { return std::min(offer, std::max<Value>(0, ceiling)); }

struct EraBuild {
  std::vector<Candidate> candidates;
  Value pga_sunk{0};
  Value searcher_fee_floor{0};  // sunk costs owed to the producer regardless
};

// Candidate set for the pre-burn eras: whole fees bid openly.
EraBuild open_era_candidates(const EraConfig& cfg, const SlotInput& slot, Gas capacity) {
  EraBuild build;
  for (std::size_t i = 0; i < slot.txs.size(); ++i) {
    const MempoolTx& tx = slot.txs[i];
    Value fee = clamp_offer(slot.tip_offers[i], tx.true_value);
    build.candidates.push_back({tx.tx_id, fee, tx.size, false, &tx, {}});
  }
  if (cfg.era == Era::Baseline || cfg.searcher_count == 0) return build;

  std::vector<Opportunity> opportunities = scan_mempool(slot.txs);
  std::unordered_map<int, const MempoolTx*> by_id;
  for (const MempoolTx& tx : slot.txs) by_id[tx.tx_id] = &tx;

  int next_id = kSearcherTxBase;
  for (const Opportunity& opp : opportunities) {
    const MempoolTx* source = by_id.at(opp.source_tx_id);
    if (cfg.era == Era::PgaEra) {
      PgaResult pga = run_pga(opp.value,
                              {cfg.searcher_count, cfg.pga_increment, cfg.pga_bid_gas_cost});
      for (Value c : pga.sunk_costs) build.pga_sunk += c;
      if (!pga.winner) {
        ++next_id;
        continue;
      }
      SearcherTx stx{next_id++, *pga.winner, opp.source_tx_id, opp.action,
                     opp.action == MevAction::FrontRun ? source->size : cfg.searcher_tx_gas};
      build.candidates.push_back({stx.tx_id, pga.winning_fee, stx.size, true, nullptr, stx});
    } else {
      Injection inj = sealed_injection(cfg, opp, source->size, next_id++);
      if (inj.fee <= 0) continue;
      build.candidates.push_back({inj.stx.tx_id, inj.fee, inj.stx.size, true, nullptr, inj.stx});
    }
  }
  build.searcher_fee_floor = build.pga_sunk;

  // Sealed submissions travel through the relay, off the open mempool.
  if (cfg.era == Era::RelayEra) {
    std::vector<PricedTx> sealed;
    for (const Candidate& c : build.candidates)
      if (c.searcher)
        sealed.push_back({MempoolTx{c.stx.tx_id, c.stx.searcher_id, c.size, 0, MevKind::Plain,
                                    true, std::nullopt},
                          c.bid});
    std::vector<Bundle> none;
    if (!sealed.empty()) route_private(sealed, none, RelayConfig{cfg.relay_count}, capacity);
  }
  return build;
}

// Candidate set for the burn eras: admission at the reserve price, tips bid
// on top. Searcher fees must cover their own burn.
EraBuild burn_era_candidates(const EraConfig& cfg, const SlotInput& slot,
                             const PipelineState& state, std::vector<Bundle>* bundles_out) {
  const Value base = state.fees.base_fee;
  EraBuild build;
  for (std::size_t i = 0; i < slot.txs.size(); ++i) {
    const MempoolTx& tx = slot.txs[i];
    Value vpg = floor_vpg(tx);
    if (vpg < base + state.min_tip) continue;
    Value tip = clamp_offer(slot.tip_offers[i], (vpg - base) * tx.size);
    build.candidates.push_back({tx.tx_id, tip, tx.size, false, &tx, {}});
  }
  if (cfg.searcher_count == 0) return build;

  std::vector<Opportunity> opportunities = scan_mempool(slot.txs);
  std::unordered_map<int, const MempoolTx*> by_id;
  for (const MempoolTx& tx : slot.txs) by_id[tx.tx_id] = &tx;

  std::vector<Bundle> bundles;
  std::vector<PricedTx> no_txs;
  int next_id = kSearcherTxBase;
  int bundle_id = 0;
  for (const Opportunity& opp : opportunities) {
    const MempoolTx* source = by_id.at(opp.source_tx_id);
    Injection inj = sealed_injection(cfg, opp, source->size, next_id++);
    Value burn_cost = base * inj.stx.size;
    Value tip = inj.fee - burn_cost;
    if (tip < state.min_tip * inj.stx.size) continue;  // cannot meet the per-gas floor
    Candidate cand{0, tip, inj.stx.size, true, nullptr, inj.stx};
    if (cfg.era == Era::PbsEra) {
      // Submissions arrive as sealed bundles; the bundle id keys the candidate.
      Bundle b{bundle_id, inj.stx.searcher_id,
               {MempoolTx{inj.stx.tx_id, inj.stx.searcher_id, inj.stx.size, 0, MevKind::Plain,
                          true, std::nullopt}},
               inj.fee};
      bundles.push_back(b);
      cand.agent_id = kBundleAgentBase + bundle_id;
      ++bundle_id;
    } else {
      cand.agent_id = inj.stx.tx_id;
    }
    build.candidates.push_back(cand);
  }
  if (!bundles.empty())
    route_private(no_txs, bundles, RelayConfig{cfg.relay_count}, state.fees.max_gas);
  if (bundles_out) *bundles_out = std::move(bundles);
  return build;
}

struct SettledBlock {
  std::vector<BlockTx> order;
  ExtractionResult extraction;
  Gas gas_used{0};
  Value user_fees{0}, searcher_fees{0};          // open eras
  Value user_tips{0}, searcher_tips{0};          // burn eras
  Value user_burn{0}, searcher_burn{0};
  Value tip_revenue{0};
};

SettledBlock settle(const EraConfig& cfg, const PipelineState& state, EraBuild& build,
                    const AuctionPass& pass) {
  SettledBlock blk;
  blk.order = assemble_order(pass.winners);
  blk.extraction = apply_extraction(blk.order);

  std::unordered_map<int, const Candidate*> by_agent;
  for (const Candidate* c : pass.winners) by_agent[c->agent_id] = c;

  if (!is_burn_era(cfg.era)) {
    for (const auto& [agent, paid] : pass.payments) {
      const Candidate* c = by_agent.at(agent);
      blk.gas_used += c->size;
      (c->searcher ? blk.searcher_fees : blk.user_fees) += paid;
    }
    blk.searcher_fees += build.searcher_fee_floor;
    return blk;
  }

  std::vector<ChargedTx> charged;
  for (const auto& [agent, paid] : pass.payments) {
    const Candidate* c = by_agent.at(agent);
    blk.gas_used += c->size;
    int tx_id = c->searcher ? c->stx.tx_id : c->user->tx_id;
    charged.push_back({tx_id, c->size, paid});
  }
  BurnSplit split = burn_and_split(charged, state.fees);
  for (std::size_t i = 0; i < split.quotes.size(); ++i) {
    const Candidate* c = by_agent.at(pass.payments[i].first);
    if (c->searcher) {
      blk.searcher_burn += split.quotes[i].base_component;
      blk.searcher_tips += split.quotes[i].tip_component;
    } else {
      blk.user_burn += split.quotes[i].base_component;
      blk.user_tips += split.quotes[i].tip_component;
    }
  }
  blk.tip_revenue = split.tips;
  return blk;
}

BlockResult finish_block(const EraConfig& cfg, const SlotInput& slot, PipelineState& state,
                         EraBuild& build, const AuctionPass& pass) {
  const Gas capacity = state.fees.max_gas;
  const bool burn = is_burn_era(cfg.era);
  const Value base_before = state.fees.base_fee;

  SettledBlock blk = settle(cfg, state, build, pass);

  BlockResult res;
  res.order = blk.order;
  res.events = blk.extraction.events;
  res.gas_used = blk.gas_used;
  res.base_fee = burn ? base_before : 0;
  res.efficiency = block_efficiency(slot, capacity, blk.order);

  FlowLedger& led = res.ledger;
  led.v_u = blk.extraction.total_user_value;
  led.m_s = blk.extraction.total_searcher_value;
  led.m_b = cfg.builder_self_mev;
  led.m_p = cfg.era == Era::PbsEra ? cfg.proposer_self_mev : 0;
  led.reward = cfg.block_reward;
  led.pga_sunk = build.pga_sunk;
  if (burn) {
    led.t_u = blk.user_tips;
    led.t_s = blk.searcher_tips;
    led.b_u = blk.user_burn;
    led.b_s = blk.searcher_burn;
  } else {
    led.f_u = blk.user_fees;
    led.f_s = blk.searcher_fees;
  }
  if (cfg.era == Era::PbsEra)
    led.f_b = scale_floor(blk.tip_revenue + led.m_b, cfg.builder_bribe_milli, 1000);
  led.finalize(cfg.era);

  if (burn) {
    state.fees.cumulative_burn += led.burn();
    state.fees = update_base_fee(state.fees, blk.gas_used);
  }
  return res;
}

BlockResult run_pbs_block(const EraConfig& cfg, const SlotInput& slot, PipelineState& state) {
  const Gas capacity = state.fees.max_gas;
  std::vector<Bundle> bundles;
  EraBuild shared = burn_era_candidates(cfg, slot, state, &bundles);

  // Builders see all public demand but only their own slice of the private
  // order flow, compete on the bribe, and only the chosen block settles.
  struct BuilderBlock {
    EraBuild build;
    AuctionPass pass;
    Value tips{0};
    Value bribe{0};
  };
  std::vector<BuilderBlock> built(cfg.builder_count);
  std::vector<SealedHeader> headers;
  for (int b = 0; b < cfg.builder_count; ++b) {
    BuilderBlock& bb = built[b];
    for (const Candidate& c : shared.candidates) {
      if (!c.searcher) {
        bb.build.candidates.push_back(c);
      } else {
        int bundle_idx = c.agent_id - kBundleAgentBase;
        if (bundle_idx % cfg.builder_count == b) bb.build.candidates.push_back(c);
      }
    }
    bb.pass = run_block_auction(bb.build.candidates, capacity, cfg.auction_rule);
    for (const auto& [agent, paid] : bb.pass.payments) bb.tips += paid;
    bb.bribe = scale_floor(bb.tips + cfg.builder_self_mev, cfg.builder_bribe_milli, 1000);

    std::uint64_t h = 1469598103934665603ULL;
    for (const Candidate* c : bb.pass.winners) {
      h = fnv_mix(h, (std::uint64_t)c->agent_id);
      h = fnv_mix(h, (std::uint64_t)c->size);
    }
    h = fnv_mix(h, (std::uint64_t)bb.bribe);
    headers.push_back({h, bb.bribe, b % std::max(1, cfg.relay_count), b});
  }

  std::size_t w = select_header(headers);
  BuilderBlock& win = built[(int)w];
  BlockResult res = finish_block(cfg, slot, state, win.build, win.pass);
  res.winning_builder = headers[w].builder_id;
  res.headers = std::move(headers);
  return res;
}

}  // namespace

const char* era_name(Era era) {
  switch (era) {
    case Era::Baseline: return "baseline";
    case Era::PgaEra: return "pga";
    case Era::RelayEra: return "relay";
    case Era::Eip1559Era: return "eip1559";
    case Era::PbsEra: return "pbs";
  }
  throw ContractViolation("unknown era");
}

std::optional<Era> era_from_name(const std::string& name) {
  if (name == "baseline") return Era::Baseline;
  if (name == "pga") return Era::PgaEra;
  if (name == "relay") return Era::RelayEra;
  if (name == "eip1559") return Era::Eip1559Era;
  if (name == "pbs") return Era::PbsEra;
  return std::nullopt;
}

void EraConfig::validate() const {
  if (block_reward < 0) throw ConfigError("block reward must be non-negative");
  if (slot_seconds <= 0 || slots_per_epoch <= 0)
    throw ConfigError("slot timing must be positive");
  if (relay_count < 0 || builder_count < 0 || searcher_count < 0)
    throw ConfigError("participant counts must be non-negative");
  if (searcher_shade_milli < 0 || searcher_shade_milli > 1000)
    throw ConfigError("searcher shade must lie in [0, 1000] per mille");
  if (builder_bribe_milli < 0 || builder_bribe_milli > 1000)
    throw ConfigError("builder bribe share must lie in [0, 1000] per mille");
  if (builder_self_mev < 0 || proposer_self_mev < 0)
    throw ConfigError("self-extraction must be non-negative");
  if (searcher_tx_gas <= 0) throw ConfigError("searcher tx gas must be positive");
  if (pga_increment <= 0) throw ConfigError("escalation increment must be positive");
  if (pga_bid_gas_cost < 0) throw ConfigError("bid gas cost must be non-negative");

  switch (era) {
    case Era::Baseline:
    case Era::PgaEra:
      if (relay_count != 0) throw ConfigError("this era predates relays");
      break;
    case Era::RelayEra:
      if (relay_count < 1) throw ConfigError("the relay era needs at least one relay");
      break;
    case Era::Eip1559Era:
      if (searcher_count > 0 && relay_count < 1)
        throw ConfigError("sealed searcher routing needs a relay");
      break;
    case Era::PbsEra:
      if (relay_count < 1 || builder_count < 1)
        throw ConfigError("the builder market needs builders and relays");
      break;
  }
  if (era == Era::PgaEra && searcher_count == 1)
    throw ConfigError("an outbidding war needs at least 2 searchers or none");
}

void MempoolParams::validate() const {
  if (tx_count < 0) throw ConfigError("tx count must be non-negative");
  if (mix_plain_milli < 0 || mix_arbitrage_milli < 0 || mix_anomaly_milli < 0 ||
      mix_vulnerable_milli < 0)
    throw ConfigError("kind mix must be non-negative");
  if (mix_plain_milli + mix_arbitrage_milli + mix_anomaly_milli + mix_vulnerable_milli != 1000)
    throw ConfigError("kind mix must sum to 1000 per mille");
  if (tx_count == 0 && mix_plain_milli != 1000)
    throw ConfigError("zero tx count with a non-zero extraction mix");
  if (gas_granularity <= 0) throw ConfigError("gas granularity must be positive");
  if (gas_min <= 0 || gas_min > gas_max) throw ConfigError("gas bounds must satisfy 0 < min <= max");
  if ((gas_min + gas_granularity - 1) / gas_granularity > gas_max / gas_granularity)
    throw ConfigError("no multiple of the granularity fits the gas bounds");
  if (value_per_gas_min < 0 || value_per_gas_min > value_per_gas_max)
    throw ConfigError("value-per-gas bounds must satisfy 0 <= min <= max");
  if (tip_per_gas_min < 0 || tip_per_gas_min > tip_per_gas_max)
    throw ConfigError("tip bounds must satisfy 0 <= min <= max");
  if (gap_min < 0 || gap_min > gap_max) throw ConfigError("gap bounds must satisfy 0 <= min <= max");
  if (qty_min < 0 || qty_min > qty_max)
    throw ConfigError("quantity bounds must satisfy 0 <= min <= max");
  if (visible_milli < 0 || visible_milli > 1000)
    throw ConfigError("visibility must lie in [0, 1000] per mille");
}

std::vector<MempoolTx> generate_mempool(std::uint64_t seed, const MempoolParams& params) {
  params.validate();
  Rng rng(seed);
  const Gas lo = (params.gas_min + params.gas_granularity - 1) / params.gas_granularity;
  const Gas hi = params.gas_max / params.gas_granularity;

  std::vector<MempoolTx> txs;
  txs.reserve(params.tx_count);
  for (int i = 0; i < params.tx_count; ++i) {
    MempoolTx tx;
    tx.tx_id = i;
    tx.sender_id = i;
    tx.size = params.gas_granularity * rng.uniform(lo, hi);
    int roll = (int)rng.uniform(0, 999);
    if (roll < params.mix_plain_milli)
      tx.kind = MevKind::Plain;
    else if (roll < params.mix_plain_milli + params.mix_arbitrage_milli)
      tx.kind = MevKind::ArbitrageCapture;
    else if (roll < params.mix_plain_milli + params.mix_arbitrage_milli + params.mix_anomaly_milli)
      tx.kind = MevKind::AnomalyCreator;
    else
      tx.kind = MevKind::VulnerableFunds;
    tx.visible = rng.chance_milli(params.visible_milli);
    Value vpg = rng.uniform(params.value_per_gas_min, params.value_per_gas_max);
    if (tx.kind != MevKind::Plain) {
      Value opp = rng.uniform(params.gap_min, params.gap_max) *
                  rng.uniform(params.qty_min, params.qty_max);
      tx.embedded_opportunity = opp;
      tx.true_value = tx.kind == MevKind::AnomalyCreator ? vpg * tx.size : opp;
    } else {
      tx.true_value = vpg * tx.size;
    }
    tx.validate();
    txs.push_back(tx);
  }
  return txs;
}

SlotInput generate_slot_input(std::uint64_t seed, const MempoolParams& params) {
  SlotInput slot;
  slot.txs = generate_mempool(seed, params);
  Rng tips(Rng::mix(seed, 0x7191));
  slot.tip_offers.reserve(slot.txs.size());
  for (const MempoolTx& tx : slot.txs)
    slot.tip_offers.push_back(tips.uniform(params.tip_per_gas_min, params.tip_per_gas_max) *
                              tx.size);
  return slot;
}

void FlowLedger::finalize(Era era) {
  for (Value flow : {v_u, m_s, m_b, m_p, f_b, t_u, t_s, b_u, b_s, reward, pga_sunk})
    if (flow < 0) throw ContractViolation("negative flow component");

  const bool burn_era = is_burn_era(era);
  if (burn_era) {
    f_u = b_u + t_u;
    f_s = b_s + t_s;
  } else if (b_u != 0 || b_s != 0 || t_u != 0 || t_s != 0) {
    throw ContractViolation("burn components outside a burn era");
  }
  if (f_u < 0 || f_s < 0) throw ContractViolation("negative fee flow");
  if (era != Era::PbsEra && (f_b != 0 || m_p != 0))
    throw ContractViolation("builder bribe outside the builder-market era");

  v_hat = v_u + m_s + m_b + (era == Era::PbsEra ? m_p : 0);
  pi_u = v_u - f_u;
  pi_s = m_s - f_s;
  switch (era) {
    case Era::Baseline:
    case Era::PgaEra:
    case Era::RelayEra:
      pi_b = m_b + f_s + f_u + reward;
      pi_p = 0;
      break;
    case Era::Eip1559Era:
      pi_b = m_b + t_u + t_s + reward;
      pi_p = 0;
      break;
    case Era::PbsEra:
      pi_b = m_b + t_u + t_s - f_b;
      pi_p = m_p + f_b + reward;
      break;
  }
  total_surplus = pi_u + pi_s + pi_b + pi_p;
  if (total_surplus != v_hat + reward - burn())
    throw ContractViolation("ledger imbalance: payoffs do not sum to value plus reward minus burn");
}

std::size_t select_header(std::span<const SealedHeader> headers) {
  if (headers.empty()) throw ContractViolation("no headers to select from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < headers.size(); ++i) {
    const SealedHeader& a = headers[i];
    const SealedHeader& b = headers[best];
    if (a.bribe > b.bribe ||
        (a.bribe == b.bribe &&
         (a.relay_id < b.relay_id ||
          (a.relay_id == b.relay_id && a.builder_id < b.builder_id)))) {
      best = i;
    }
  }
  return best;
}

BlockResult run_block(const EraConfig& cfg, const SlotInput& slot, PipelineState& state) {
  cfg.validate();
  state.fees.validate();
  if (slot.txs.size() != slot.tip_offers.size())
    throw ContractViolation("slot input with mismatched tip offers");

  if (cfg.era == Era::PbsEra) return run_pbs_block(cfg, slot, state);

  const Gas capacity = state.fees.max_gas;
  EraBuild build = is_burn_era(cfg.era) ? burn_era_candidates(cfg, slot, state, nullptr)
                                        : open_era_candidates(cfg, slot, capacity);
  AuctionPass pass = run_block_auction(build.candidates, capacity, cfg.auction_rule);
  return finish_block(cfg, slot, state, build, pass);
}

namespace {

EraConfig adapt_era(const PipelineScenario& scenario, Era era) {
  EraConfig cfg = scenario.era;
  if (era != cfg.era) {
    cfg.era = era;
    switch (era) {
      case Era::Baseline:
      case Era::PgaEra:
        cfg.relay_count = 0;
        break;
      case Era::RelayEra:
      case Era::Eip1559Era:
        cfg.relay_count = std::max(1, cfg.relay_count);
        break;
      case Era::PbsEra:
        cfg.relay_count = std::max(1, cfg.relay_count);
        cfg.builder_count = std::max(1, cfg.builder_count);
        break;
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace

RunReport run_epochs(const PipelineScenario& scenario, Era era, std::uint64_t seed) {
  if (scenario.epochs <= 0) throw ConfigError("epochs must be positive");
  scenario.mempool.validate();
  EraConfig cfg = adapt_era(scenario, era);

  RunReport report;
  report.era = era;
  report.totals.era = era;
  PipelineState state{scenario.feemarket, scenario.min_tip};
  state.fees.validate();

  const int slots = scenario.epochs * cfg.slots_per_epoch;
  double efficiency_sum = 0;
  for (int slot = 0; slot < slots; ++slot) {
    SlotInput input = generate_slot_input(Rng::mix(seed, (std::uint64_t)slot), scenario.mempool);
    BlockResult block = run_block(cfg, input, state);

    SlotRow row;
    row.slot = slot;
    row.era = era;
    row.ledger = block.ledger;
    row.efficiency = block.efficiency;
    row.gas_used = block.gas_used;
    row.base_fee = block.base_fee;
    for (const MevEvent& ev : block.events)
      (ev.classification == MevClass::Diverting ? row.mev_diverted : row.mev_created) +=
          ev.captured_value;
    row.events = block.events;
    report.rows.push_back(row);

    ComparisonRow& tot = report.totals;
    tot.pi_u += block.ledger.pi_u;
    tot.pi_s += block.ledger.pi_s;
    tot.pi_b += block.ledger.pi_b;
    tot.pi_p += block.ledger.pi_p;
    tot.total_surplus += block.ledger.total_surplus;
    tot.v_hat += block.ledger.v_hat;
    tot.reward += block.ledger.reward;
    tot.burn += block.ledger.burn();
    tot.bribes += block.ledger.f_b;
    tot.mev_diverted += row.mev_diverted;
    tot.mev_created += row.mev_created;
    tot.pga_sunk += block.ledger.pga_sunk;
    efficiency_sum += block.efficiency;
  }
  report.totals.mean_efficiency = slots > 0 ? efficiency_sum / slots : 1.0;
  return report;
}

std::vector<ComparisonRow> compare_eras(const PipelineScenario& scenario,
                                        std::span<const Era> eras, std::uint64_t seed) {
  if (eras.empty()) throw ConfigError("no eras to compare");
  std::vector<ComparisonRow> rows;
  for (Era era : eras) rows.push_back(run_epochs(scenario, era, seed).totals);
  return rows;
}

}  // namespace blocklab
