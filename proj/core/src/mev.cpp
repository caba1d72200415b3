#include "blocklab/mev.hpp"

#include <string>
#include <unordered_map>
#include <unordered_set>

namespace blocklab {

const char* mev_kind_name(MevKind kind) {
  switch (kind) {
    case MevKind::Plain: return "plain";
    case MevKind::ArbitrageCapture: return "arbitrage";
    case MevKind::AnomalyCreator: return "anomaly";
    case MevKind::VulnerableFunds: return "vulnerable";
  }
  throw ContractViolation("unknown mev kind");
}

std::optional<MevKind> mev_kind_from_name(const std::string& name) {
  if (name == "plain") return MevKind::Plain;
  if (name == "arbitrage") return MevKind::ArbitrageCapture;
  if (name == "anomaly") return MevKind::AnomalyCreator;
  if (name == "vulnerable") return MevKind::VulnerableFunds;
  return std::nullopt;
}

const char* mev_class_name(MevClass cls) {
  return cls == MevClass::Diverting ? "diverting" : "creating";
}

void MempoolTx::validate() const {
  if (tx_id < 0) throw ConfigError("tx id must be non-negative");
  if (size <= 0) throw ConfigError("tx size must be positive");
  if (true_value < 0) throw ConfigError("tx value must be non-negative");
  if (kind == MevKind::Plain) {
    if (embedded_opportunity)
      throw ConfigError("plain tx must not carry an opportunity");
    return;
  }
  if (!embedded_opportunity)
    throw ConfigError("non-plain tx must carry an opportunity");
  if (*embedded_opportunity < 0) throw ConfigError("opportunity must be non-negative");
  const bool diverting = kind == MevKind::ArbitrageCapture || kind == MevKind::VulnerableFunds;
  if (diverting && *embedded_opportunity != true_value)
    throw ConfigError("divertable tx must be worth exactly its opportunity");
}

std::vector<Opportunity> scan_mempool(std::span<const MempoolTx> mempool) {
  std::vector<Opportunity> found;
  for (const MempoolTx& tx : mempool) {
    if (!tx.visible || tx.kind == MevKind::Plain) continue;
    MevAction action =
        tx.kind == MevKind::AnomalyCreator ? MevAction::BackRun : MevAction::FrontRun;
    found.push_back({tx.tx_id, *tx.embedded_opportunity, action});
  }
  return found;
}

ExtractionResult apply_extraction(std::span<const BlockTx> block_order) {
  ExtractionResult res;

  std::unordered_map<int, std::size_t> user_pos;
  for (std::size_t i = 0; i < block_order.size(); ++i) {
    if (const MempoolTx* tx = std::get_if<MempoolTx>(&block_order[i])) {
      tx->validate();
      if (!user_pos.emplace(tx->tx_id, i).second)
        throw ContractViolation("duplicate user tx in block order");
    }
  }

  // One payout per source: the first correctly placed claimant in block order
  // takes it, later claimants execute against an already-settled state.
  std::unordered_set<int> claimed;
  std::unordered_map<int, Value> diverted;  // source tx id -> value taken from it
  for (std::size_t i = 0; i < block_order.size(); ++i) {
    const SearcherTx* s = std::get_if<SearcherTx>(&block_order[i]);
    if (!s) continue;
    auto src = user_pos.find(s->source_tx_id);
    if (src == user_pos.end()) continue;  // source absent: realizes nothing
    const MempoolTx& source = std::get<MempoolTx>(block_order[src->second]);
    if (source.kind == MevKind::Plain) continue;
    const bool placed = s->action == MevAction::FrontRun ? i < src->second : i > src->second;
    const bool matches =
        (s->action == MevAction::BackRun) == (source.kind == MevKind::AnomalyCreator);
    if (!placed || !matches || !claimed.insert(source.tx_id).second) continue;

    Value captured = *source.embedded_opportunity;
    MevClass cls =
        s->action == MevAction::FrontRun ? MevClass::Diverting : MevClass::Creating;
    if (cls == MevClass::Diverting) diverted[source.tx_id] = captured;
    res.events.push_back({s->searcher_id, source.tx_id, captured, cls});
    res.total_searcher_value += captured;
  }

  for (const BlockTx& btx : block_order) {
    if (const MempoolTx* tx = std::get_if<MempoolTx>(&btx)) {
      Value realized = tx->true_value;
      auto it = diverted.find(tx->tx_id);
      if (it != diverted.end()) realized -= it->second;
      res.realized_user_values.emplace_back(tx->tx_id, realized);
      res.total_user_value += realized;
    }
  }
  return res;
}

PgaResult run_pga(Value opportunity_value, const PgaConfig& config) {
  if (config.searchers < 2) throw ConfigError("an outbidding war needs at least 2 searchers");
  if (config.increment <= 0) throw ConfigError("escalation increment must be positive");
  if (config.per_bid_gas_cost < 0) throw ConfigError("gas cost must be non-negative");
  if (opportunity_value < 0) throw ConfigError("opportunity value must be non-negative");

  PgaResult res;
  res.sunk_costs.assign(config.searchers, 0);

  Value fee = 0;
  int leader = -1;
  bool moved = true;
  // Round-robin turns; a searcher tops the standing fee while the value net
  // of the new fee and their own gas spend so far stays non-negative.
  while (moved) {
    moved = false;
    for (int s = 0; s < config.searchers; ++s) {
      if (s == leader) continue;
      Value next = fee + config.increment;
      Value margin = opportunity_value - next - (res.sunk_costs[s] + config.per_bid_gas_cost);
      if (margin >= 0) {
        fee = next;
        leader = s;
        res.sunk_costs[s] += config.per_bid_gas_cost;
        ++res.bids_placed;
        moved = true;
      }
    }
  }

  if (leader >= 0) {
    res.winner = leader;
    res.winning_fee = fee;
  }
  res.miner_revenue = res.winning_fee;
  for (Value c : res.sunk_costs) res.miner_revenue += c;
  return res;
}

BidProfile route_private(std::vector<PricedTx>& txs, std::vector<Bundle>& bundles,
                         const RelayConfig& relay, Gas capacity) {
  if (relay.relay_count <= 0)
    throw ConfigError("private routing needs a running relay");

  BidProfile profile;
  profile.capacity = capacity;
  for (PricedTx& p : txs) {
    p.tx.visible = false;
    profile.bids.push_back({p.tx.tx_id, p.fee, p.tx.size});
  }
  for (Bundle& b : bundles) {
    Gas size = 0;
    for (MempoolTx& tx : b.txs) {
      tx.visible = false;
      size += tx.size;
    }
    if (size <= 0) throw ConfigError("bundle must contain at least one tx");
    profile.bids.push_back({kBundleAgentBase + b.bundle_id, b.bid, size});
  }
  profile.validate();
  return profile;
}

}  // namespace blocklab
