#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "blocklab/auction.hpp"
#include "blocklab/types.hpp"

namespace blocklab {

// What a pending transaction carries besides its own value. Plain payments
// carry nothing; the other kinds embed a quantity someone else could earn by
// ordering around them.
enum class MevKind { Plain, ArbitrageCapture, AnomalyCreator, VulnerableFunds };

// How that embedded quantity is harvested: copy the move and jump the queue,
// or trade right after it lands.
enum class MevAction { FrontRun, BackRun };

// Diverting extraction takes value the original sender would have realized;
// creating extraction mints new value the sender never had.
enum class MevClass { Diverting, Creating };

const char* mev_kind_name(MevKind kind);
std::optional<MevKind> mev_kind_from_name(const std::string& name);
const char* mev_class_name(MevClass cls);

struct MempoolTx {
  int tx_id;
  int sender_id;
  Gas size;
  Value true_value;  // what the sender realizes if included unmolested
  MevKind kind{MevKind::Plain};
  bool visible{true};
  // Present exactly when kind != Plain. For the diverting kinds this must
  // equal true_value: whatever a front-runner captures is what the sender
  // loses, and the accounting balances to the unit.
  std::optional<Value> embedded_opportunity;

  void validate() const;
};

// Transactions that must land together, in the given order, or not at all.
struct Bundle {
  int bundle_id;
  int searcher_id;
  std::vector<MempoolTx> txs;
  Value bid;
};

struct MevEvent {
  int searcher_id;
  int source_tx;
  Value captured_value;
  MevClass classification;
};

struct Opportunity {
  int source_tx_id;
  Value value;
  MevAction action;
};

// Extraction chances readable from the open mempool: visible non-plain
// transactions only. Private transactions never show up here.
std::vector<Opportunity> scan_mempool(std::span<const MempoolTx> mempool);

// A transaction a searcher injects to harvest one opportunity.
struct SearcherTx {
  int tx_id;
  int searcher_id;
  int source_tx_id;
  MevAction action;
  Gas size;
};

using BlockTx = std::variant<MempoolTx, SearcherTx>;

struct ExtractionResult {
  std::vector<MevEvent> events;
  // Realized value per included user transaction, in block order.
  std::vector<std::pair<int, Value>> realized_user_values;
  Value total_user_value{0};      // sum of realized user values
  Value total_searcher_value{0};  // sum of captured values
};

// Replays a block order and settles who realizes what. A front-run succeeds
// only if the searcher transaction sits before its source; a back-run anywhere
// after it. Each opportunity pays out at most once (first claimant in block
// order); searcher transactions pointing at a source that is not in the block
// realize nothing.
ExtractionResult apply_extraction(std::span<const BlockTx> block_order);

struct PgaConfig {
  int searchers{2};          // at least 2
  Value increment{1};        // positive escalation step
  Value per_bid_gas_cost{0}; // charged per bid placed, win or lose
};

struct PgaResult {
  std::optional<int> winner;        // searcher index, absent when nobody bid
  Value winning_fee{0};
  std::vector<Value> sunk_costs;    // per searcher, paid regardless of outcome
  int bids_placed{0};
  Value miner_revenue{0};           // winning fee plus every participant's gas
};

// Open outbidding war for one opportunity. Searchers take turns raising the
// standing fee by the increment while the value left after the new fee and
// their own accumulated gas stays non-negative. Myopic, deterministic, and
// all-pay: each bid burns per_bid_gas_cost whether or not it ends up on top.
PgaResult run_pga(Value opportunity_value, const PgaConfig& config);

struct PricedTx {
  MempoolTx tx;
  Value fee;  // total fee offered for inclusion
};

struct RelayConfig {
  int relay_count{0};
};

// Moves the given transactions and bundles off the open mempool (visible =
// false) and returns their fees as a sealed bid profile: one bid per
// transaction, one aggregate bid per bundle. Requires a running relay.
BidProfile route_private(std::vector<PricedTx>& txs, std::vector<Bundle>& bundles,
                         const RelayConfig& relay, Gas capacity);

// Agent ids for bundle bids in sealed profiles live above this base so they
// never collide with transaction ids.
inline constexpr int kBundleAgentBase = 1'000'000;

}  // namespace blocklab
