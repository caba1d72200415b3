#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blocklab/auction.hpp"
#include "blocklab/feemarket.hpp"
#include "blocklab/mev.hpp"
#include "blocklab/types.hpp"

namespace blocklab {

// Block production regimes, in historical order: open fee auction only;
// open outbidding wars over ordering; sealed searcher bids through relays;
// protocol reserve price with fee burn; outsourced building with header-only
// bribe competition.
enum class Era { Baseline, PgaEra, RelayEra, Eip1559Era, PbsEra };

const char* era_name(Era era);
std::optional<Era> era_from_name(const std::string& name);

struct EraConfig {
  Era era{Era::Baseline};
  PricingRule auction_rule{PricingRule::DP};
  Value block_reward{0};
  int relay_count{0};   // must be 0 before the relay era
  int builder_count{1}; // meaningful in the builder-market era only
  int slot_seconds{12};
  int slots_per_epoch{32};

  int searcher_count{2};
  Value pga_increment{1};
  Value pga_bid_gas_cost{0};
  // Sealed searcher bids offer this fraction of the opportunity (per mille),
  // less a per-searcher jitter, instead of escalating openly.
  int searcher_shade_milli{800};
  // Fraction (per mille) of a builder's tip revenue plus own extraction
  // forwarded to the proposer as the block bribe.
  int builder_bribe_milli{900};
  Value builder_self_mev{0};   // extraction the block producer does itself
  Value proposer_self_mev{0};  // extraction the proposer does itself
  Gas searcher_tx_gas{21'000};

  void validate() const;
};

struct MempoolParams {
  int tx_count{120};
  Gas gas_min{21'000};
  Gas gas_max{500'000};
  Gas gas_granularity{1'000};  // drawn sizes are multiples of this
  Value value_per_gas_min{2};
  Value value_per_gas_max{60};
  Value tip_per_gas_min{1};
  Value tip_per_gas_max{5};
  // Kind mix per mille; must sum to 1000.
  int mix_plain_milli{850};
  int mix_arbitrage_milli{60};
  int mix_anomaly_milli{60};
  int mix_vulnerable_milli{30};
  // Embedded opportunities are a price gap across two venues times a traded
  // quantity, both drawn uniformly.
  Value gap_min{10};
  Value gap_max{100};
  Gas qty_min{100};
  Gas qty_max{1'000};
  int visible_milli{1000};

  void validate() const;
};

// Same seed, same transactions, byte for byte.
std::vector<MempoolTx> generate_mempool(std::uint64_t seed, const MempoolParams& params);

// A slot's raw demand: the transactions plus each sender's total tip offer
// (drawn from an independent substream so the transaction draw stays stable).
struct SlotInput {
  std::vector<MempoolTx> txs;
  std::vector<Value> tip_offers;
};

SlotInput generate_slot_input(std::uint64_t seed, const MempoolParams& params);

// Every value transfer in one block, in protocol units. Raw flows are filled
// by the block builder code; finalize() derives the payoffs and enforces the
// accounting identity: payoffs sum to realized value plus the block reward
// minus the burn, exactly.
struct FlowLedger {
  Value v_u{0};       // value users realize
  Value m_s{0};       // value searchers extract
  Value m_b{0};       // value the block producer extracts itself
  Value m_p{0};       // value the proposer extracts itself
  Value f_u{0};       // user fees (burn eras: derived as b_u + t_u)
  Value f_s{0};       // searcher fees (burn eras: derived as b_s + t_s)
  Value f_b{0};       // builder bribe to the proposer
  Value t_u{0};       // user tips kept by the producer
  Value t_s{0};       // searcher tips kept by the producer
  Value b_u{0};       // user fees burned
  Value b_s{0};       // searcher fees burned
  Value reward{0};    // protocol block reward
  Value pga_sunk{0};  // gas burned on losing open-auction bids (inside f_s)

  Value pi_u{0};
  Value pi_s{0};
  Value pi_b{0};
  Value pi_p{0};
  Value total_surplus{0};
  Value v_hat{0};  // realized value: v_u + m_s + m_b (+ m_p with a proposer)

  Value burn() const { return b_u + b_s; }
  void finalize(Era era);
};

// What the proposer is allowed to see before signing: no transactions, only
// a commitment and the bribe. Winner selection takes these and nothing else.
struct SealedHeader {
  std::uint64_t header_hash;
  Value bribe;
  int relay_id;
  int builder_id;
};

// Highest bribe wins; ties go to the lower relay id, then the lower builder id.
std::size_t select_header(std::span<const SealedHeader> headers);

struct PipelineState {
  BaseFeeState fees;
  Value min_tip{1};
};

struct BlockResult {
  std::vector<BlockTx> order;
  std::vector<MevEvent> events;
  FlowLedger ledger;
  double efficiency{1.0};  // realized user value over the exact optimum
  Gas gas_used{0};
  Value base_fee{0};           // reserve price this block ran under (burn eras)
  int winning_builder{-1};     // builder-market era only
  std::vector<SealedHeader> headers;  // what the proposer saw
};

BlockResult run_block(const EraConfig& cfg, const SlotInput& slot, PipelineState& state);

struct SlotRow {
  int slot{0};
  Era era{Era::Baseline};
  FlowLedger ledger;
  double efficiency{1.0};
  Gas gas_used{0};
  Value base_fee{0};
  Value mev_diverted{0};
  Value mev_created{0};
  std::vector<MevEvent> events;
};

struct ComparisonRow {
  Era era{Era::Baseline};
  Value pi_u{0}, pi_s{0}, pi_b{0}, pi_p{0};
  Value total_surplus{0}, v_hat{0}, reward{0}, burn{0}, bribes{0};
  Value mev_diverted{0}, mev_created{0}, pga_sunk{0};
  double mean_efficiency{1.0};
};

struct RunReport {
  Era era{Era::Baseline};
  std::vector<SlotRow> rows;
  ComparisonRow totals;
};

struct PipelineScenario {
  EraConfig era;
  std::vector<Era> eras;  // more than one entry switches the run into a comparison
  int epochs{1};
  MempoolParams mempool;
  BaseFeeState feemarket;
  Value min_tip{1};
};

// Runs epochs * slots_per_epoch blocks under one era. Slot inputs derive from
// (seed, slot) only, so different eras on the same seed face identical demand.
RunReport run_epochs(const PipelineScenario& scenario, Era era, std::uint64_t seed);

// One aggregate row per era over the shared slot stream.
std::vector<ComparisonRow> compare_eras(const PipelineScenario& scenario,
                                        std::span<const Era> eras, std::uint64_t seed);

}  // namespace blocklab
