#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "blocklab/rational.hpp"
#include "blocklab/types.hpp"

namespace blocklab {

// Protocol fee controller state. The reserve price moves with realized block
// fullness and the burned portion leaves the system for good.
struct BaseFeeState {
  Value base_fee{1};
  Gas target_gas{15'000'000};
  Gas max_gas{30'000'000};
  std::int64_t adjustment_denominator{8};
  Value cumulative_burn{0};
  Value min_base_fee{1};

  void validate() const;
};

// Next-block reserve price from the previous block's gas. Exact integer rule:
//   base' = max(min_base_fee, base + floor(base * (gas_used - target) / (target * d)))
// with the division rounding toward negative infinity. A block exactly on
// target leaves the price unchanged.
BaseFeeState update_base_fee(const BaseFeeState& state, Gas gas_used_prev);

struct DemandEntry {
  int user_id;
  Value value_per_gas;
  Gas gas;
};

// Who gets in at the current reserve price: everyone whose per-gas value
// covers base fee plus the minimum tip. If the takers overflow the block,
// the greedy knapsack on tip budgets (value above the base fee) decides.
std::vector<int> admit_demand(std::span<const DemandEntry> users, const BaseFeeState& state,
                              Value min_tip = 1);

struct FeeQuote {
  int tx_id;
  Value base_component;  // burned: base_fee * gas
  Value tip_component;   // kept by the block producer
};

struct ChargedTx {
  int tx_id;
  Gas gas;
  Value tip;
};

struct BurnSplit {
  Value burn{0};
  Value tips{0};
  BaseFeeState state;  // input state with the burn added
  std::vector<FeeQuote> quotes;
};

// Splits each included transaction's fee into the burned base component and
// the producer tip, and accrues the burn.
BurnSplit burn_and_split(std::span<const ChargedTx> txs, const BaseFeeState& state);

// Smallest gas volume at which the schedule burns strictly more than the
// issuance, found by bisection over [0, max_volume]. Beyond that volume the
// producers' net new supply turns negative. Returns nothing when even the
// maximum volume does not burn past the issuance. The schedule must be
// non-decreasing; decreasing samples raise ConfigError.
std::optional<Gas> find_contraction_threshold(Value issuance,
                                              const std::function<Rational(Gas)>& burn_schedule,
                                              Gas max_volume);

}  // namespace blocklab
