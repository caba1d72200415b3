#include "blocklab/feemarket.hpp"

#include <algorithm>

#include "blocklab/auction.hpp"

namespace blocklab {

void BaseFeeState::validate() const {
  if (target_gas <= 0 || target_gas > max_gas)
    throw ConfigError("gas target must be positive and at most the block maximum");
  if (adjustment_denominator <= 0) throw ConfigError("adjustment denominator must be positive");
  if (min_base_fee < 0) throw ConfigError("minimum base fee must be non-negative");
  if (base_fee < min_base_fee) throw ConfigError("base fee below its floor");
  if (cumulative_burn < 0) throw ConfigError("cumulative burn must be non-negative");
}

BaseFeeState update_base_fee(const BaseFeeState& state, Gas gas_used_prev) {
  state.validate();
  if (gas_used_prev < 0 || gas_used_prev > state.max_gas)
    throw ContractViolation("gas used outside [0, max_gas]");

  const Gas delta = gas_used_prev - state.target_gas;
  const Value adjustment = floor_div((__int128)state.base_fee * delta,
                                     state.target_gas * state.adjustment_denominator);
  BaseFeeState next = state;
  next.base_fee = std::max(state.min_base_fee, state.base_fee + adjustment);
  return next;
}

std::vector<int> admit_demand(std::span<const DemandEntry> users, const BaseFeeState& state,
                              Value min_tip) {
  state.validate();
  if (min_tip < 0) throw ConfigError("minimum tip must be non-negative");

  std::vector<const DemandEntry*> takers;
  Gas total = 0;
  for (const DemandEntry& u : users) {
    if (u.gas <= 0) throw ConfigError("demand gas must be positive");
    if (u.value_per_gas >= state.base_fee + min_tip) {
      takers.push_back(&u);
      total += u.gas;
    }
  }

  std::vector<int> admitted;
  if (total <= state.max_gas) {
    for (const DemandEntry* u : takers) admitted.push_back(u->user_id);
    return admitted;
  }

  // Oversubscribed: the block goes to the best tip budgets per gas.
  BidProfile profile;
  profile.capacity = state.max_gas;
  for (const DemandEntry* u : takers)
    profile.bids.push_back({u->user_id, (u->value_per_gas - state.base_fee) * u->gas, u->gas});
  return allocate_greedy(profile).winners;
}

BurnSplit burn_and_split(std::span<const ChargedTx> txs, const BaseFeeState& state) {
  state.validate();
  BurnSplit split;
  split.state = state;
  for (const ChargedTx& tx : txs) {
    if (tx.gas <= 0) throw ConfigError("charged gas must be positive");
    if (tx.tip < 0) throw ConfigError("tip must be non-negative");
    FeeQuote q{tx.tx_id, state.base_fee * tx.gas, tx.tip};
    split.burn += q.base_component;
    split.tips += q.tip_component;
    split.quotes.push_back(q);
  }
  split.state.cumulative_burn += split.burn;
  return split;
}

std::optional<Gas> find_contraction_threshold(Value issuance,
                                              const std::function<Rational(Gas)>& burn_schedule,
                                              Gas max_volume) {
  if (max_volume < 0) throw ConfigError("maximum volume must be non-negative");
  const Rational target{issuance};

  // Best-effort monotonicity screen on a coarse grid before trusting bisection.
  constexpr int kSamples = 64;
  Rational prev = burn_schedule(0);
  for (int i = 1; i <= kSamples; ++i) {
    Gas g = max_volume <= kSamples ? std::min<Gas>(i, max_volume)
                                   : (Gas)((__int128)max_volume * i / kSamples);
    Rational here = burn_schedule(g);
    if (here < prev) throw ConfigError("burn schedule is not non-decreasing");
    prev = here;
  }

  if (!(burn_schedule(max_volume) > target)) return std::nullopt;

  Gas lo = 0, hi = max_volume;
  while (lo < hi) {
    Gas mid = lo + (hi - lo) / 2;
    if (burn_schedule(mid) > target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace blocklab
