#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "blocklab/knapsack.hpp"
#include "blocklab/types.hpp"

namespace blocklab {

enum class PricingRule { DP, GSP, UP, CRITICAL, VCG_EXACT, VCG_GREEDY };

const char* pricing_rule_name(PricingRule rule);
std::optional<PricingRule> pricing_rule_from_name(const std::string& name);

struct Bid {
  int agent_id;  // unique, non-negative
  Value amount;  // non-negative total bid for the whole slot
  Gas size;      // positive
};

struct BidProfile {
  std::vector<Bid> bids;
  Gas capacity{0};

  void validate() const;
  const Bid* find(int agent_id) const;
};

struct AuctionOutcome {
  PricingRule rule{PricingRule::DP};
  std::vector<int> winners;                      // allocation order
  std::vector<std::pair<int, Value>> payments;   // one entry per winner, same order
  Value revenue{0};
  Value allocated_value{0};                      // sum of winning bids
  // Winners charged above their bid. Can only happen on heterogeneous sizes
  // when the final greedy comparison displaces the density order; surfaced
  // here instead of silently clamped.
  std::vector<int> ir_violations;

  bool won(int agent_id) const;
  Value payment_for(int agent_id) const;  // 0 for losers
};

struct GreedyAllocation {
  std::vector<int> winners;  // packing order
  bool step3_applied{false};
};

// Winner selection by the 0-1 greedy with the final single-item comparison.
GreedyAllocation allocate_greedy(const BidProfile& profile);

// Deliberately bad rule for exercising the monotonicity checker: packs in
// RISING density order, so raising a bid can evict its own agent.
std::vector<int> allocate_lowest_density_first(const BidProfile& profile);

// Pay-as-bid: every winner pays their own bid.
AuctionOutcome price_dp(const BidProfile& profile, const std::vector<int>& winners);

// Generalized second price over the per-size ladder: the winner ranked j pays
// the per-size bid of rank j+1 times their own size; the last winner pays the
// highest losing per-size bid (or nothing when no one lost).
AuctionOutcome price_gsp(const BidProfile& profile, const std::vector<int>& winners);

// Uniform price: every winner pays the highest losing per-size bid times
// their own size (zero when no one lost).
AuctionOutcome price_up(const BidProfile& profile, const std::vector<int>& winners);

// Threshold payment: the smallest integer bid that still wins, holding the
// other bids fixed. Found by bisection over re-runs of the greedy allocation;
// during a probe the incumbent wins density ties regardless of id.
AuctionOutcome critical_payments(const BidProfile& profile);

enum class VcgWelfare { EXACT, GREEDY };

// Externality payment: what the others would get without i, minus what the
// others get in the chosen allocation. EXACT prices over the optimal packing
// (n <= 20); GREEDY prices over the greedy allocation and is intentionally
// kept as a negative control for incentive checks.
AuctionOutcome vcg_payments(const BidProfile& profile, VcgWelfare welfare,
                            const SolverLimits& limits = {});

// One allocation + pricing pass under the given rule.
AuctionOutcome run_auction(const BidProfile& profile, PricingRule rule,
                           const SolverLimits& limits = {});

struct DeviationWitness {
  int agent_id;
  Value truthful_bid;
  Value deviant_bid;
  Value truthful_utility;
  Value deviant_utility;
};

struct TruthfulnessReport {
  PricingRule rule;
  bool truthful{true};
  std::vector<DeviationWitness> witnesses;  // at most one per agent
  std::int64_t evaluations{0};
};

// Exhaustive unilateral deviation search from the truthful profile (bid
// amounts are the true values). Scans every agent over the bid grid
// {0, step, 2*step, ...} up to twice the highest true value. n <= 5; refuses
// searches above eval_budget outcome evaluations.
TruthfulnessReport verify_truthfulness(PricingRule rule, const BidProfile& truthful,
                                       Value grid_step = 1,
                                       std::int64_t eval_budget = 10'000'000);

struct MonotonicityWitness {
  std::size_t instance_index;
  int agent_id;
  Value original_bid;
  Value raised_bid;
};

struct MonotonicityReport {
  bool monotone{true};
  std::optional<MonotonicityWitness> witness;
};

using AllocationFn = std::function<std::vector<int>(const BidProfile&)>;

// Checks that raising a winner's bid never turns them into a loser, scanning
// every upward grid perturbation on every given profile (n <= 6 each).
MonotonicityReport verify_monotonicity(const AllocationFn& allocate,
                                       std::span<const BidProfile> profiles,
                                       Value grid_step = 1);

}  // namespace blocklab
