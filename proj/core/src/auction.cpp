#include "blocklab/auction.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace blocklab {

namespace {

KnapsackInstance to_instance(const BidProfile& profile) {
  KnapsackInstance inst;
  inst.capacity = profile.capacity;
  inst.items.reserve(profile.bids.size());
  for (const Bid& b : profile.bids) inst.items.push_back({b.agent_id, b.size, b.amount});
  return inst;
}

// Per-size bid comparison, exact: amount_a / size_a vs amount_b / size_b.
bool denser_bid(const Bid& a, const Bid& b) {
  return (__int128)a.amount * b.size > (__int128)b.amount * a.size;
}

// floor(amount_src * size_own / size_src): the ladder price under the rank
// below, scaled to the payer's own slot size.
Value ladder_price(const Bid& source, const Bid& payer) {
  return floor_div((__int128)source.amount * payer.size, source.size);
}

AuctionOutcome finish(PricingRule rule, const BidProfile& profile, std::vector<int> winners,
                      std::vector<std::pair<int, Value>> payments) {
  AuctionOutcome out;
  out.rule = rule;
  out.winners = std::move(winners);
  out.payments = std::move(payments);
  for (const auto& [agent, pay] : out.payments) {
    out.revenue += pay;
    const Bid* b = profile.find(agent);
    if (!b) throw ContractViolation("winner not present in profile");
    out.allocated_value += b->amount;
    if (pay > b->amount) out.ir_violations.push_back(agent);
  }
  return out;
}

std::vector<const Bid*> ranked_winners(const BidProfile& profile, const std::vector<int>& winners) {
  std::vector<const Bid*> ranked;
  ranked.reserve(winners.size());
  for (int id : winners) {
    const Bid* b = profile.find(id);
    if (!b) throw ContractViolation("winner not present in profile");
    ranked.push_back(b);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Bid* a, const Bid* b) {
    if (denser_bid(*a, *b)) return true;
    if (denser_bid(*b, *a)) return false;
    return a->agent_id < b->agent_id;
  });
  return ranked;
}

// Highest per-size bid among the losers, ties toward lower id. Null when
// everyone won.
const Bid* top_loser(const BidProfile& profile, const std::vector<int>& winners) {
  std::unordered_set<int> won(winners.begin(), winners.end());
  const Bid* best = nullptr;
  for (const Bid& b : profile.bids) {
    if (won.count(b.agent_id)) continue;
    if (!best || denser_bid(b, *best) ||
        (!denser_bid(*best, b) && b.agent_id < best->agent_id)) {
      best = &b;
    }
  }
  return best;
}

bool greedy_wins(const BidProfile& profile, int agent, Value bid_amount) {
  BidProfile probe = profile;
  for (Bid& b : probe.bids)
    if (b.agent_id == agent) b.amount = bid_amount;
  KnapsackInstance inst = to_instance(probe);
  PackingResult r = greedy_01_favoring(inst, /*apply_step3=*/true, agent);
  return std::find(r.selected.begin(), r.selected.end(), agent) != r.selected.end();
}

Value greedy_welfare(const BidProfile& profile) {
  if (profile.bids.empty()) return 0;
  KnapsackInstance inst = to_instance(profile);
  return greedy_01(inst, /*apply_step3=*/true).value_int();
}

Value exact_welfare(const BidProfile& profile, const SolverLimits& limits) {
  if (profile.bids.empty()) return 0;
  return solve_exact_value(to_instance(profile), limits);
}

BidProfile without_agent(const BidProfile& profile, int agent) {
  BidProfile rest;
  rest.capacity = profile.capacity;
  for (const Bid& b : profile.bids)
    if (b.agent_id != agent) rest.bids.push_back(b);
  return rest;
}

}  // namespace

const char* pricing_rule_name(PricingRule rule) {
  switch (rule) {
    case PricingRule::DP: return "dp";
    case PricingRule::GSP: return "gsp";
    case PricingRule::UP: return "up";
    case PricingRule::CRITICAL: return "critical";
    case PricingRule::VCG_EXACT: return "vcg_exact";
    case PricingRule::VCG_GREEDY: return "vcg_greedy";
  }
  throw ContractViolation("unknown pricing rule");
}

std::optional<PricingRule> pricing_rule_from_name(const std::string& name) {
  if (name == "dp") return PricingRule::DP;
  if (name == "gsp") return PricingRule::GSP;
  if (name == "up") return PricingRule::UP;
  if (name == "critical") return PricingRule::CRITICAL;
  if (name == "vcg_exact" || name == "vcg-exact") return PricingRule::VCG_EXACT;
  if (name == "vcg_greedy" || name == "vcg-greedy") return PricingRule::VCG_GREEDY;
  return std::nullopt;
}

void BidProfile::validate() const {
  if (capacity <= 0) throw ConfigError("auction capacity must be positive");
  std::unordered_set<int> ids;
  for (const Bid& b : bids) {
    if (b.agent_id < 0) throw ConfigError("agent id must be non-negative");
    if (!ids.insert(b.agent_id).second)
      throw ConfigError("duplicate agent id " + std::to_string(b.agent_id));
    if (b.amount < 0) throw ConfigError("bid must be non-negative");
    if (b.size <= 0) throw ConfigError("bid size must be positive");
  }
}

const Bid* BidProfile::find(int agent_id) const {
  for (const Bid& b : bids)
    if (b.agent_id == agent_id) return &b;
  return nullptr;
}

bool AuctionOutcome::won(int agent_id) const {
  return std::find(winners.begin(), winners.end(), agent_id) != winners.end();
}

Value AuctionOutcome::payment_for(int agent_id) const {
  for (const auto& [agent, pay] : payments)
    if (agent == agent_id) return pay;
  return 0;
}

GreedyAllocation allocate_greedy(const BidProfile& profile) {
  profile.validate();
  GreedyAllocation alloc;
  if (profile.bids.empty()) return alloc;
  KnapsackInstance inst = to_instance(profile);
  PackingResult with = greedy_01(inst, /*apply_step3=*/true);
  PackingResult without = greedy_01(inst, /*apply_step3=*/false);
  alloc.winners = with.selected;
  alloc.step3_applied = with.selected != without.selected;
  return alloc;
}

std::vector<int> allocate_lowest_density_first(const BidProfile& profile) {
  profile.validate();
  std::vector<const Bid*> order;
  for (const Bid& b : profile.bids) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(), [](const Bid* a, const Bid* b) {
    if (denser_bid(*b, *a)) return true;
    if (denser_bid(*a, *b)) return false;
    return a->agent_id < b->agent_id;
  });
  std::vector<int> winners;
  Gas remaining = profile.capacity;
  for (const Bid* b : order) {
    if (b->size <= remaining) {
      winners.push_back(b->agent_id);
      remaining -= b->size;
    }
  }
  return winners;
}

AuctionOutcome price_dp(const BidProfile& profile, const std::vector<int>& winners) {
  profile.validate();
  std::vector<std::pair<int, Value>> payments;
  for (int id : winners) {
    const Bid* b = profile.find(id);
    if (!b) throw ContractViolation("winner not present in profile");
    payments.emplace_back(id, b->amount);
  }
  return finish(PricingRule::DP, profile, winners, std::move(payments));
}

AuctionOutcome price_gsp(const BidProfile& profile, const std::vector<int>& winners) {
  profile.validate();
  std::vector<const Bid*> ranked = ranked_winners(profile, winners);
  const Bid* loser = top_loser(profile, winners);
  std::vector<std::pair<int, Value>> payments;
  for (std::size_t j = 0; j < ranked.size(); ++j) {
    const Bid* source = j + 1 < ranked.size() ? ranked[j + 1] : loser;
    Value pay = source ? ladder_price(*source, *ranked[j]) : 0;
    payments.emplace_back(ranked[j]->agent_id, pay);
  }
  return finish(PricingRule::GSP, profile, winners, std::move(payments));
}

AuctionOutcome price_up(const BidProfile& profile, const std::vector<int>& winners) {
  profile.validate();
  const Bid* loser = top_loser(profile, winners);
  std::vector<std::pair<int, Value>> payments;
  for (int id : winners) {
    const Bid* b = profile.find(id);
    if (!b) throw ContractViolation("winner not present in profile");
    payments.emplace_back(id, loser ? ladder_price(*loser, *b) : 0);
  }
  return finish(PricingRule::UP, profile, winners, std::move(payments));
}

AuctionOutcome critical_payments(const BidProfile& profile) {
  profile.validate();
  GreedyAllocation alloc = allocate_greedy(profile);
  std::vector<std::pair<int, Value>> payments;
  for (int id : alloc.winners) {
    const Bid* b = profile.find(id);
    // Winning is monotone in the own bid, so the threshold bisects cleanly.
    Value lo = 0, hi = b->amount;
    if (!greedy_wins(profile, id, lo)) {
      while (lo < hi) {
        Value mid = lo + (hi - lo) / 2;
        if (greedy_wins(profile, id, mid))
          hi = mid;
        else
          lo = mid + 1;
      }
    } else {
      hi = lo;
    }
    payments.emplace_back(id, hi);
  }
  return finish(PricingRule::CRITICAL, profile, alloc.winners, std::move(payments));
}

AuctionOutcome vcg_payments(const BidProfile& profile, VcgWelfare welfare,
                            const SolverLimits& limits) {
  profile.validate();
  const bool exact = welfare == VcgWelfare::EXACT;
  if (exact && profile.bids.size() > 20)
    throw LimitError("oracle limit: exact welfare pricing supports n <= 20");

  std::vector<int> winners;
  if (exact) {
    winners = profile.bids.empty() ? std::vector<int>{}
                                   : solve_exact(to_instance(profile), limits).selected;
  } else {
    winners = allocate_greedy(profile).winners;
  }

  Value allocated = 0;
  for (int id : winners) allocated += profile.find(id)->amount;

  std::vector<std::pair<int, Value>> payments;
  for (int id : winners) {
    BidProfile rest = without_agent(profile, id);
    Value rest_welfare = exact ? exact_welfare(rest, limits) : greedy_welfare(rest);
    Value others_here = allocated - profile.find(id)->amount;
    payments.emplace_back(id, rest_welfare - others_here);
  }
  return finish(exact ? PricingRule::VCG_EXACT : PricingRule::VCG_GREEDY, profile, winners,
                std::move(payments));
}

AuctionOutcome run_auction(const BidProfile& profile, PricingRule rule,
                           const SolverLimits& limits) {
  switch (rule) {
    case PricingRule::DP: return price_dp(profile, allocate_greedy(profile).winners);
    case PricingRule::GSP: return price_gsp(profile, allocate_greedy(profile).winners);
    case PricingRule::UP: return price_up(profile, allocate_greedy(profile).winners);
    case PricingRule::CRITICAL: return critical_payments(profile);
    case PricingRule::VCG_EXACT: return vcg_payments(profile, VcgWelfare::EXACT, limits);
    case PricingRule::VCG_GREEDY: return vcg_payments(profile, VcgWelfare::GREEDY, limits);
  }
  throw ContractViolation("unknown pricing rule");
}

TruthfulnessReport verify_truthfulness(PricingRule rule, const BidProfile& truthful,
                                       Value grid_step, std::int64_t eval_budget) {
  truthful.validate();
  if (truthful.bids.size() > 5)
    throw LimitError("deviation search supports n <= 5");
  if (grid_step <= 0) throw ConfigError("grid step must be positive");

  TruthfulnessReport report;
  report.rule = rule;

  Value max_value = 0;
  for (const Bid& b : truthful.bids) max_value = std::max(max_value, b.amount);
  const Value grid_max = 2 * max_value;
  const std::int64_t grid_points = grid_max / grid_step + 1;
  const std::int64_t total = (std::int64_t)truthful.bids.size() * grid_points;
  if (total > eval_budget)
    throw LimitError("deviation search limit: grid exceeds the evaluation budget");

  AuctionOutcome base = run_auction(truthful, rule);
  for (const Bid& agent : truthful.bids) {
    const Value true_value = agent.amount;
    const Value truthful_utility =
        base.won(agent.agent_id) ? true_value - base.payment_for(agent.agent_id) : 0;
    for (Value bid = 0; bid <= grid_max; bid += grid_step) {
      if (bid == agent.amount) continue;
      BidProfile deviated = truthful;
      for (Bid& b : deviated.bids)
        if (b.agent_id == agent.agent_id) b.amount = bid;
      AuctionOutcome out = run_auction(deviated, rule);
      ++report.evaluations;
      Value utility = out.won(agent.agent_id) ? true_value - out.payment_for(agent.agent_id) : 0;
      if (utility > truthful_utility) {
        report.witnesses.push_back(
            {agent.agent_id, true_value, bid, truthful_utility, utility});
        report.truthful = false;
        break;  // one witness per agent is enough
      }
    }
  }
  return report;
}

MonotonicityReport verify_monotonicity(const AllocationFn& allocate,
                                       std::span<const BidProfile> profiles, Value grid_step) {
  if (grid_step <= 0) throw ConfigError("grid step must be positive");
  MonotonicityReport report;
  for (std::size_t idx = 0; idx < profiles.size(); ++idx) {
    const BidProfile& profile = profiles[idx];
    profile.validate();
    if (profile.bids.size() > 6)
      throw LimitError("monotonicity scan supports n <= 6");
    Value max_bid = 0;
    for (const Bid& b : profile.bids) max_bid = std::max(max_bid, b.amount);
    std::vector<int> winners = allocate(profile);
    for (int id : winners) {
      const Bid* b = profile.find(id);
      for (Value raised = b->amount + grid_step; raised <= max_bid + 2 * grid_step;
           raised += grid_step) {
        BidProfile perturbed = profile;
        for (Bid& pb : perturbed.bids)
          if (pb.agent_id == id) pb.amount = raised;
        std::vector<int> now = allocate(perturbed);
        if (std::find(now.begin(), now.end(), id) == now.end()) {
          report.monotone = false;
          report.witness = MonotonicityWitness{idx, id, b->amount, raised};
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace blocklab
