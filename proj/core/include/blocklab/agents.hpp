#pragma once

#include <cstdint>
#include <vector>

#include "blocklab/auction.hpp"

namespace blocklab {

enum class Strategy { Truthful, Shade, QLearn };

const char* strategy_name(Strategy s);

struct BidderSpec {
  Strategy strategy{Strategy::Truthful};
  int shade_milli{800};  // bid = floor(value * shade / 1000) for Shade bidders
};

//! Repeated sealed-bid environment: each episode draws fresh private values,
//! agents bid under the configured rule, and learners update on their payoff.
struct AuctionEnv {
  PricingRule rule{PricingRule::DP};
  int agent_count{4};
  std::vector<Gas> sizes{1, 1, 2, 3};  // empty means every agent demands one unit
  Gas capacity{3};
  Value value_min{5};
  Value value_max{200};
  void validate() const;
  Gas size_of(int agent) const;
};

struct QParams {
  std::vector<int> multipliers_milli{500, 600, 700, 800, 900, 1000, 1100, 1200};
  int alpha_milli{100};
  int gamma_milli{900};
  int epsilon_milli{200};
  int epsilon_decay_milli{999};  // epsilon shrinks by this factor per episode
  int price_buckets{10};
  int episodes{60000};
  void validate() const;
};

struct EpisodeRow {
  int episode{0};
  Value revenue{0};
  Value allocated_true_value{0};
  double efficiency{1.0};
  double epsilon{0.0};
};

struct TrainingReport {
  PricingRule rule{PricingRule::DP};
  std::vector<EpisodeRow> rows;
  double mean_revenue_tail{0.0};     // mean over the final tenth of episodes
  double mean_efficiency_tail{0.0};
  std::vector<double> mean_multiplier_tail;  // per agent, learners only get non-zero
};

//! Train the given bidder lineup for `params.episodes` episodes. Value draws
//! depend only on (seed, episode), so runs under different rules see paired
//! demand.
TrainingReport train(const AuctionEnv& env, const std::vector<BidderSpec>& bidders,
                     const QParams& params, std::uint64_t seed);

struct TournamentRow {
  std::uint64_t seed{0};
  PricingRule rule{PricingRule::DP};
  double revenue{0.0};
  double efficiency{0.0};
};

struct RuleStats {
  PricingRule rule{PricingRule::DP};
  double mean_revenue{0.0};
  double mean_efficiency{0.0};
};

//! All-learner tournament across seeds: per seed, one training run per rule on
//! paired demand, scored by tail-window revenue and efficiency.
struct TournamentReport {
  std::vector<TournamentRow> rows;
  std::vector<RuleStats> stats;  // DP, GSP, UP order
  double revenue_ranking_fraction{0.0};     // seeds with revenue DP >= GSP >= UP
  double efficiency_ranking_fraction{0.0};  // seeds with efficiency UP >= GSP >= DP
};

//! An empty lineup means every agent learns.
TournamentReport tournament(const AuctionEnv& env, const QParams& params, int seed_count,
                            std::uint64_t base_seed, const std::vector<BidderSpec>& lineup = {});

}  // namespace blocklab
