#include "blocklab/agents.hpp"

#include <algorithm>
#include <unordered_set>

#include "blocklab/knapsack.hpp"
#include "blocklab/rng.hpp"

namespace blocklab {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Truthful: return "truthful";
    case Strategy::Shade: return "shade";
    case Strategy::QLearn: return "qlearn";
  }
  throw ContractViolation("unknown strategy");
}

void AuctionEnv::validate() const {
  if (agent_count < 1) throw ConfigError("environment needs at least one agent");
  if (!sizes.empty() && (int)sizes.size() != agent_count)
    throw ConfigError("per-agent sizes must match the agent count");
  for (Gas s : sizes)
    if (s <= 0) throw ConfigError("agent sizes must be positive");
  if (capacity <= 0) throw ConfigError("capacity must be positive");
  if (value_min < 0 || value_min > value_max)
    throw ConfigError("value bounds must satisfy 0 <= min <= max");
  if (rule == PricingRule::VCG_EXACT || rule == PricingRule::VCG_GREEDY ||
      rule == PricingRule::CRITICAL)
    throw ConfigError("the learning environment supports dp, gsp and up only");
}

Gas AuctionEnv::size_of(int agent) const { return sizes.empty() ? 1 : sizes[agent]; }

void QParams::validate() const {
  if (multipliers_milli.empty()) throw ConfigError("learner needs at least one multiplier");
  for (int m : multipliers_milli)
    if (m < 0) throw ConfigError("multipliers must be non-negative");
  if (alpha_milli < 0 || alpha_milli > 1000) throw ConfigError("alpha must lie in [0, 1000]");
  if (gamma_milli < 0 || gamma_milli > 1000) throw ConfigError("gamma must lie in [0, 1000]");
  if (epsilon_milli < 0 || epsilon_milli > 1000)
    throw ConfigError("epsilon must lie in [0, 1000]");
  if (epsilon_decay_milli < 0 || epsilon_decay_milli > 1000)
    throw ConfigError("epsilon decay must lie in [0, 1000]");
  if (price_buckets < 1) throw ConfigError("price buckets must be positive");
  if (episodes < 1) throw ConfigError("episodes must be positive");
}

namespace {

//! The public signal a bidder can condition on: what one unit of space cost in
//! the previous round. Uniform pricing reveals the clearing price (the best
//! losing bid); discriminatory rules reveal the cheapest winning bid.
Value price_signal(const BidProfile& profile, const AuctionOutcome& outcome) {
  if (outcome.rule == PricingRule::UP) {
    Value best = 0;
    for (const Bid& b : profile.bids) {
      if (outcome.won(b.agent_id)) continue;
      best = std::max(best, b.amount / b.size);
    }
    return best;
  }
  Value low = -1;
  for (int id : outcome.winners) {
    const Bid* b = profile.find(id);
    Value per = b->amount / b->size;
    if (low < 0 || per < low) low = per;
  }
  return low < 0 ? 0 : low;
}

int bucket_of(Value signal, Value value_max, int buckets) {
  if (signal <= 0) return 0;
  long long b = (long long)signal * buckets / (value_max + 1);
  return (int)std::min<long long>(b, buckets - 1);
}

struct Learner {
  std::vector<std::vector<double>> q;  // [state][action]
  int last_state{0};
  int last_action{-1};
};

int select_action(const Learner& l, int state, double epsilon, int action_count, Rng& policy) {
  if (policy.uniform01() < epsilon) return (int)policy.uniform(0, action_count - 1);
  int best = 0;
  for (int a = 1; a < action_count; ++a)
    if (l.q[state][a] > l.q[state][best]) best = a;
  return best;
}

Value optimum_value(const AuctionEnv& env, const std::vector<Value>& values) {
  KnapsackInstance inst;
  inst.capacity = env.capacity;
  for (int i = 0; i < env.agent_count; ++i) inst.items.push_back({i, env.size_of(i), values[i]});
  return solve_exact_value(inst);
}

}  // namespace

TrainingReport train(const AuctionEnv& env, const std::vector<BidderSpec>& bidders,
                     const QParams& params, std::uint64_t seed) {
  env.validate();
  params.validate();
  if ((int)bidders.size() != env.agent_count)
    throw ConfigError("bidder lineup must match the agent count");
  for (const BidderSpec& b : bidders)
    if (b.shade_milli < 0 || b.shade_milli > 1000)
      throw ConfigError("shade must lie in [0, 1000] per mille");

  const int actions = (int)params.multipliers_milli.size();
  // Optimistic start: value_max bounds any single-episode payoff, so every
  // multiplier keeps getting sampled until its estimate earns its rank.
  const double q_init = (double)env.value_max;
  std::vector<Learner> learners(env.agent_count);
  for (int i = 0; i < env.agent_count; ++i)
    if (bidders[i].strategy == Strategy::QLearn)
      learners[i].q.assign(params.price_buckets, std::vector<double>(actions, q_init));

  Rng policy(Rng::mix(seed, 0x9E3779B9ULL));
  const double alpha = params.alpha_milli / 1000.0;
  const double gamma = params.gamma_milli / 1000.0;
  double epsilon = params.epsilon_milli / 1000.0;

  TrainingReport report;
  report.rule = env.rule;
  report.rows.reserve(params.episodes);
  int state = 0;

  const int tail_start = params.episodes - std::max(1, params.episodes / 10);
  double tail_rev = 0, tail_eff = 0;
  std::vector<double> tail_mult(env.agent_count, 0.0);
  int tail_n = 0;

  for (int episode = 0; episode < params.episodes; ++episode) {
    Rng draws(Rng::mix(seed, (std::uint64_t)episode));
    std::vector<Value> values(env.agent_count);
    for (Value& v : values) v = draws.uniform(env.value_min, env.value_max);

    BidProfile profile;
    profile.capacity = env.capacity;
    std::vector<int> chosen_mult(env.agent_count, 1000);
    for (int i = 0; i < env.agent_count; ++i) {
      Value bid = values[i];
      switch (bidders[i].strategy) {
        case Strategy::Truthful:
          break;
        case Strategy::Shade:
          bid = scale_floor(values[i], bidders[i].shade_milli, 1000);
          chosen_mult[i] = bidders[i].shade_milli;
          break;
        case Strategy::QLearn: {
          Learner& l = learners[i];
          l.last_state = state;
          l.last_action = select_action(l, state, epsilon, actions, policy);
          int mult = params.multipliers_milli[l.last_action];
          chosen_mult[i] = mult;
          bid = scale_floor(values[i], mult, 1000);
          break;
        }
      }
      profile.bids.push_back({i, bid, env.size_of(i)});
    }

    AuctionOutcome outcome = run_auction(profile, env.rule);
    int next_state = bucket_of(price_signal(profile, outcome), env.value_max,
                               params.price_buckets);

    Value allocated_true = 0;
    for (int id : outcome.winners) allocated_true += values[id];
    for (int i = 0; i < env.agent_count; ++i) {
      if (bidders[i].strategy != Strategy::QLearn) continue;
      Learner& l = learners[i];
      double reward = outcome.won(i) ? (double)(values[i] - outcome.payment_for(i)) : 0.0;
      double best_next = *std::max_element(l.q[next_state].begin(), l.q[next_state].end());
      double& cell = l.q[l.last_state][l.last_action];
      cell += alpha * (reward + gamma * best_next - cell);
    }

    Value optimum = optimum_value(env, values);
    double efficiency = optimum == 0 ? 1.0 : (double)allocated_true / (double)optimum;
    report.rows.push_back({episode, outcome.revenue, allocated_true, efficiency, epsilon});

    if (episode >= tail_start) {
      tail_rev += (double)outcome.revenue;
      tail_eff += efficiency;
      for (int i = 0; i < env.agent_count; ++i) tail_mult[i] += chosen_mult[i];
      ++tail_n;
    }

    state = next_state;
    epsilon *= params.epsilon_decay_milli / 1000.0;
  }

  report.mean_revenue_tail = tail_rev / tail_n;
  report.mean_efficiency_tail = tail_eff / tail_n;
  report.mean_multiplier_tail.resize(env.agent_count);
  for (int i = 0; i < env.agent_count; ++i) report.mean_multiplier_tail[i] = tail_mult[i] / tail_n;
  return report;
}

TournamentReport tournament(const AuctionEnv& env, const QParams& params, int seed_count,
                            std::uint64_t base_seed, const std::vector<BidderSpec>& lineup_in) {
  if (seed_count < 1) throw ConfigError("tournament needs at least one seed");
  const PricingRule rules[] = {PricingRule::DP, PricingRule::GSP, PricingRule::UP};

  TournamentReport report;
  double sum_rev[3] = {0, 0, 0};
  double sum_eff[3] = {0, 0, 0};
  int revenue_hits = 0;
  int efficiency_hits = 0;

  std::vector<BidderSpec> lineup =
      lineup_in.empty() ? std::vector<BidderSpec>(env.agent_count, {Strategy::QLearn, 0})
                        : lineup_in;
  for (int s = 0; s < seed_count; ++s) {
    std::uint64_t seed = base_seed + (std::uint64_t)s;
    double rev[3], eff[3];
    for (int r = 0; r < 3; ++r) {
      AuctionEnv run_env = env;
      run_env.rule = rules[r];
      TrainingReport tr = train(run_env, lineup, params, seed);
      rev[r] = tr.mean_revenue_tail;
      eff[r] = tr.mean_efficiency_tail;
      sum_rev[r] += rev[r];
      sum_eff[r] += eff[r];
      report.rows.push_back({seed, rules[r], rev[r], eff[r]});
    }
    if (rev[0] >= rev[1] && rev[1] >= rev[2]) ++revenue_hits;
    if (eff[2] >= eff[1] && eff[1] >= eff[0]) ++efficiency_hits;
  }

  for (int r = 0; r < 3; ++r)
    report.stats.push_back({rules[r], sum_rev[r] / seed_count, sum_eff[r] / seed_count});
  report.revenue_ranking_fraction = (double)revenue_hits / seed_count;
  report.efficiency_ranking_fraction = (double)efficiency_hits / seed_count;
  return report;
}

}  // namespace blocklab
