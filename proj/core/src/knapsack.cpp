#include "blocklab/knapsack.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

namespace blocklab {

namespace {

// density(a) > density(b), exact in 128-bit.
bool denser(const Item& a, const Item& b) {
  return (__int128)a.value * b.size > (__int128)b.value * a.size;
}

bool same_density(const Item& a, const Item& b) {
  return (__int128)a.value * b.size == (__int128)b.value * a.size;
}

// Falling density, ties toward lower id; tie_priority beats the id rule.
std::vector<Item> density_order(const KnapsackInstance& inst, std::optional<int> tie_priority) {
  std::vector<Item> items = inst.items;
  std::stable_sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    if (denser(a, b)) return true;
    if (denser(b, a)) return false;
    if (tie_priority) {
      if (a.id == *tie_priority && b.id != *tie_priority) return true;
      if (b.id == *tie_priority && a.id != *tie_priority) return false;
    }
    return a.id < b.id;
  });
  return items;
}

std::vector<Item> sorted_by_id(const KnapsackInstance& inst) {
  std::vector<Item> items = inst.items;
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.id < b.id; });
  return items;
}

// Sorted-sequence comparison of two id subsets over the same ascending-id
// universe, bit i = i-th smallest id. A proper prefix sorts first.
bool lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  int d = std::countr_zero(a ^ b);
  bool a_has = (a >> d) & 1u;
  std::uint32_t rest = (a_has ? b : a) >> (d + 1);
  // The side holding bit d sorts first unless the other side just ran out.
  return a_has ? rest != 0 : rest == 0;
}

PackingResult exact_impl(const KnapsackInstance& inst, const SolverLimits& limits,
                         bool maximize_fill) {
  inst.validate();
  std::vector<Item> items = sorted_by_id(inst);
  const int n = (int)items.size();

  // Everything achievable is a multiple of the common size divisor, so the
  // table only needs capacity / gcd steps.
  Gas g = 0;
  Gas size_sum = 0;
  for (const Item& it : items) {
    g = std::gcd(g, it.size);
    size_sum += it.size;
  }
  const Gas cap = std::min(inst.capacity / g, size_sum / g);

  if ((std::int64_t)n * (cap + 1) > limits.dp_cell_budget)
    throw LimitError("instance too large: value table exceeds the cell budget");

  const std::int64_t width = cap + 1;
  std::vector<Value> next(width, 0), cur(width, 0);
  std::vector<bool> take((std::size_t)n * width, false);

  // Suffix table: next holds the optimum over items i+1..n-1. The take bit
  // encodes the reconstruction rule that yields the lexicographically
  // smallest optimal id set: claim item i whenever doing so preserves the
  // optimum and that optimum is positive.
  for (int i = n - 1; i >= 0; --i) {
    const Gas s = items[i].size / g;
    const Value v = maximize_fill ? items[i].size : items[i].value;
    for (Gas c = 0; c <= cap; ++c) {
      Value best = next[c];
      bool tk = false;
      if (s <= c) {
        Value with = v + next[c - s];
        if (with > best) {
          best = with;
          tk = true;
        } else if (with == best && best > 0) {
          tk = true;
        }
      }
      cur[c] = best;
      take[(std::size_t)i * width + c] = tk;
    }
    std::swap(cur, next);
  }

  PackingResult res;
  Gas c = cap;
  for (int i = 0; i < n; ++i) {
    if (take[(std::size_t)i * width + c]) {
      res.selected.push_back(items[i].id);
      res.total_size += items[i].size;
      res.total_value = res.total_value + Rational(items[i].value);
      c -= items[i].size / g;
    }
  }
  return res;
}

struct GrayWalk {
  // Visits all subsets in single-bit-flip order, keeping size and value
  // incrementally. visit(mask, size, value) is called for every subset,
  // the empty one included.
  template <typename F>
  static void run(const std::vector<Item>& items, F&& visit) {
    const int n = (int)items.size();
    std::uint32_t mask = 0;
    Gas size = 0;
    Value value = 0;
    visit(mask, size, value);
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t k = 1; k < total; ++k) {
      int bit = std::countr_zero(k);
      mask ^= 1u << bit;
      if ((mask >> bit) & 1u) {
        size += items[bit].size;
        value += items[bit].value;
      } else {
        size -= items[bit].size;
        value -= items[bit].value;
      }
      visit(mask, size, value);
    }
  }
};

}  // namespace

void KnapsackInstance::validate() const {
  if (items.empty()) throw ConfigError("instance has no items");
  if (capacity <= 0) throw ConfigError("capacity must be positive");
  std::unordered_set<int> ids;
  for (const Item& it : items) {
    if (it.id < 0) throw ConfigError("item id must be non-negative");
    if (!ids.insert(it.id).second) throw ConfigError("duplicate item id " + std::to_string(it.id));
    if (it.size <= 0) throw ConfigError("item size must be positive");
    if (it.value < 0) throw ConfigError("item value must be non-negative");
  }
}

PackingResult solve_exact(const KnapsackInstance& inst, const SolverLimits& limits) {
  return exact_impl(inst, limits, /*maximize_fill=*/false);
}

Value solve_exact_value(const KnapsackInstance& inst, const SolverLimits& limits) {
  inst.validate();
  Gas g = 0;
  Gas size_sum = 0;
  for (const Item& it : inst.items) {
    g = std::gcd(g, it.size);
    size_sum += it.size;
  }
  const Gas cap = std::min(inst.capacity / g, size_sum / g);
  if ((std::int64_t)inst.items.size() * (cap + 1) > limits.dp_cell_budget)
    throw LimitError("instance too large: value table exceeds the cell budget");

  std::vector<Value> dp(cap + 1, 0);
  for (const Item& it : inst.items) {
    const Gas s = it.size / g;
    for (Gas c = cap; c >= s; --c) dp[c] = std::max(dp[c], it.value + dp[c - s]);
  }
  return dp[cap];
}

PackingResult solve_brute_force(const KnapsackInstance& inst) {
  inst.validate();
  if (inst.items.size() > 20) throw LimitError("oracle limit: enumeration supports n <= 20");
  std::vector<Item> items = sorted_by_id(inst);
  const Gas cap = inst.capacity;

  Value best_value = 0;
  GrayWalk::run(items, [&](std::uint32_t, Gas size, Value value) {
    if (size <= cap && value > best_value) best_value = value;
  });

  std::uint32_t best_mask = 0;
  bool found = false;
  GrayWalk::run(items, [&](std::uint32_t mask, Gas size, Value value) {
    if (size > cap || value != best_value) return;
    if (!found || lex_less(mask, best_mask)) {
      best_mask = mask;
      found = true;
    }
  });

  PackingResult res;
  for (int i = 0; i < (int)items.size(); ++i) {
    if ((best_mask >> i) & 1u) {
      res.selected.push_back(items[i].id);
      res.total_size += items[i].size;
      res.total_value = res.total_value + Rational(items[i].value);
    }
  }
  return res;
}

PackingResult greedy_fractional(const KnapsackInstance& inst) {
  inst.validate();
  std::vector<Item> order = density_order(inst, std::nullopt);
  PackingResult res;
  Gas remaining = inst.capacity;
  for (const Item& it : order) {
    if (remaining == 0) break;
    if (it.size <= remaining) {
      res.selected.push_back(it.id);
      res.total_size += it.size;
      res.total_value = res.total_value + Rational(it.value);
      remaining -= it.size;
    } else {
      // First item past the brim: cut it to fill the knapsack exactly.
      res.fractional_tail = FractionalTail{it.id, Rational(remaining, it.size)};
      res.total_value = res.total_value + Rational(it.value) * Rational(remaining, it.size);
      res.total_size += remaining;
      remaining = 0;
      break;
    }
  }
  return res;
}

namespace {

PackingResult greedy_01_impl(const KnapsackInstance& inst, bool apply_step3,
                             std::optional<int> tie_priority) {
  inst.validate();
  std::vector<Item> order = density_order(inst, tie_priority);

  PackingResult packing;
  Gas remaining = inst.capacity;
  std::vector<Item> excluded;
  for (const Item& it : order) {
    if (it.size <= remaining) {
      packing.selected.push_back(it.id);
      packing.total_size += it.size;
      packing.total_value = packing.total_value + Rational(it.value);
      remaining -= it.size;
    } else {
      excluded.push_back(it);
    }
  }
  if (!apply_step3) return packing;

  // Single best unpacked item that fits on its own; ties toward lower id
  // (or the favored id when probing). Replaces the packing only when
  // strictly better.
  auto outranks = [&](const Item& cand, const Item& cur) {
    if (cand.value != cur.value) return cand.value > cur.value;
    if (tie_priority) {
      if (cand.id == *tie_priority) return true;
      if (cur.id == *tie_priority) return false;
    }
    return cand.id < cur.id;
  };
  const Item* challenger = nullptr;
  for (const Item& it : excluded) {
    if (it.size > inst.capacity) continue;
    if (!challenger || outranks(it, *challenger)) challenger = &it;
  }
  if (challenger && Rational(challenger->value) > packing.total_value) {
    PackingResult swap;
    swap.selected = {challenger->id};
    swap.total_size = challenger->size;
    swap.total_value = Rational(challenger->value);
    return swap;
  }
  return packing;
}

}  // namespace

PackingResult greedy_01(const KnapsackInstance& inst, bool apply_step3) {
  return greedy_01_impl(inst, apply_step3, std::nullopt);
}

PackingResult greedy_01_favoring(const KnapsackInstance& inst, bool apply_step3,
                                 int tie_priority_id) {
  return greedy_01_impl(inst, apply_step3, tie_priority_id);
}

PackingResult subset_sum_pack(const KnapsackInstance& inst, const SolverLimits& limits) {
  PackingResult res = exact_impl(inst, limits, /*maximize_fill=*/true);
  // The optimization ran on sizes; report the selection's real values.
  Rational value{0};
  std::vector<Item> items = sorted_by_id(inst);
  std::size_t j = 0;
  for (const Item& it : items) {
    if (j < res.selected.size() && res.selected[j] == it.id) {
      value = value + Rational(it.value);
      ++j;
    }
  }
  res.total_value = value;
  return res;
}

PositionWeight PositionWeight::from(std::vector<Rational> weights) {
  PositionWeight pw;
  bool non_increasing = true, non_decreasing = true;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    if (weights[i] < weights[i + 1]) non_increasing = false;
    if (weights[i] > weights[i + 1]) non_decreasing = false;
  }
  for (const Rational& w : weights)
    if (w < Rational(0)) throw ConfigError("position weights must be non-negative");
  pw.f = std::move(weights);
  pw.monotonicity = non_increasing  ? Monotonicity::NonIncreasing
                    : non_decreasing ? Monotonicity::NonDecreasing
                                     : Monotonicity::None;
  return pw;
}

PackingResult position_dependent_pack(const KnapsackInstance& inst, const PositionWeight& weights) {
  inst.validate();
  const int n = (int)inst.items.size();
  if (n > 20) throw LimitError("exact search limit: position-dependent packing supports n <= 20");
  if (weights.monotonicity == Monotonicity::None && n > 12)
    throw LimitError("exact search limit: non-monotone weights supported only for n <= 12");

  std::vector<Item> items = sorted_by_id(inst);

  // No feasible packing can hold more items than the smallest sizes that fit,
  // so the weights only need to reach that deep.
  int max_fit = 0;
  {
    std::vector<Gas> sizes;
    for (const Item& it : items) sizes.push_back(it.size);
    std::sort(sizes.begin(), sizes.end());
    Gas used = 0;
    for (Gas s : sizes) {
      if (used + s > inst.capacity) break;
      used += s;
      ++max_fit;
    }
  }
  if ((int)weights.f.size() < max_fit)
    throw ConfigError("position weights must cover every position the capacity can hold");

  // Weight ranks per subset size m: positions 1..m ordered by falling weight,
  // earlier position first on ties. Within any chosen subset the optimum pairs
  // the largest values with the largest weights.
  std::vector<std::vector<int>> rank_by_m(max_fit + 1);
  for (int m = 1; m <= max_fit; ++m) {
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return weights.f[a] > weights.f[b]; });
    rank_by_m[m] = std::move(idx);
  }

  Rational best_total{0};
  std::uint32_t best_mask = 0;
  bool found_any = false;

  std::vector<int> members;
  members.reserve(n);
  GrayWalk::run(items, [&](std::uint32_t mask, Gas size, Value) {
    if (size > inst.capacity) return;
    members.clear();
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u) members.push_back(i);
    const int m = (int)members.size();
    // Falling value, ties toward lower id (members are already id-ordered).
    std::stable_sort(members.begin(), members.end(),
                     [&](int a, int b) { return items[a].value > items[b].value; });
    Rational total{0};
    for (int r = 0; r < m; ++r)
      total = total + Rational(items[members[r]].value) * weights.f[rank_by_m[m][r]];
    if (!found_any || total > best_total ||
        (total == best_total && lex_less(mask, best_mask))) {
      best_total = total;
      best_mask = mask;
      found_any = true;
    }
  });

  // Rebuild the winning order: r-th largest value sits at the position with
  // the r-th largest weight.
  members.clear();
  for (int i = 0; i < n; ++i)
    if ((best_mask >> i) & 1u) members.push_back(i);
  const int m = (int)members.size();
  std::stable_sort(members.begin(), members.end(),
                   [&](int a, int b) { return items[a].value > items[b].value; });

  PackingResult res;
  res.total_value = best_total;
  std::vector<int> by_position(m, -1);
  for (int r = 0; r < m; ++r) by_position[rank_by_m[m][r]] = members[r];
  for (int pos = 0; pos < m; ++pos) {
    const Item& it = items[by_position[pos]];
    res.selected.push_back(it.id);
    res.total_size += it.size;
  }
  return res;
}

}  // namespace blocklab
