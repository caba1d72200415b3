#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blocklab/rational.hpp"
#include "blocklab/types.hpp"

namespace blocklab {

struct Item {
  int id;       // unique, non-negative
  Gas size;     // positive
  Value value;  // non-negative
};

struct KnapsackInstance {
  std::vector<Item> items;
  Gas capacity{0};

  // Throws ConfigError on any violated field constraint.
  void validate() const;
};

// The item that was cut to fill the last stretch of capacity. fraction in (0, 1].
struct FractionalTail {
  int id;
  Rational fraction;
};

struct PackingResult {
  std::vector<int> selected;  // item ids in packing order
  Gas total_size{0};
  Rational total_value{0};    // integral for all 0-1 solvers
  std::optional<FractionalTail> fractional_tail;

  Value value_int() const { return total_value.as_integer(); }
};

enum class Monotonicity { NonIncreasing, NonDecreasing, None };

// Per-position multipliers for order-sensitive packing. Position r (1-based)
// scales an item's value by f[r-1].
struct PositionWeight {
  std::vector<Rational> f;
  Monotonicity monotonicity{Monotonicity::NonIncreasing};

  static PositionWeight from(std::vector<Rational> weights);
};

struct SolverLimits {
  // Upper bound on value-table cells (items x capacity steps) for the
  // capacity-indexed solvers. Crossing it raises LimitError.
  std::int64_t dp_cell_budget = 100'000'000;
};

// Optimal 0-1 packing by dynamic programming over capacity. Among equal-value
// optima the selected id set is the lexicographically smallest sorted sequence.
PackingResult solve_exact(const KnapsackInstance& inst, const SolverLimits& limits = {});

// Value of the optimum only; same recurrence, O(capacity) memory.
Value solve_exact_value(const KnapsackInstance& inst, const SolverLimits& limits = {});

// Full subset enumeration, n <= 20. Same result contract as solve_exact;
// kept separate so the two can cross-check each other.
PackingResult solve_brute_force(const KnapsackInstance& inst);

// Relaxation optimum: pack whole items in falling value-per-size order, split
// the first item that no longer fits. Ties on density break toward lower id.
PackingResult greedy_fractional(const KnapsackInstance& inst);

// 0-1 greedy. Walks items in falling value-per-size order and packs whatever
// still fits (items that do not fit are skipped, the walk continues). With
// apply_step3 the packing is compared against the single highest-value
// unpacked item that fits the knapsack alone, and the better of the two is
// returned; the packing wins ties. That final comparison is what lifts the
// worst case to half the optimum.
PackingResult greedy_01(const KnapsackInstance& inst, bool apply_step3);

// greedy_01 where one item wins every comparison tie (density ordering and the
// step-3 candidate choice). Used by pricing code probing an incumbent's
// threshold bid; tie_priority_id need not exist in the instance.
PackingResult greedy_01_favoring(const KnapsackInstance& inst, bool apply_step3,
                                 int tie_priority_id);

// Maximum fill: same solver as solve_exact with every item's value replaced by
// its size. Reported total_value sums the original values of the selection.
PackingResult subset_sum_pack(const KnapsackInstance& inst, const SolverLimits& limits = {});

// Order-sensitive packing: an item in position r is worth value * f(r).
// Exact for n <= 20 by subset enumeration; within a chosen subset the best
// order pairs larger values with larger weights. Non-monotone weights are
// refused above n = 12 ("exact search limit").
PackingResult position_dependent_pack(const KnapsackInstance& inst, const PositionWeight& weights);

}  // namespace blocklab
