#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "blocklab/agents.hpp"
#include "blocklab/knapsack.hpp"
#include "blocklab/pipeline.hpp"

namespace blocklab {

//! Instance text: header `K=<capacity>`, then one `id,size,value` line per
//! item. Comments start with `#`; blank lines are skipped.
KnapsackInstance parse_instance(std::istream& in);
KnapsackInstance load_instance(const std::string& path);

//! Profile text: header `K=<capacity>`, then `agent_id,size,bid[,true_value]`.
//! True values are all-or-nothing across lines.
struct ProfileInput {
  BidProfile profile;
  std::vector<Value> true_values;  // aligned with profile.bids when present
  bool has_true_values{false};
};
ProfileInput parse_profile(std::istream& in);
ProfileInput load_profile(const std::string& path);

//! Mempool text: header `K=<capacity>`, then
//! `id,size,value[,kind[,opportunity[,visible]]]` with kind one of
//! plain|arbitrage|anomaly|vulnerable and visible 0 or 1.
struct MempoolInput {
  std::vector<MempoolTx> txs;
  Gas capacity{0};
};
MempoolInput parse_mempool(std::istream& in);
MempoolInput load_mempool(const std::string& path);

//! One experiment description: sections [era], [mempool], [feemarket],
//! [agents] with `key = value` lines.
struct Scenario {
  PipelineScenario pipeline;
  AuctionEnv agents_env;
  QParams qlearn;
  Strategy agent_kind{Strategy::QLearn};
  int agent_shade_milli{800};
  int tournament_seeds{30};
};
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

//! Canonical key-sorted rendering; hashing it gives a config id that is
//! stable under reordering and reformatting of the source file.
std::string serialize_scenario(const Scenario& scenario);
std::uint64_t fnv1a(std::string_view bytes);

Rational parse_rational(const std::string& text);  // "9" or "91/10"

std::string format_ratio(double value);  // fixed 6 decimals, locale-free

// CSV emitters. Every writer prints a header row and uses '\n' line ends.
void write_solve_row(std::ostream& out, const std::string& solver, const PackingResult& result,
                     bool with_header);
void write_outcome_csv(std::ostream& out, const BidProfile& profile,
                       const AuctionOutcome& outcome);
void write_events_csv(std::ostream& out, std::span<const SlotRow> rows);
void write_run_report_csv(std::ostream& out, std::span<const SlotRow> rows);
void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows);
void write_feemarket_csv(std::ostream& out, std::span<const SlotRow> rows);
void write_training_csv(std::ostream& out, const TrainingReport& report);
void write_tournament_csv(std::ostream& out, const TournamentReport& report);

}  // namespace blocklab
