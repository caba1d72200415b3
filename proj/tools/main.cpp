#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "blocklab/io.hpp"
#include "blocklab/rng.hpp"
#include "json.hpp"

namespace {

using namespace blocklab;

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;

struct Global {
  std::uint64_t seed{42};
  std::string out_dir;
  std::string config_path;
};

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The manifest lands before any result file so a run directory always names
// its own inputs.
void write_manifest(const Global& g, const std::string& command, const std::string& scenario,
                    std::uint64_t config_hash) {
  if (g.out_dir.empty()) return;
  std::filesystem::create_directories(g.out_dir);
  nlohmann::json j;
  j["command"] = command;
  j["scenario"] = scenario;
  j["seed"] = g.seed;
  j["out_dir"] = g.out_dir;
  j["version"] = BLOCKLAB_VERSION;
  j["config_hash"] = hash_hex(config_hash);
  std::ofstream out(std::filesystem::path(g.out_dir) / "manifest.json");
  out << j.dump(2) << '\n';
}

// Results go to <out>/<name> when an output directory is set, else to stdout.
void emit(const Global& g, const std::string& name,
          const std::function<void(std::ostream&)>& body) {
  if (g.out_dir.empty()) {
    body(std::cout);
    return;
  }
  std::filesystem::create_directories(g.out_dir);
  std::ofstream out(std::filesystem::path(g.out_dir) / name);
  body(out);
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string instance_path;
  std::vector<std::string> solvers;
};

PackingResult run_solver(const std::string& name, const KnapsackInstance& inst) {
  if (name == "exact") return solve_exact(inst);
  if (name == "brute") return solve_brute_force(inst);
  if (name == "greedy01") return greedy_01(inst, false);
  if (name == "greedy01_step3") return greedy_01(inst, true);
  if (name == "fractional") return greedy_fractional(inst);
  if (name == "subsetsum") return subset_sum_pack(inst);
  throw ConfigError("unknown solver '" + name + "'");
}

int cmd_solve(const Global& g, const SolveArgs& args) {
  KnapsackInstance inst = load_instance(args.instance_path);
  write_manifest(g, "solve", args.instance_path, fnv1a(slurp(args.instance_path)));

  std::vector<std::string> solvers;
  for (const std::string& s : args.solvers) {
    if (s == "all") {
      for (const char* name : {"exact", "greedy01", "greedy01_step3", "fractional", "subsetsum"})
        solvers.push_back(name);
    } else {
      solvers.push_back(s);
    }
  }
  emit(g, "solve.csv", [&](std::ostream& out) {
    bool first = true;
    for (const std::string& name : solvers) {
      write_solve_row(out, name, run_solver(name, inst), first);
      first = false;
    }
  });
  return 0;
}

// ---- auction --------------------------------------------------------------

struct AuctionArgs {
  std::string profile_path;
  std::string rule_name;
  std::string verify;  // "", "truthful", "monotone"
  bool expect_witness{false};
  bool negative_control{false};
  int count{200};
  Value grid_step{1};
};

BidProfile random_small_profile(Rng& rng, int max_agents) {
  BidProfile p;
  int n = (int)rng.uniform(2, max_agents);
  p.capacity = rng.uniform(2, 6);
  for (int i = 0; i < n; ++i) p.bids.push_back({i, rng.uniform(1, 20), rng.uniform(1, 3)});
  return p;
}

int cmd_auction(const Global& g, const AuctionArgs& args) {
  auto rule = pricing_rule_from_name(args.rule_name);
  if (!rule) throw ConfigError("unknown rule '" + args.rule_name + "'");

  std::uint64_t config_hash =
      args.profile_path.empty() ? fnv1a(args.rule_name) : fnv1a(slurp(args.profile_path));
  write_manifest(g, "auction", args.profile_path, config_hash);

  if (args.verify.empty()) {
    if (args.profile_path.empty()) throw ConfigError("auction needs a profile file");
    ProfileInput input = load_profile(args.profile_path);
    AuctionOutcome outcome = run_auction(input.profile, *rule);
    emit(g, "outcome.csv", [&](std::ostream& out) { write_outcome_csv(out, input.profile, outcome); });
    return 0;
  }

  std::vector<BidProfile> profiles;
  if (!args.profile_path.empty()) {
    profiles.push_back(load_profile(args.profile_path).profile);
  } else {
    Rng rng(g.seed);
    int max_agents = args.verify == "monotone" ? 6 : 4;
    for (int i = 0; i < args.count; ++i) profiles.push_back(random_small_profile(rng, max_agents));
  }

  bool found = false;
  if (args.verify == "truthful") {
    emit(g, "witness.csv", [&](std::ostream& out) {
      out << "rule,profile,agent_id,truthful_bid,deviant_bid,truthful_utility,deviant_utility\n";
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        TruthfulnessReport report = verify_truthfulness(*rule, profiles[i], args.grid_step);
        if (report.truthful) continue;
        found = true;
        const DeviationWitness& w = report.witnesses.front();
        out << pricing_rule_name(*rule) << ',' << i << ',' << w.agent_id << ',' << w.truthful_bid
            << ',' << w.deviant_bid << ',' << w.truthful_utility << ',' << w.deviant_utility
            << '\n';
        break;
      }
    });
  } else if (args.verify == "monotone") {
    AllocationFn allocate = args.negative_control
                                ? AllocationFn(allocate_lowest_density_first)
                                : AllocationFn([](const BidProfile& p) {
                                    return allocate_greedy(p).winners;
                                  });
    MonotonicityReport report = verify_monotonicity(allocate, profiles, args.grid_step);
    found = !report.monotone;
    emit(g, "witness.csv", [&](std::ostream& out) {
      out << "profile,agent_id,original_bid,raised_bid\n";
      if (report.witness) {
        const MonotonicityWitness& w = *report.witness;
        out << w.instance_index << ',' << w.agent_id << ',' << w.original_bid << ','
            << w.raised_bid << '\n';
      }
    });
  } else {
    throw ConfigError("unknown verify mode '" + args.verify + "'");
  }
  if (args.expect_witness) return found ? 0 : kExitViolation;
  return found ? kExitViolation : 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string scenario_path;
};

int cmd_simulate(const Global& g, const SimulateArgs& args) {
  std::string path = !args.scenario_path.empty() ? args.scenario_path : g.config_path;
  if (path.empty()) throw ConfigError("simulate needs a scenario file");
  Scenario sc = load_scenario(path);
  write_manifest(g, "simulate", path, fnv1a(serialize_scenario(sc)));

  std::vector<Era> eras = sc.pipeline.eras;
  if (eras.empty()) eras.push_back(sc.pipeline.era.era);

  std::vector<SlotRow> rows;
  std::vector<ComparisonRow> comparison;
  for (Era era : eras) {
    RunReport report = run_epochs(sc.pipeline, era, g.seed);
    rows.insert(rows.end(), report.rows.begin(), report.rows.end());
    comparison.push_back(report.totals);
  }

  emit(g, "slots.csv", [&](std::ostream& out) { write_run_report_csv(out, rows); });
  emit(g, "events.csv", [&](std::ostream& out) { write_events_csv(out, rows); });
  emit(g, "feemarket.csv", [&](std::ostream& out) { write_feemarket_csv(out, rows); });
  if (eras.size() > 1)
    emit(g, "comparison.csv", [&](std::ostream& out) { write_comparison_csv(out, comparison); });
  return 0;
}

// ---- tournament -----------------------------------------------------------

struct TournamentArgs {
  std::string scenario_path;
  int seeds{0};  // 0 means take the scenario's value
  std::string agents;  // override kind
};

int cmd_tournament(const Global& g, const TournamentArgs& args) {
  std::string path = !args.scenario_path.empty() ? args.scenario_path : g.config_path;
  Scenario sc;
  if (!path.empty()) sc = load_scenario(path);
  write_manifest(g, "tournament", path, fnv1a(serialize_scenario(sc)));

  Strategy kind = sc.agent_kind;
  if (!args.agents.empty()) {
    if (args.agents == "truthful")
      kind = Strategy::Truthful;
    else if (args.agents == "shade")
      kind = Strategy::Shade;
    else if (args.agents == "qlearn")
      kind = Strategy::QLearn;
    else
      throw ConfigError("unknown agent kind '" + args.agents + "'");
  }
  std::vector<BidderSpec> lineup;
  if (kind != Strategy::QLearn)
    lineup.assign(sc.agents_env.agent_count, {kind, sc.agent_shade_milli});

  int seeds = args.seeds > 0 ? args.seeds : sc.tournament_seeds;
  TournamentReport report = tournament(sc.agents_env, sc.qlearn, seeds, g.seed, lineup);
  emit(g, "tournament.csv", [&](std::ostream& out) { write_tournament_csv(out, report); });
  return 0;
}

// ---- feemarket ------------------------------------------------------------

struct FeemarketArgs {
  int blocks{20};
  std::string pattern{"full"};
  bool find_threshold{false};
  std::int64_t issuance{10};
  std::int64_t burn_num{2};
  std::int64_t burn_den{1000};
  Gas max_volume{100'000};
};

int cmd_feemarket(const Global& g, const FeemarketArgs& args) {
  Scenario sc;
  if (!g.config_path.empty()) sc = load_scenario(g.config_path);

  std::ostringstream desc;
  desc << args.blocks << ',' << args.pattern << ',' << args.issuance << ',' << args.burn_num
       << ',' << args.burn_den << ',' << args.max_volume;
  write_manifest(g, "feemarket", g.config_path, fnv1a(desc.str()));

  if (args.find_threshold) {
    if (args.burn_den <= 0) throw ConfigError("burn denominator must be positive");
    auto schedule = [&](Gas n) { return Rational(args.burn_num * n, args.burn_den); };
    std::optional<Gas> threshold =
        find_contraction_threshold(args.issuance, schedule, args.max_volume);
    emit(g, "threshold.csv", [&](std::ostream& out) {
      out << "issuance,burn_num,burn_den,max_volume,threshold\n";
      out << args.issuance << ',' << args.burn_num << ',' << args.burn_den << ','
          << args.max_volume << ',' << (threshold ? std::to_string(*threshold) : "never") << '\n';
    });
    return 0;
  }

  if (args.blocks < 1) throw ConfigError("trajectory needs at least one block");
  BaseFeeState state = sc.pipeline.feemarket;
  state.validate();
  Rng rng(g.seed);
  emit(g, "feemarket.csv", [&](std::ostream& out) {
    out << "block,base_fee,gas_used,burn,tips\n";
    for (int b = 0; b < args.blocks; ++b) {
      Gas gas = 0;
      if (args.pattern == "full")
        gas = state.max_gas;
      else if (args.pattern == "empty")
        gas = 0;
      else if (args.pattern == "target")
        gas = state.target_gas;
      else if (args.pattern == "alternate")
        gas = b % 2 == 0 ? state.max_gas : 0;
      else if (args.pattern == "random")
        gas = rng.uniform(0, state.max_gas);
      else
        throw ConfigError("unknown pattern '" + args.pattern + "'");
      Value burn = state.base_fee * gas;
      out << b << ',' << state.base_fee << ',' << gas << ',' << burn << ",0\n";
      state.cumulative_burn += burn;
      state = update_base_fee(state, gas);
    }
  });
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"block-building laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "deterministic run seed");
  app.add_option("--out", g.out_dir, "output directory (default: stdout)");
  app.add_option("--config", g.config_path, "scenario file");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "run knapsack solvers on an instance file");
  solve->add_option("instance", solve_args.instance_path, "instance file")->required();
  solve->add_option("--solver", solve_args.solvers, "solver name or 'all'")
      ->check(CLI::IsMember(
          {"exact", "brute", "greedy01", "greedy01_step3", "fractional", "subsetsum", "all"}))
      ->default_val(std::vector<std::string>{"exact"});

  AuctionArgs auction_args;
  CLI::App* auction = app.add_subcommand("auction", "price a sealed-bid profile");
  auction->add_option("profile", auction_args.profile_path, "profile file");
  auction->add_option("--rule", auction_args.rule_name, "pricing rule")->required();
  auction->add_option("--verify", auction_args.verify, "property to check")
      ->check(CLI::IsMember({"truthful", "monotone"}));
  auction->add_flag("--expect-witness", auction_args.expect_witness,
                    "succeed only when a violation is found");
  auction->add_flag("--negative-control", auction_args.negative_control,
                    "verify the deliberately non-monotone allocation");
  auction->add_option("--count", auction_args.count, "seeded suite size");
  auction->add_option("--grid-step", auction_args.grid_step, "deviation grid step");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand("simulate", "run the era pipeline on a scenario");
  simulate->add_option("scenario", sim_args.scenario_path, "scenario file");

  TournamentArgs tour_args;
  CLI::App* tour = app.add_subcommand("tournament", "rank pricing rules with learning bidders");
  tour->add_option("scenario", tour_args.scenario_path, "scenario file");
  tour->add_option("--seeds", tour_args.seeds, "number of paired seeds");
  tour->add_option("--agents", tour_args.agents, "bidder kind override")
      ->check(CLI::IsMember({"truthful", "shade", "qlearn"}));

  FeemarketArgs fee_args;
  CLI::App* fee = app.add_subcommand("feemarket", "base-fee trajectories and burn thresholds");
  fee->add_option("--blocks", fee_args.blocks, "trajectory length");
  fee->add_option("--pattern", fee_args.pattern, "gas usage pattern")
      ->check(CLI::IsMember({"full", "empty", "target", "alternate", "random"}));
  fee->add_flag("--find-threshold", fee_args.find_threshold,
                "solve for the volume where burn overtakes issuance");
  fee->add_option("--issuance", fee_args.issuance, "per-block issuance");
  fee->add_option("--burn-num", fee_args.burn_num, "burn schedule numerator");
  fee->add_option("--burn-den", fee_args.burn_den, "burn schedule denominator");
  fee->add_option("--max-volume", fee_args.max_volume, "search bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (app.got_subcommand(solve)) return cmd_solve(g, solve_args);
  if (app.got_subcommand(auction)) return cmd_auction(g, auction_args);
  if (app.got_subcommand(simulate)) return cmd_simulate(g, sim_args);
  if (app.got_subcommand(tour)) return cmd_tournament(g, tour_args);
  if (app.got_subcommand(fee)) return cmd_feemarket(g, fee_args);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInput;
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return kExitLimit;
  } catch (const ContractViolation& e) {
    std::cerr << "violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}
