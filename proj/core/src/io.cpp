#include "blocklab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace blocklab {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool skippable(const std::string& line) {
  return line.empty() || line[0] == '#' || line[0] == ';';
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(strip(cur));
  return out;
}

std::int64_t parse_int(const std::string& token, int line_no) {
  std::int64_t v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || token.empty())
    throw ParseError(line_no, "expected an integer, got '" + token + "'");
  return v;
}

Gas parse_capacity_header(const std::string& line, int line_no) {
  if (line.rfind("K=", 0) != 0) throw ParseError(line_no, "expected capacity header 'K=<int>'");
  return parse_int(strip(line.substr(2)), line_no);
}

// Reads the next meaningful line; false at end of input.
bool next_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (!skippable(line)) return true;
  }
  return false;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return in;
}

}  // namespace

KnapsackInstance parse_instance(std::istream& in) {
  KnapsackInstance inst;
  std::string line;
  int line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError(0, "empty instance");
  inst.capacity = parse_capacity_header(line, line_no);
  while (next_line(in, line, line_no)) {
    std::vector<std::string> f = split(line, ',');
    if (f.size() != 3) throw ParseError(line_no, "expected 'id,size,value'");
    inst.items.push_back({(int)parse_int(f[0], line_no), parse_int(f[1], line_no),
                          parse_int(f[2], line_no)});
  }
  try {
    inst.validate();
  } catch (const ConfigError& e) {
    throw ParseError(0, e.what());
  }
  return inst;
}

KnapsackInstance load_instance(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_instance(in);
}

ProfileInput parse_profile(std::istream& in) {
  ProfileInput res;
  std::string line;
  int line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError(0, "empty profile");
  res.profile.capacity = parse_capacity_header(line, line_no);
  bool first = true;
  while (next_line(in, line, line_no)) {
    std::vector<std::string> f = split(line, ',');
    if (f.size() != 3 && f.size() != 4)
      throw ParseError(line_no, "expected 'agent_id,size,bid[,true_value]'");
    bool with_value = f.size() == 4;
    if (first) {
      res.has_true_values = with_value;
      first = false;
    } else if (with_value != res.has_true_values) {
      throw ParseError(line_no, "true values must be given on every line or none");
    }
    res.profile.bids.push_back({(int)parse_int(f[0], line_no), parse_int(f[2], line_no),
                                parse_int(f[1], line_no)});
    if (with_value) res.true_values.push_back(parse_int(f[3], line_no));
  }
  try {
    res.profile.validate();
  } catch (const ConfigError& e) {
    throw ParseError(0, e.what());
  }
  return res;
}

ProfileInput load_profile(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_profile(in);
}

MempoolInput parse_mempool(std::istream& in) {
  MempoolInput res;
  std::string line;
  int line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError(0, "empty mempool");
  res.capacity = parse_capacity_header(line, line_no);
  while (next_line(in, line, line_no)) {
    std::vector<std::string> f = split(line, ',');
    if (f.size() < 3 || f.size() > 6)
      throw ParseError(line_no, "expected 'id,size,value[,kind[,opportunity[,visible]]]'");
    MempoolTx tx;
    tx.tx_id = (int)parse_int(f[0], line_no);
    tx.sender_id = tx.tx_id;
    tx.size = parse_int(f[1], line_no);
    tx.true_value = parse_int(f[2], line_no);
    if (f.size() >= 4) {
      auto kind = mev_kind_from_name(f[3]);
      if (!kind) throw ParseError(line_no, "unknown kind '" + f[3] + "'");
      tx.kind = *kind;
    }
    if (f.size() >= 5 && !f[4].empty()) tx.embedded_opportunity = parse_int(f[4], line_no);
    if (f.size() == 6) {
      std::int64_t v = parse_int(f[5], line_no);
      if (v != 0 && v != 1) throw ParseError(line_no, "visible must be 0 or 1");
      tx.visible = v == 1;
    }
    try {
      tx.validate();
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
    res.txs.push_back(tx);
  }
  return res;
}

MempoolInput load_mempool(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_mempool(in);
}

namespace {

struct IniEntry {
  std::string value;
  int line;
};
using IniSection = std::map<std::string, IniEntry>;
using IniDoc = std::map<std::string, IniSection>;

IniDoc parse_ini(std::istream& in) {
  IniDoc doc;
  std::string line;
  int line_no = 0;
  std::string section;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (skippable(line)) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = strip(line.substr(1, line.size() - 2));
      if (section.empty()) throw ParseError(line_no, "empty section name");
      doc[section];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    if (section.empty()) throw ParseError(line_no, "key outside any section");
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (doc[section].count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
    doc[section][key] = {value, line_no};
  }
  return doc;
}

// Typed readers over one section; every consumed key is crossed off so
// leftovers can be reported as unknown.
struct SectionReader {
  IniSection entries;
  std::string name;

  std::int64_t get_int(const std::string& key, std::int64_t fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    std::int64_t v = parse_int(it->second.value, it->second.line);
    entries.erase(it);
    return v;
  }
  std::string get_str(const std::string& key, const std::string& fallback, int* line = nullptr) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    std::string v = it->second.value;
    if (line) *line = it->second.line;
    entries.erase(it);
    return v;
  }
  bool has(const std::string& key) const { return entries.find(key) != entries.end(); }
  std::vector<std::int64_t> get_int_list(const std::string& key,
                                         std::vector<std::int64_t> fallback) {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    std::vector<std::int64_t> out;
    if (!it->second.value.empty())  // an explicit empty assignment means an empty list
      for (const std::string& tok : split(it->second.value, ','))
        out.push_back(parse_int(tok, it->second.line));
    entries.erase(it);
    return out;
  }
  void finish() const {
    if (entries.empty()) return;
    const auto& [key, entry] = *entries.begin();
    throw ParseError(entry.line, "unknown key '" + key + "' in section [" + name + "]");
  }
};

SectionReader reader_for(IniDoc& doc, const std::string& name) {
  SectionReader r;
  r.name = name;
  auto it = doc.find(name);
  if (it != doc.end()) {
    r.entries = std::move(it->second);
    doc.erase(it);
  }
  return r;
}

Era parse_era_token(const std::string& token, int line_no) {
  auto era = era_from_name(token);
  if (!era) throw ParseError(line_no, "unknown era '" + token + "'");
  return *era;
}

int default_relays(Era era) {
  return era == Era::Baseline || era == Era::PgaEra ? 0 : 1;
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  IniDoc doc = parse_ini(in);
  Scenario sc;

  SectionReader era = reader_for(doc, "era");
  {
    int era_line = 0;
    std::string era_name_str = era.get_str("era", "", &era_line);
    std::string eras_str = era.get_str("eras", "", &era_line);
    if (!eras_str.empty())
      for (const std::string& tok : split(eras_str, ','))
        sc.pipeline.eras.push_back(parse_era_token(tok, era_line));
    if (!era_name_str.empty())
      sc.pipeline.era.era = parse_era_token(era_name_str, era_line);
    else if (!sc.pipeline.eras.empty())
      sc.pipeline.era.era = sc.pipeline.eras.front();

    EraConfig& cfg = sc.pipeline.era;
    cfg.relay_count = default_relays(cfg.era);
    int rule_line = 0;
    std::string rule = era.get_str("auction_rule", "dp", &rule_line);
    auto parsed_rule = pricing_rule_from_name(rule);
    if (!parsed_rule) throw ParseError(rule_line, "unknown auction rule '" + rule + "'");
    cfg.auction_rule = *parsed_rule;
    cfg.block_reward = era.get_int("block_reward", cfg.block_reward);
    cfg.relay_count = (int)era.get_int("relays", cfg.relay_count);
    cfg.builder_count = (int)era.get_int("builders", cfg.builder_count);
    cfg.slot_seconds = (int)era.get_int("slot_seconds", cfg.slot_seconds);
    cfg.slots_per_epoch = (int)era.get_int("slots_per_epoch", cfg.slots_per_epoch);
    cfg.searcher_count = (int)era.get_int("searchers", cfg.searcher_count);
    cfg.pga_increment = era.get_int("pga_increment", cfg.pga_increment);
    cfg.pga_bid_gas_cost = era.get_int("pga_bid_gas_cost", cfg.pga_bid_gas_cost);
    cfg.searcher_shade_milli = (int)era.get_int("searcher_shade_milli", cfg.searcher_shade_milli);
    cfg.builder_bribe_milli = (int)era.get_int("builder_bribe_milli", cfg.builder_bribe_milli);
    cfg.builder_self_mev = era.get_int("builder_self_mev", cfg.builder_self_mev);
    cfg.proposer_self_mev = era.get_int("proposer_self_mev", cfg.proposer_self_mev);
    cfg.searcher_tx_gas = era.get_int("searcher_tx_gas", cfg.searcher_tx_gas);
    sc.pipeline.epochs = (int)era.get_int("epochs", sc.pipeline.epochs);
    era.finish();
  }

  SectionReader mp = reader_for(doc, "mempool");
  {
    MempoolParams& p = sc.pipeline.mempool;
    p.tx_count = (int)mp.get_int("tx_count", p.tx_count);
    p.gas_min = mp.get_int("gas_min", p.gas_min);
    p.gas_max = mp.get_int("gas_max", p.gas_max);
    p.gas_granularity = mp.get_int("gas_granularity", p.gas_granularity);
    p.value_per_gas_min = mp.get_int("value_per_gas_min", p.value_per_gas_min);
    p.value_per_gas_max = mp.get_int("value_per_gas_max", p.value_per_gas_max);
    p.tip_per_gas_min = mp.get_int("tip_per_gas_min", p.tip_per_gas_min);
    p.tip_per_gas_max = mp.get_int("tip_per_gas_max", p.tip_per_gas_max);
    p.mix_plain_milli = (int)mp.get_int("mix_plain_milli", p.mix_plain_milli);
    p.mix_arbitrage_milli = (int)mp.get_int("mix_arbitrage_milli", p.mix_arbitrage_milli);
    p.mix_anomaly_milli = (int)mp.get_int("mix_anomaly_milli", p.mix_anomaly_milli);
    p.mix_vulnerable_milli = (int)mp.get_int("mix_vulnerable_milli", p.mix_vulnerable_milli);
    p.gap_min = mp.get_int("gap_min", p.gap_min);
    p.gap_max = mp.get_int("gap_max", p.gap_max);
    p.qty_min = mp.get_int("qty_min", p.qty_min);
    p.qty_max = mp.get_int("qty_max", p.qty_max);
    p.visible_milli = (int)mp.get_int("visible_milli", p.visible_milli);
    mp.finish();
  }

  SectionReader fm = reader_for(doc, "feemarket");
  {
    BaseFeeState& f = sc.pipeline.feemarket;
    f.base_fee = fm.get_int("initial_base_fee", f.base_fee);
    f.target_gas = fm.get_int("target_gas", f.target_gas);
    f.max_gas = fm.get_int("max_gas", f.max_gas);
    f.adjustment_denominator = fm.get_int("adjustment_denominator", f.adjustment_denominator);
    f.min_base_fee = fm.get_int("min_base_fee", f.min_base_fee);
    sc.pipeline.min_tip = fm.get_int("min_tip", sc.pipeline.min_tip);
    fm.finish();
  }

  SectionReader ag = reader_for(doc, "agents");
  {
    int kind_line = 0;
    std::string kind = ag.get_str("kind", "qlearn", &kind_line);
    if (kind == "truthful")
      sc.agent_kind = Strategy::Truthful;
    else if (kind == "shade")
      sc.agent_kind = Strategy::Shade;
    else if (kind == "qlearn")
      sc.agent_kind = Strategy::QLearn;
    else
      throw ParseError(kind_line, "unknown agent kind '" + kind + "'");
    sc.agent_shade_milli = (int)ag.get_int("shade_milli", sc.agent_shade_milli);

    AuctionEnv& env = sc.agents_env;
    int rule_line = 0;
    std::string rule = ag.get_str("rule", "dp", &rule_line);
    auto parsed_rule = pricing_rule_from_name(rule);
    if (!parsed_rule) throw ParseError(rule_line, "unknown auction rule '" + rule + "'");
    env.rule = *parsed_rule;
    bool count_given = ag.has("count");
    env.agent_count = (int)ag.get_int("count", env.agent_count);
    env.capacity = ag.get_int("capacity", env.capacity);
    env.value_min = ag.get_int("value_min", env.value_min);
    env.value_max = ag.get_int("value_max", env.value_max);
    if (ag.has("sizes")) {
      env.sizes.clear();
      for (std::int64_t s : ag.get_int_list("sizes", {})) env.sizes.push_back(s);
    } else if (count_given) {
      env.sizes.clear();  // an explicit count without sizes means unit demands
    }

    QParams& q = sc.qlearn;
    std::vector<std::int64_t> mults;
    for (int m : q.multipliers_milli) mults.push_back(m);
    q.multipliers_milli.clear();
    for (std::int64_t m : ag.get_int_list("multipliers_milli", mults))
      q.multipliers_milli.push_back((int)m);
    q.alpha_milli = (int)ag.get_int("alpha_milli", q.alpha_milli);
    q.gamma_milli = (int)ag.get_int("gamma_milli", q.gamma_milli);
    q.epsilon_milli = (int)ag.get_int("epsilon_milli", q.epsilon_milli);
    q.epsilon_decay_milli = (int)ag.get_int("epsilon_decay_milli", q.epsilon_decay_milli);
    q.price_buckets = (int)ag.get_int("price_buckets", q.price_buckets);
    q.episodes = (int)ag.get_int("episodes", q.episodes);
    sc.tournament_seeds = (int)ag.get_int("seeds", sc.tournament_seeds);
    ag.finish();
  }

  if (!doc.empty()) throw ParseError(0, "unknown section [" + doc.begin()->first + "]");

  sc.pipeline.era.validate();
  sc.pipeline.mempool.validate();
  sc.pipeline.feemarket.validate();
  if (sc.pipeline.min_tip < 0) throw ConfigError("minimum tip must be non-negative");
  if (sc.pipeline.epochs <= 0) throw ConfigError("epochs must be positive");
  sc.agents_env.validate();
  sc.qlearn.validate();
  if (sc.agent_shade_milli < 0 || sc.agent_shade_milli > 1000)
    throw ConfigError("shade must lie in [0, 1000] per mille");
  if (sc.tournament_seeds < 1) throw ConfigError("tournament needs at least one seed");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_scenario(in);
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream out;
  auto kv = [&](const std::string& k, const std::string& v) { out << k << '=' << v << '\n'; };
  auto kvi = [&](const std::string& k, std::int64_t v) { kv(k, std::to_string(v)); };

  const EraConfig& e = sc.pipeline.era;
  out << "[era]\n";
  kv("auction_rule", pricing_rule_name(e.auction_rule));
  kvi("block_reward", e.block_reward);
  kvi("builder_bribe_milli", e.builder_bribe_milli);
  kvi("builder_self_mev", e.builder_self_mev);
  kvi("builders", e.builder_count);
  kv("era", era_name(e.era));
  {
    std::string list;
    for (Era x : sc.pipeline.eras) {
      if (!list.empty()) list += ',';
      list += era_name(x);
    }
    kv("eras", list);
  }
  kvi("epochs", sc.pipeline.epochs);
  kvi("pga_bid_gas_cost", e.pga_bid_gas_cost);
  kvi("pga_increment", e.pga_increment);
  kvi("proposer_self_mev", e.proposer_self_mev);
  kvi("relays", e.relay_count);
  kvi("searcher_shade_milli", e.searcher_shade_milli);
  kvi("searcher_tx_gas", e.searcher_tx_gas);
  kvi("searchers", e.searcher_count);
  kvi("slot_seconds", e.slot_seconds);
  kvi("slots_per_epoch", e.slots_per_epoch);

  const MempoolParams& m = sc.pipeline.mempool;
  out << "[mempool]\n";
  kvi("gap_max", m.gap_max);
  kvi("gap_min", m.gap_min);
  kvi("gas_granularity", m.gas_granularity);
  kvi("gas_max", m.gas_max);
  kvi("gas_min", m.gas_min);
  kvi("mix_anomaly_milli", m.mix_anomaly_milli);
  kvi("mix_arbitrage_milli", m.mix_arbitrage_milli);
  kvi("mix_plain_milli", m.mix_plain_milli);
  kvi("mix_vulnerable_milli", m.mix_vulnerable_milli);
  kvi("qty_max", m.qty_max);
  kvi("qty_min", m.qty_min);
  kvi("tip_per_gas_max", m.tip_per_gas_max);
  kvi("tip_per_gas_min", m.tip_per_gas_min);
  kvi("tx_count", m.tx_count);
  kvi("value_per_gas_max", m.value_per_gas_max);
  kvi("value_per_gas_min", m.value_per_gas_min);
  kvi("visible_milli", m.visible_milli);

  const BaseFeeState& f = sc.pipeline.feemarket;
  out << "[feemarket]\n";
  kvi("adjustment_denominator", f.adjustment_denominator);
  kvi("initial_base_fee", f.base_fee);
  kvi("max_gas", f.max_gas);
  kvi("min_base_fee", f.min_base_fee);
  kvi("min_tip", sc.pipeline.min_tip);
  kvi("target_gas", f.target_gas);

  const AuctionEnv& env = sc.agents_env;
  const QParams& q = sc.qlearn;
  out << "[agents]\n";
  kvi("alpha_milli", q.alpha_milli);
  kvi("capacity", env.capacity);
  kvi("count", env.agent_count);
  kvi("episodes", q.episodes);
  kvi("epsilon_decay_milli", q.epsilon_decay_milli);
  kvi("epsilon_milli", q.epsilon_milli);
  kvi("gamma_milli", q.gamma_milli);
  kv("kind", strategy_name(sc.agent_kind));
  {
    std::string list;
    for (int v : q.multipliers_milli) {
      if (!list.empty()) list += ',';
      list += std::to_string(v);
    }
    kv("multipliers_milli", list);
  }
  kvi("price_buckets", q.price_buckets);
  kv("rule", pricing_rule_name(env.rule));
  kvi("seeds", sc.tournament_seeds);
  kvi("shade_milli", sc.agent_shade_milli);
  {
    std::string list;
    for (Gas s : env.sizes) {
      if (!list.empty()) list += ',';
      list += std::to_string(s);
    }
    kv("sizes", list);
  }
  kvi("value_max", env.value_max);
  kvi("value_min", env.value_min);
  return out.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(strip(text), 0));
  std::int64_t num = parse_int(strip(text.substr(0, slash)), 0);
  std::int64_t den = parse_int(strip(text.substr(slash + 1)), 0);
  return Rational(num, den);
}

std::string format_ratio(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

void write_solve_row(std::ostream& out, const std::string& solver, const PackingResult& result,
                     bool with_header) {
  if (with_header) out << "solver,selected_ids,total_size,total_value\n";
  std::string ids;
  for (int id : result.selected) {
    if (!ids.empty()) ids += ';';
    ids += std::to_string(id);
  }
  if (result.fractional_tail) {
    if (!ids.empty()) ids += ';';
    ids += std::to_string(result.fractional_tail->id);
  }
  out << solver << ',' << ids << ',' << result.total_size << ',' << result.total_value.str()
      << '\n';
}

void write_outcome_csv(std::ostream& out, const BidProfile& profile,
                       const AuctionOutcome& outcome) {
  out << "rule,agent_id,won,payment,bid,size\n";
  for (const Bid& b : profile.bids)
    out << pricing_rule_name(outcome.rule) << ',' << b.agent_id << ','
        << (outcome.won(b.agent_id) ? 1 : 0) << ',' << outcome.payment_for(b.agent_id) << ','
        << b.amount << ',' << b.size << '\n';
}

void write_events_csv(std::ostream& out, std::span<const SlotRow> rows) {
  out << "block,searcher_id,source_tx,classification,captured_value\n";
  for (const SlotRow& row : rows)
    for (const MevEvent& ev : row.events)
      out << row.slot << ',' << ev.searcher_id << ',' << ev.source_tx << ','
          << mev_class_name(ev.classification) << ',' << ev.captured_value << '\n';
}

void write_run_report_csv(std::ostream& out, std::span<const SlotRow> rows) {
  out << "slot,era,pi_u,pi_s,pi_b,pi_p,Pi,V_hat,R,B,F_b,efficiency_ratio\n";
  for (const SlotRow& r : rows) {
    const FlowLedger& l = r.ledger;
    out << r.slot << ',' << era_name(r.era) << ',' << l.pi_u << ',' << l.pi_s << ',' << l.pi_b
        << ',' << l.pi_p << ',' << l.total_surplus << ',' << l.v_hat << ',' << l.reward << ','
        << l.burn() << ',' << l.f_b << ',' << format_ratio(r.efficiency) << '\n';
  }
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
  out << "era,pi_u,pi_s,pi_b,pi_p,Pi,V_hat,R,B,F_b,mev_diverted,mev_created,pga_sunk,"
         "mean_efficiency\n";
  for (const ComparisonRow& r : rows)
    out << era_name(r.era) << ',' << r.pi_u << ',' << r.pi_s << ',' << r.pi_b << ',' << r.pi_p
        << ',' << r.total_surplus << ',' << r.v_hat << ',' << r.reward << ',' << r.burn << ','
        << r.bribes << ',' << r.mev_diverted << ',' << r.mev_created << ',' << r.pga_sunk << ','
        << format_ratio(r.mean_efficiency) << '\n';
}

void write_feemarket_csv(std::ostream& out, std::span<const SlotRow> rows) {
  out << "block,base_fee,gas_used,burn,tips\n";
  for (const SlotRow& r : rows)
    out << r.slot << ',' << r.base_fee << ',' << r.gas_used << ',' << r.ledger.burn() << ','
        << r.ledger.t_u + r.ledger.t_s << '\n';
}

void write_training_csv(std::ostream& out, const TrainingReport& report) {
  out << "episode,rule,revenue,surplus,efficiency\n";
  for (const EpisodeRow& r : report.rows)
    out << r.episode << ',' << pricing_rule_name(report.rule) << ',' << r.revenue << ','
        << r.allocated_true_value - r.revenue << ',' << format_ratio(r.efficiency) << '\n';
}

void write_tournament_csv(std::ostream& out, const TournamentReport& report) {
  out << "seed,rule,revenue,efficiency,revenue_ranking_fraction,efficiency_ranking_fraction\n";
  for (const TournamentRow& r : report.rows)
    out << r.seed << ',' << pricing_rule_name(r.rule) << ',' << format_ratio(r.revenue) << ','
        << format_ratio(r.efficiency) << ",,\n";
  for (const RuleStats& s : report.stats)
    out << "all," << pricing_rule_name(s.rule) << ',' << format_ratio(s.mean_revenue) << ','
        << format_ratio(s.mean_efficiency) << ',' << format_ratio(report.revenue_ranking_fraction)
        << ',' << format_ratio(report.efficiency_ranking_fraction) << '\n';
}

}  // namespace blocklab
