// SPDX-License-Identifier: MIT
/**
 * @file harness.cpp
 * @brief Monte-Carlo engine, configuration parsing, and CSV output.
 */
#include "cfdas/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "cfdas/baselines.hpp"
#include "cfdas/errors.hpp"
#include "cfdas/gfield.hpp"
#include "cfdas/ifb.hpp"
#include "cfdas/lattice.hpp"
#include "cfdas/quantized.hpp"
#include "cfdas/rng.hpp"
#include "cfdas/schemes.hpp"
#include "cfdas/selection.hpp"

namespace cfdas {

namespace {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Configuration parsing.
// ---------------------------------------------------------------------------

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ConfigError("config: " + (where.empty() ? "" : where + ": ") +
                        "unknown field '" + item.key() + "'");
}

ChannelModel parse_model(const json& jm) {
  if (!jm.is_object()) throw ConfigError("config: model: must be an object");
  reject_unknown_keys(jm, {"kind", "users", "antennas", "activity", "gamma"},
                      "model");
  ChannelModel model;
  if (!jm.contains("kind")) throw ConfigError("config: model.kind: required");
  const std::string kind = [&] {
    try {
      return jm.at("kind").get<std::string>();
    } catch (const json::exception&) {
      throw ConfigError("config: model.kind: must be a string");
    }
  }();
  if (kind == "bernoulli_gaussian")
    model.kind = ChannelModel::Kind::bernoulli_gaussian;
  else if (kind == "rayleigh")
    model.kind = ChannelModel::Kind::rayleigh;
  else if (kind == "wyner")
    model.kind = ChannelModel::Kind::wyner;
  else
    throw ConfigError("config: model.kind: unknown kind '" + kind + "'");

  const auto count_field = [&](const char* name, std::size_t def) {
    if (!jm.contains(name)) return def;
    try {
      const auto v = jm.at(name).get<std::int64_t>();
      if (v < 1) throw ConfigError(std::string("config: model.") + name + ": must be >= 1");
      return static_cast<std::size_t>(v);
    } catch (const json::exception&) {
      throw ConfigError(std::string("config: model.") + name + ": must be an integer");
    }
  };
  model.transmitters = count_field("users", 2);
  model.receivers = count_field("antennas", 2);
  const auto real_field = [&](const char* name, double def) {
    if (!jm.contains(name)) return def;
    try {
      return jm.at(name).get<double>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config: model.") + name + ": must be a number");
    }
  };
  model.activity = real_field("activity", 1.0);
  model.gamma = real_field("gamma", 0.7);
  try {
    model.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config: model: ") + e.what());
  }
  return model;
}

std::vector<double> parse_grid(const json& j, const char* name, bool nonneg) {
  if (!j.contains(name)) throw ConfigError(std::string("config: ") + name + ": required");
  std::vector<double> grid;
  try {
    grid = j.at(name).get<std::vector<double>>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: ") + name + ": must be an array of numbers");
  }
  if (grid.empty()) throw ConfigError(std::string("config: ") + name + ": must be non-empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]))
      throw ConfigError(std::string("config: ") + name + "[" + std::to_string(i) +
                        "]: must be finite");
    if (nonneg && grid[i] < 0.0)
      throw ConfigError(std::string("config: ") + name + "[" + std::to_string(i) +
                        "]: must be >= 0");
  }
  return grid;
}

SelectionPolicy parse_selection(const json& js) {
  if (!js.is_object()) throw ConfigError("config: selection: must be an object");
  reject_unknown_keys(js, {"kind", "subset"}, "selection");
  SelectionPolicy policy;
  const std::string kind = [&] {
    try {
      return js.value("kind", std::string("none"));
    } catch (const json::exception&) {
      throw ConfigError("config: selection.kind: must be a string");
    }
  }();
  if (kind == "none")
    policy.kind = SelectionPolicy::Kind::none;
  else if (kind == "greedy")
    policy.kind = SelectionPolicy::Kind::greedy;
  else if (kind == "random")
    policy.kind = SelectionPolicy::Kind::random;
  else
    throw ConfigError("config: selection.kind: unknown kind '" + kind + "'");
  if (policy.kind == SelectionPolicy::Kind::random) {
    if (!js.contains("subset"))
      throw ConfigError("config: selection.subset: required for random selection");
    try {
      const auto v = js.at("subset").get<std::int64_t>();
      if (v < 1) throw ConfigError("config: selection.subset: must be >= 1");
      policy.subset = static_cast<std::size_t>(v);
    } catch (const json::exception&) {
      throw ConfigError("config: selection.subset: must be an integer");
    }
  } else if (js.contains("subset")) {
    throw ConfigError("config: selection.subset: only valid for random selection");
  }
  return policy;
}

// ---------------------------------------------------------------------------
// Scheme evaluation.
// ---------------------------------------------------------------------------

RateReport report_from_sum(double sum) {
  RateReport rep;
  rep.sum_rate = sum;
  rep.outage = !(sum > 0.0);
  return rep;
}

/// Uplink integer-combination rate when every given receiver row forwards
/// its equation (no further channel-aware subselection): the selected
/// system must have full column rank, and each sub-network is limited by
/// its slowest forwarded equation. Reduces to the square-system sum rate
/// when the row count equals the user count. Throws RankDeficient.
RateReport cof_rate_all_rows(const SystemMatrix& sel, double r0) {
  const std::size_t rows = sel.q.size();
  const std::size_t cols = rows == 0 ? 0 : sel.q[0].size();
  const int rank = fq_rank(sel.q);
  if (rank < static_cast<int>(cols)) {
    std::ostringstream os;
    os << "uplink system rank " << rank << " < " << cols;
    throw RankDeficient(os.str());
  }
  const NetworkDecomposition dec = network_decompose(sel.q);
  RateReport rep;
  rep.per_receiver_rates.assign(rows, 0.0);
  for (const auto& block : dec.blocks) {
    double block_min = r0;
    for (int r : block.rows)
      block_min = std::min(block_min, sel.per_row_rate[static_cast<std::size_t>(r)]);
    for (int r : block.rows)
      rep.per_receiver_rates[static_cast<std::size_t>(r)] = block_min;
    rep.sum_rate += static_cast<double>(block.cols.size()) * block_min;
  }
  rep.outage = rep.sum_rate == 0.0;
  return rep;
}

CMat take_rows(const CMat& h, const std::vector<int>& rows) {
  CMat out(static_cast<Eigen::Index>(rows.size()), h.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = h.row(rows[i]);
  return out;
}

/// Lazily shared per-(channel, snr) state for one grid cell's schemes.
struct SchemeEvaluator {
  const CMat& h;  ///< Uplink channel (receivers × users).
  double snr;
  std::int64_t p;

  std::optional<SystemMatrix> up;    ///< Uplink coefficient system.
  std::optional<CMat> down;          ///< Transposed channel.
  std::optional<SystemMatrix> down_sys;  ///< Downlink coefficient system.

  const SystemMatrix& uplink_system() {
    if (!up) up = build_system_matrix(h, snr, p);
    return *up;
  }
  const CMat& downlink() {
    if (!down) down = downlink_of(h);
    return *down;
  }
  const SystemMatrix& downlink_system() {
    if (!down_sys) down_sys = build_system_matrix(downlink(), snr, p);
    return *down_sys;
  }

  /// Evaluation without selection (the full channel is the network).
  RateReport eval(const std::string& scheme, double r0) {
    if (scheme == "cof") return cof_rate_all_rows(uplink_system(), r0);
    if (scheme == "qcof") return qcof_sum_rate(h, snr, p, r0);
    if (scheme == "lqf") return lqf_sum_rate(h, snr, p, r0);
    if (scheme == "qmf") return report_from_sum(qmf_rate(h, snr, r0));
    if (scheme == "qf") return report_from_sum(qf_rate(h, snr, r0));
    if (scheme == "rcof") return rcof_sum_rate(downlink(), snr, p, r0);
    if (scheme == "rqcof") return rqcof_sum_rate(downlink(), snr, p, r0);
    if (scheme == "ifb") {
      try {
        return ifb_sum_rate(ifb_design(downlink(), snr), snr, p);
      } catch (const RankDeficientModP&) {
        return ifb_sum_rate(make_zfb_design(downlink()), snr, p);
      }
    }
    if (scheme == "zfb") return report_from_sum(zfb_rate(downlink(), snr));
    if (scheme == "czfb") return report_from_sum(czfb_rate(downlink(), snr, r0));
    if (scheme == "cdpc") return report_from_sum(cdpc_rate(downlink(), snr, r0));
    if (scheme == "dpc") return report_from_sum(dpc_sum_capacity(downlink(), snr));
    throw ConfigError("unknown scheme '" + scheme + "'");
  }

  /// Channel-aware greedy selection, for the schemes that define one.
  /// Returns false when the scheme has no selection rule (caller falls
  /// back to the full-channel evaluation).
  bool eval_greedy(const std::string& scheme, double r0, RateReport& rep) {
    if (scheme == "cof" || scheme == "qcof") {
      const SystemMatrix& s = uplink_system();
      const SelectionResult sel = at_select_cof(s, r0);
      if (scheme == "cof") {
        rep = cof_sum_rate(subsystem(s, sel.chosen), r0);
      } else {
        rep = qcof_sum_rate(take_rows(h, sel.chosen), snr, p, r0);
      }
      rep.selected = sel.chosen;
      return true;
    }
    if (scheme == "lqf") {
      const SystemMatrix& s = uplink_system();
      const SelectionResult sel = at_select_lqf(s, r0);
      rep = lqf_sum_rate(take_rows(h, sel.chosen), snr, p, r0);
      rep.selected = sel.chosen;
      return true;
    }
    if (scheme == "rcof" || scheme == "rqcof") {
      const SystemMatrix& s = downlink_system();
      std::vector<double> weights(s.per_row_rate.size());
      for (std::size_t k = 0; k < weights.size(); ++k)
        weights[k] = std::min(r0, s.per_row_rate[k]);
      const SelectionResult sel = ut_select_downlink(s.q, weights);
      const CMat hd_sub = take_rows(downlink(), sel.chosen);
      rep = scheme == "rcof" ? rcof_sum_rate(hd_sub, snr, p, r0)
                             : rqcof_sum_rate(hd_sub, snr, p, r0);
      rep.selected = sel.chosen;
      return true;
    }
    return false;
  }
};

ResultRow evaluate_row(const std::string& scheme, double snr_db, double r0,
                       std::size_t trial, const SelectionPolicy& policy,
                       const std::vector<int>& random_rows,
                       SchemeEvaluator& ev) {
  ResultRow row;
  row.scheme = scheme;
  row.snr_db = snr_db;
  row.r0 = r0;
  row.trial = trial;
  try {
    RateReport rep;
    switch (policy.kind) {
      case SelectionPolicy::Kind::none:
        rep = ev.eval(scheme, r0);
        break;
      case SelectionPolicy::Kind::greedy:
        if (!ev.eval_greedy(scheme, r0, rep)) rep = ev.eval(scheme, r0);
        break;
      case SelectionPolicy::Kind::random:
        rep = ev.eval(scheme, r0);  // ev.h is already the restricted network
        rep.selected = random_rows;
        break;
    }
    row.sum_rate = rep.sum_rate;
    row.outage = rep.outage;
    row.selected = rep.selected;
    row.per_receiver_rates = rep.per_receiver_rates;
  } catch (const RankDeficient&) {
    row.outage = true;  // expected outage event, not an error
  } catch (const RankDeficientModP&) {
    row.outage = true;
  } catch (const NoBasis&) {
    row.outage = true;
  } catch (const Singular&) {
    row.outage = true;
  } catch (const std::exception& e) {
    row.outage = true;
    row.error = e.what();
  }
  return row;
}

std::vector<int> sample_rows(std::size_t total, std::size_t want,
                             std::mt19937_64& rng) {
  std::vector<int> pool(total);
  for (std::size_t i = 0; i < total; ++i) pool[i] = static_cast<int>(i);
  // Partial Fisher–Yates: the first `want` entries are a uniform subset.
  for (std::size_t i = 0; i < want; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, total - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(want);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<ResultRow> run_trial(const SimConfig& cfg, std::size_t trial) {
  auto channel_rng = make_rng(cfg.seed, trial, RngPurpose::channel);
  const CMat h_full = draw_channel(cfg.model, channel_rng);

  std::vector<int> random_rows;
  CMat h_eff = h_full;
  if (cfg.selection.kind == SelectionPolicy::Kind::random) {
    auto sel_rng = make_rng(cfg.seed, trial, RngPurpose::random_select);
    random_rows = sample_rows(cfg.model.receivers, cfg.selection.subset, sel_rng);
    h_eff = take_rows(h_full, random_rows);
  }

  std::vector<ResultRow> rows;
  rows.reserve(cfg.snr_db.size() * cfg.r0.size() * cfg.schemes.size());
  for (double snr_db : cfg.snr_db) {
    const double snr = db_to_linear(snr_db);
    SchemeEvaluator ev{h_eff, snr, cfg.p, {}, {}, {}};
    for (double r0 : cfg.r0)
      for (const auto& scheme : cfg.schemes)
        rows.push_back(evaluate_row(scheme, snr_db, r0, trial, cfg.selection,
                                    random_rows, ev));
  }
  return rows;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API.
// ---------------------------------------------------------------------------

const std::vector<std::string>& known_schemes() {
  static const std::vector<std::string> names = {
      "cof", "qcof", "lqf", "qmf", "qf",            // uplink
      "rcof", "rqcof", "ifb", "zfb", "czfb", "cdpc", "dpc"};  // downlink
  return names;
}

bool scheme_uses_downlink(const std::string& scheme) {
  return scheme == "rcof" || scheme == "rqcof" || scheme == "ifb" ||
         scheme == "zfb" || scheme == "czfb" || scheme == "cdpc" ||
         scheme == "dpc";
}

void SimConfig::validate() const {
  if (schema_version != 1)
    throw ConfigError("config: schema_version: only version 1 is supported");
  model.validate();
  if (snr_db.empty()) throw ConfigError("config: snr_db: must be non-empty");
  if (r0.empty()) throw ConfigError("config: r0: must be non-empty");
  if (schemes.empty()) throw ConfigError("config: schemes: must be non-empty");
  const auto& known = known_schemes();
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (std::find(known.begin(), known.end(), schemes[i]) == known.end())
      throw ConfigError("config: schemes[" + std::to_string(i) +
                        "]: unknown scheme '" + schemes[i] + "'");
    for (std::size_t k = 0; k < i; ++k)
      if (schemes[k] == schemes[i])
        throw ConfigError("config: schemes[" + std::to_string(i) +
                          "]: duplicate scheme '" + schemes[i] + "'");
  }
  if (trials < 1) throw ConfigError("config: trials: must be >= 1");
  try {
    validate_gaussian_prime(p);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: p: ") + e.what());
  }
  if (selection.kind == SelectionPolicy::Kind::random &&
      selection.subset > model.receivers)
    throw ConfigError("config: selection.subset: exceeds model.antennas");
}

SimConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  reject_unknown_keys(j,
                      {"schema_version", "model", "snr_db", "r0", "p", "schemes",
                       "trials", "selection", "seed"},
                      "");

  SimConfig cfg;
  if (j.contains("schema_version")) {
    try {
      cfg.schema_version = j.at("schema_version").get<int>();
    } catch (const json::exception&) {
      throw ConfigError("config: schema_version: must be an integer");
    }
  }
  if (!j.contains("model")) throw ConfigError("config: model: required");
  cfg.model = parse_model(j.at("model"));
  cfg.snr_db = parse_grid(j, "snr_db", false);
  cfg.r0 = parse_grid(j, "r0", true);
  if (j.contains("p")) {
    try {
      cfg.p = j.at("p").get<std::int64_t>();
    } catch (const json::exception&) {
      throw ConfigError("config: p: must be an integer");
    }
  }
  if (!j.contains("schemes")) throw ConfigError("config: schemes: required");
  try {
    cfg.schemes = j.at("schemes").get<std::vector<std::string>>();
  } catch (const json::exception&) {
    throw ConfigError("config: schemes: must be an array of strings");
  }
  if (j.contains("trials")) {
    try {
      const auto v = j.at("trials").get<std::int64_t>();
      if (v < 1) throw ConfigError("config: trials: must be >= 1");
      cfg.trials = static_cast<std::size_t>(v);
    } catch (const json::exception&) {
      throw ConfigError("config: trials: must be an integer");
    }
  }
  if (j.contains("selection")) cfg.selection = parse_selection(j.at("selection"));
  if (j.contains("seed")) {
    try {
      cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception&) {
      throw ConfigError("config: seed: must be a non-negative integer");
    }
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RateReport evaluate_scheme(const std::string& scheme, const CMat& h_uplink,
                           double snr, double r0, std::int64_t p) {
  SchemeEvaluator ev{h_uplink, snr, p, {}, {}, {}};
  return ev.eval(scheme, r0);
}

std::vector<ResultRow> run_montecarlo(const SimConfig& cfg, unsigned max_threads) {
  cfg.validate();
  const std::size_t trials = cfg.trials;
  unsigned workers = max_threads != 0 ? max_threads
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, trials));

  std::vector<std::vector<ResultRow>> per_trial(trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) per_trial[t] = run_trial(cfg, t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
          per_trial[t] = run_trial(cfg, t);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<ResultRow> rows;
  std::size_t total = 0;
  for (const auto& block : per_trial) total += block.size();
  rows.reserve(total);
  for (auto& block : per_trial)
    rows.insert(rows.end(), std::make_move_iterator(block.begin()),
                std::make_move_iterator(block.end()));
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     return std::tie(a.snr_db, a.r0, a.trial, a.scheme) <
                            std::tie(b.snr_db, b.r0, b.trial, b.scheme);
                   });
  return rows;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "scheme,snr_db,r0,trial,sum_rate,outage,n_selected,selected_indices,"
        "per_receiver_rates\n";
  for (const auto& row : rows) {
    os << row.scheme << ',' << fmt("%.10g", row.snr_db) << ','
       << fmt("%.10g", row.r0) << ',' << row.trial << ','
       << fmt("%.12g", row.sum_rate) << ',' << (row.outage ? 1 : 0) << ','
       << row.selected.size() << ',';
    for (std::size_t i = 0; i < row.selected.size(); ++i) {
      if (i) os << ';';
      os << row.selected[i];
    }
    os << ',';
    for (std::size_t i = 0; i < row.per_receiver_rates.size(); ++i) {
      if (i) os << ';';
      os << fmt("%.12g", row.per_receiver_rates[i]);
    }
    os << '\n';
  }
}

std::string csv_string(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

std::vector<ErgodicPoint> ergodic_means(const std::vector<ResultRow>& rows) {
  struct Acc {
    double sum = 0.0;
    std::size_t outages = 0;
    std::size_t count = 0;
  };
  std::map<std::tuple<double, double, std::string>, Acc> cells;
  for (const auto& row : rows) {
    Acc& acc = cells[{row.snr_db, row.r0, row.scheme}];
    acc.sum += row.sum_rate;
    acc.outages += row.outage ? 1 : 0;
    acc.count += 1;
  }
  std::vector<ErgodicPoint> out;
  out.reserve(cells.size());
  for (const auto& [key, acc] : cells) {
    ErgodicPoint pt;
    pt.snr_db = std::get<0>(key);
    pt.r0 = std::get<1>(key);
    pt.scheme = std::get<2>(key);
    pt.trials = acc.count;
    pt.mean_sum_rate = acc.sum / static_cast<double>(acc.count);
    pt.outage_fraction =
        static_cast<double>(acc.outages) / static_cast<double>(acc.count);
    out.push_back(std::move(pt));
  }
  return out;
}

void write_plot_table(std::ostream& os, const std::vector<ResultRow>& rows,
                      const std::vector<std::string>& schemes) {
  const auto points = ergodic_means(rows);
  os << "# snr_db r0";
  for (const auto& s : schemes) os << ' ' << s;
  os << '\n';
  // points are sorted by (snr_db, r0, scheme); walk the (snr, r0) groups.
  std::size_t i = 0;
  while (i < points.size()) {
    const double snr_db = points[i].snr_db;
    const double r0 = points[i].r0;
    std::size_t j = i;
    while (j < points.size() && points[j].snr_db == snr_db && points[j].r0 == r0)
      ++j;
    os << fmt("%.10g", snr_db) << ' ' << fmt("%.10g", r0);
    for (const auto& s : schemes) {
      double v = std::nan("");
      for (std::size_t k = i; k < j; ++k)
        if (points[k].scheme == s) {
          v = points[k].mean_sum_rate;
          break;
        }
      os << ' ' << fmt("%.12g", v);
    }
    os << '\n';
    i = j;
  }
}

std::vector<WynerCurvePoint> wyner_curves(double gamma, double snr_db,
                                          const std::vector<double>& r0_grid,
                                          std::int64_t p) {
  const double snr = db_to_linear(snr_db);
  std::vector<WynerCurvePoint> out;
  out.reserve(r0_grid.size());
  for (double r0 : r0_grid) {
    WynerParams wp;
    wp.gamma = gamma;
    wp.l = 0;
    wp.snr = snr;
    wp.r0 = r0;
    WynerCurvePoint pt;
    pt.r0 = r0;
    pt.cof = wyner_power_allocation(wp, WynerScheme::cof, 0).rate;
    {
      // Unit power split: both effective channels get their own best
      // integer coefficients, one common code rate.
      const PowerAllocation pa = wyner_effective_channels(gamma, 1.0);
      const double ro = std::min(r0, find_best_coefficients(pa.h_odd, snr).rate);
      const double re = std::min(r0, find_best_coefficients(pa.h_even, snr).rate);
      pt.cof_unit_split = std::min(ro, re);
    }
    pt.qcof = wyner_power_allocation(wp, WynerScheme::cof, p).rate;
    pt.rcof = wyner_power_allocation(wp, WynerScheme::rcof, 0).rate;
    pt.rqcof = wyner_power_allocation(wp, WynerScheme::rcof, p).rate;
    pt.qmf = qmf_wyner_per_user(wp);
    pt.df = df_wyner_rate(wp);
    out.push_back(pt);
  }
  return out;
}

void write_wyner_csv(std::ostream& os, const std::vector<WynerCurvePoint>& pts) {
  os << "r0,cof,cof_unit_split,qcof,rcof,rqcof,qmf,df\n";
  for (const auto& pt : pts) {
    os << fmt("%.10g", pt.r0) << ',' << fmt("%.12g", pt.cof) << ','
       << fmt("%.12g", pt.cof_unit_split) << ',' << fmt("%.12g", pt.qcof) << ','
       << fmt("%.12g", pt.rcof) << ',' << fmt("%.12g", pt.rqcof) << ','
       << fmt("%.12g", pt.qmf) << ',' << fmt("%.12g", pt.df) << '\n';
  }
}

}  // namespace cfdas
