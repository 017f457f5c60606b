// SPDX-License-Identifier: MIT
/**
 * @file harness.hpp
 * @brief Monte-Carlo experiment engine: JSON configuration, per-trial
 *        deterministic channel draws, scheme dispatch with optional
 *        receiver selection, CSV output, and the fixed simulation recipes
 *        exposed by the command line tool.
 *
 * Reproducibility contract: every result row is a pure function of
 * (config, seed, trial index). Channels are drawn from the purpose-tagged
 * stream (seed, trial, channel) and random subsets from
 * (seed, trial, random_select), so adding schemes or grid points never
 * perturbs the draws, and parallel execution equals serial execution.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cfdas/channel.hpp"
#include "cfdas/types.hpp"

namespace cfdas {

/// Receiver-subset policy applied before scheme evaluation.
///
/// - none: every scheme sees the full channel.
/// - greedy: channel-aware selection. Uplink integer schemes (cof, qcof)
///   use the block-min basis selection, lqf its linear one-shot variant,
///   and the downlink integer schemes (rcof, rqcof) the user-side greedy;
///   schemes without a selection rule run on the full channel.
/// - random: a uniformly chosen fixed subset of receiver rows, drawn once
///   per trial independently of the channel; every scheme then runs on the
///   restricted network.
struct SelectionPolicy {
  enum class Kind { none, greedy, random };
  Kind kind = Kind::none;
  std::size_t subset = 0;  ///< Row count for the random policy.
};

/// One Monte-Carlo experiment. `snr_db` values are in dB (converted to
/// linear power internally); rates are bits per channel use throughout.
struct SimConfig {
  int schema_version = 1;
  ChannelModel model;
  std::vector<double> snr_db;
  std::vector<double> r0;
  std::int64_t p = 7;
  std::vector<std::string> schemes;
  std::size_t trials = 1;
  SelectionPolicy selection;
  std::uint64_t seed = 0;

  /// Cross-field checks; throws ConfigError naming the offending field.
  void validate() const;
};

/// Identifiers accepted in SimConfig::schemes, in canonical order:
/// uplink: cof, qcof, lqf, qmf, qf; downlink (evaluated on the transposed
/// channel): rcof, rqcof, ifb, zfb, czfb, cdpc, dpc.
const std::vector<std::string>& known_schemes();

/// True for schemes evaluated on the downlink (transposed) channel.
bool scheme_uses_downlink(const std::string& scheme);

/// Parses a JSON configuration document. Unknown fields, missing required
/// fields, and type mismatches all raise ConfigError with a field-path
/// diagnostic; syntax errors include the parser's line/column report.
SimConfig parse_config(const std::string& json_text);

/// Reads and parses a configuration file; missing or unreadable files
/// raise ConfigError.
SimConfig load_config(const std::string& path);

/// One (scheme, snr, r0, trial) outcome. `error` keeps the diagnostic for
/// rows that failed to evaluate (they are reported as zero-rate outages in
/// the CSV, which has no error column).
struct ResultRow {
  std::string scheme;
  double snr_db = 0.0;
  double r0 = 0.0;
  std::size_t trial = 0;
  double sum_rate = 0.0;
  bool outage = false;
  std::vector<int> selected;
  std::vector<double> per_receiver_rates;
  std::string error;
};

/// Evaluates one scheme on one uplink channel draw (no selection).
/// Downlink schemes see the transposed matrix. Rank-deficient or singular
/// draws yield a zero-rate outage report rather than an exception; other
/// evaluation errors propagate.
RateReport evaluate_scheme(const std::string& scheme, const CMat& h_uplink,
                           double snr, double r0, std::int64_t p);

/// Runs the full (snr × r0 × trial × scheme) grid. Per-row failures are
/// recorded in the row and never abort the sweep. Rows are sorted by
/// (snr_db, r0, trial, scheme). `max_threads` = 0 uses the hardware
/// concurrency; any thread count produces identical rows.
std::vector<ResultRow> run_montecarlo(const SimConfig& cfg,
                                      unsigned max_threads = 0);

/// Writes rows as CSV with the fixed column set
/// scheme,snr_db,r0,trial,sum_rate,outage,n_selected,selected_indices,
/// per_receiver_rates (lists semicolon-joined). Deterministic formatting.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::string csv_string(const std::vector<ResultRow>& rows);

/// Ergodic summary of one (scheme, snr_db, r0) cell: the mean sum rate
/// over trials (outage rows count as zero, matching the rate they achieve)
/// and the outage fraction.
struct ErgodicPoint {
  std::string scheme;
  double snr_db = 0.0;
  double r0 = 0.0;
  double mean_sum_rate = 0.0;
  double outage_fraction = 0.0;
  std::size_t trials = 0;
};

/// Groups rows by (scheme, snr_db, r0); output sorted by (snr_db, r0,
/// scheme).
std::vector<ErgodicPoint> ergodic_means(const std::vector<ResultRow>& rows);

/// Plot-friendly wide table: one line per (snr_db, r0) with the ergodic
/// mean sum rate of each scheme in the given column order,
/// space-separated with a leading `#` header line; absent cells print nan.
void write_plot_table(std::ostream& os, const std::vector<ResultRow>& rows,
                      const std::vector<std::string>& schemes);

/// Per-user rate curves for the symmetric ring model at one (gamma, snr)
/// operating point: integer-combination uplink/downlink schemes with the
/// optimized power split (and the uplink scheme at the unit split), their
/// quantized variants at prime p, and the quantize-map / decode baselines.
struct WynerCurvePoint {
  double r0 = 0.0;
  double cof = 0.0;             ///< uplink, optimized split
  double cof_unit_split = 0.0;  ///< uplink, split fixed at 1
  double qcof = 0.0;            ///< uplink, quantized at p
  double rcof = 0.0;            ///< downlink, optimized split
  double rqcof = 0.0;           ///< downlink, quantized at p
  double qmf = 0.0;             ///< quantize-map bound (infinite ring)
  double df = 0.0;              ///< decode-and-forward
};

std::vector<WynerCurvePoint> wyner_curves(double gamma, double snr_db,
                                          const std::vector<double>& r0_grid,
                                          std::int64_t p);

/// CSV with header r0,cof,cof_unit_split,qcof,rcof,rqcof,qmf,df.
void write_wyner_csv(std::ostream& os, const std::vector<WynerCurvePoint>& pts);

}  // namespace cfdas
