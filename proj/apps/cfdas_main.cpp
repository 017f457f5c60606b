// SPDX-License-Identifier: MIT
/**
 * @file cfdas_main.cpp
 * @brief Command line front end: single-channel rate reports, Monte-Carlo
 *        sweeps from JSON configs, the fixed ring-model and beamforming
 *        recipes, and a quick self test.
 *
 * Exit codes: 0 success, 1 runtime failure, 2 configuration/usage error.
 */
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfdas/baselines.hpp"
#include "cfdas/channel.hpp"
#include "cfdas/errors.hpp"
#include "cfdas/gfield.hpp"
#include "cfdas/harness.hpp"
#include "cfdas/ifb.hpp"
#include "cfdas/rng.hpp"
#include "cfdas/types.hpp"

namespace {

using namespace cfdas;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Opens the output stream: path "-" or empty means stdout.
struct OutputSink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit OutputSink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + path + "'");
    os = &file;
  }
};

struct RateArgs {
  std::string kind = "rayleigh";
  std::size_t users = 2;
  std::size_t antennas = 2;
  double activity = 1.0;
  double gamma = 0.7;
  std::size_t identity = 0;
  double snr_db = 20.0;
  double r0 = 6.0;
  std::int64_t p = 7;
  std::vector<std::string> schemes;
  std::uint64_t seed = 0;
  std::string out;
};

int run_rate(const RateArgs& args) {
  CMat h;
  if (args.identity > 0) {
    h = CMat::Identity(static_cast<Eigen::Index>(args.identity),
                       static_cast<Eigen::Index>(args.identity));
  } else {
    ChannelModel model;
    if (args.kind == "bernoulli_gaussian")
      model.kind = ChannelModel::Kind::bernoulli_gaussian;
    else if (args.kind == "rayleigh")
      model.kind = ChannelModel::Kind::rayleigh;
    else if (args.kind == "wyner")
      model.kind = ChannelModel::Kind::wyner;
    else
      throw ConfigError("rate: --kind: unknown kind '" + args.kind + "'");
    model.transmitters = args.users;
    model.receivers = args.antennas;
    model.activity = args.activity;
    model.gamma = args.gamma;
    model.validate();
    auto rng = make_rng(args.seed, 0, RngPurpose::channel);
    h = draw_channel(model, rng);
  }

  std::vector<std::string> schemes =
      args.schemes.empty() ? known_schemes() : args.schemes;
  for (const auto& s : schemes) {
    const auto& known = known_schemes();
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw ConfigError("rate: --schemes: unknown scheme '" + s + "'");
  }
  validate_gaussian_prime(args.p);

  OutputSink sink(args.out);
  const double snr = db_to_linear(args.snr_db);
  char buf[64];
  *sink.os << "scheme,sum_rate,outage,per_receiver_rates\n";
  for (const auto& scheme : schemes) {
    std::string rates;
    std::string status = "0";
    double sum = 0.0;
    try {
      const RateReport rep = evaluate_scheme(scheme, h, snr, args.r0, args.p);
      sum = rep.sum_rate;
      status = rep.outage ? "1" : "0";
      for (std::size_t i = 0; i < rep.per_receiver_rates.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", rep.per_receiver_rates[i]);
        if (i) rates += ';';
        rates += buf;
      }
    } catch (const Error& e) {
      status = "1";
      rates = "";
      std::cerr << "rate: " << scheme << ": " << e.what() << "\n";
    }
    std::snprintf(buf, sizeof buf, "%.12g", sum);
    *sink.os << scheme << ',' << buf << ',' << status << ',' << rates << '\n';
  }
  return 0;
}

struct SweepArgs {
  std::string config;
  std::string out;
  bool plot_layout = false;
  // Optional overrides:
  std::vector<double> snr_db;
  std::vector<double> r0;
  std::vector<std::string> schemes;
  std::int64_t p = -1;
  std::int64_t trials = -1;
  std::int64_t seed = -1;
  unsigned threads = 0;
};

int run_sweep(const SweepArgs& args) {
  SimConfig cfg = load_config(args.config);
  if (!args.snr_db.empty()) cfg.snr_db = args.snr_db;
  if (!args.r0.empty()) cfg.r0 = args.r0;
  if (!args.schemes.empty()) cfg.schemes = args.schemes;
  if (args.p >= 0) cfg.p = args.p;
  if (args.trials >= 0) cfg.trials = static_cast<std::size_t>(args.trials);
  if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
  cfg.validate();

  const auto rows = run_montecarlo(cfg, args.threads);
  OutputSink sink(args.out);
  if (args.plot_layout)
    write_plot_table(*sink.os, rows, cfg.schemes);
  else
    write_csv(*sink.os, rows);
  return 0;
}

struct WynerArgs {
  double gamma = 0.7;
  double snr_db = 25.0;
  std::vector<double> r0;
  std::int64_t p = 251;
  std::string out;
};

int run_wyner(const WynerArgs& args) {
  std::vector<double> r0 = args.r0;
  if (r0.empty())
    for (int i = 1; i <= 10; ++i) r0.push_back(i);
  validate_gaussian_prime(args.p);
  const auto pts = wyner_curves(args.gamma, args.snr_db, r0, args.p);
  OutputSink sink(args.out);
  write_wyner_csv(*sink.os, pts);
  return 0;
}

struct IfbArgs {
  std::size_t n = 5;
  std::vector<double> snr_db;
  std::int64_t trials = 200;
  std::int64_t p = 251;
  std::uint64_t seed = 0;
  std::string out;
};

int run_ifb(const IfbArgs& args) {
  std::vector<double> grid = args.snr_db;
  if (grid.empty())
    for (int db = 0; db <= 30; db += 5) grid.push_back(db);
  validate_gaussian_prime(args.p);
  if (args.trials < 1) throw ConfigError("ifb: --trials: must be >= 1");

  ChannelModel model;
  model.kind = ChannelModel::Kind::rayleigh;
  model.transmitters = args.n;
  model.receivers = args.n;

  OutputSink sink(args.out);
  char buf[64];
  *sink.os << "snr_db,ifb,zfb,dpc,ifb_gap_per_user\n";
  for (double snr_db : grid) {
    const double snr = db_to_linear(snr_db);
    double ifb_sum = 0.0;
    double zfb_sum = 0.0;
    double dpc_sum = 0.0;
    const auto trials = static_cast<std::size_t>(args.trials);
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = make_rng(args.seed, t, RngPurpose::channel);
      const CMat hd = draw_channel(model, rng);
      try {
        RateReport rep;
        try {
          rep = ifb_sum_rate(ifb_design(hd, snr), snr, args.p);
        } catch (const RankDeficientModP&) {
          rep = ifb_sum_rate(make_zfb_design(hd), snr, args.p);
        }
        ifb_sum += rep.sum_rate;
        zfb_sum += zfb_rate(hd, snr);
        dpc_sum += dpc_sum_capacity(hd, snr);
      } catch (const Singular&) {
        // Singular draw: all three schemes score zero.
      }
    }
    const double inv = 1.0 / static_cast<double>(trials);
    const double gap =
        (dpc_sum - ifb_sum) * inv / static_cast<double>(args.n);
    *sink.os << snr_db;
    std::snprintf(buf, sizeof buf, ",%.12g,%.12g,%.12g,%.12g", ifb_sum * inv,
                  zfb_sum * inv, dpc_sum * inv, gap);
    *sink.os << buf << '\n';
  }
  return 0;
}

int run_selftest() {
  int failures = 0;
  const auto check = [&](const char* name, bool ok) {
    std::cout << "selftest: " << name << ": " << (ok ? "ok" : "FAIL") << "\n";
    if (!ok) ++failures;
  };

  // Field inverses at p = 7: a * a^-1 == 1 for every nonzero element.
  {
    bool ok = true;
    for (int re = 0; re < 7 && ok; ++re)
      for (int im = 0; im < 7 && ok; ++im) {
        if (re == 0 && im == 0) continue;
        const FqElem x{re, im, 7};
        const FqElem prod = fq_mul(x, fq_inverse(x));
        ok = prod.a == 1 && prod.b == 0;
      }
    check("finite field inverses (p=7)", ok);
  }

  // Deterministic purpose streams: same key -> same draw, different
  // purpose -> different stream.
  {
    auto a = make_rng(42, 7, RngPurpose::channel);
    auto b = make_rng(42, 7, RngPurpose::channel);
    auto c = make_rng(42, 7, RngPurpose::noise);
    const bool same = a() == b();
    const bool diff = b() != c() || a() != c();
    check("purpose-tagged rng streams", same && diff);
  }

  // Ring channel matrix is the expected deterministic circulant.
  {
    ChannelModel model;
    model.kind = ChannelModel::Kind::wyner;
    model.transmitters = 4;
    model.receivers = 4;
    model.gamma = 0.5;
    auto rng = make_rng(0, 0, RngPurpose::channel);
    const CMat h = draw_channel(model, rng);
    bool ok = true;
    for (int r = 0; r < 4 && ok; ++r)
      for (int c = 0; c < 4 && ok; ++c) {
        const double want = r == c ? 1.0
                            : (std::abs(r - c) == 1 || std::abs(r - c) == 3)
                                ? 0.5
                                : 0.0;
        ok = std::abs(h(r, c) - cplx(want, 0.0)) < 1e-15;
      }
    check("ring channel layout", ok);
  }

  // Integer-forcing on the identity channel equals plain zero forcing.
  {
    const CMat eye = CMat::Identity(3, 3);
    const double snr = db_to_linear(10.0);
    const RateReport rep = ifb_sum_rate(ifb_design(eye, snr), snr, 7);
    const double zf = zfb_rate(eye, snr);
    check("identity-channel beamforming match",
          std::abs(rep.sum_rate - zf) < 1e-9);
  }

  // Monte-Carlo reproducibility: same config twice -> identical CSV.
  {
    SimConfig cfg;
    cfg.model.kind = ChannelModel::Kind::rayleigh;
    cfg.model.transmitters = 2;
    cfg.model.receivers = 2;
    cfg.snr_db = {10.0};
    cfg.r0 = {4.0};
    cfg.schemes = {"cof", "zfb"};
    cfg.trials = 5;
    cfg.seed = 3;
    const std::string once = csv_string(run_montecarlo(cfg, 1));
    const std::string twice = csv_string(run_montecarlo(cfg, 1));
    check("montecarlo determinism", !once.empty() && once == twice);
  }

  if (failures) {
    std::cout << "selftest: " << failures << " check(s) failed\n";
    return 1;
  }
  std::cout << "selftest: all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Distributed-antenna sum-rate simulator: integer-combination uplink/"
      "downlink schemes, quantized variants, beamforming and cut-set "
      "baselines"};
  app.require_subcommand(1);

  RateArgs rate_args;
  auto* rate = app.add_subcommand(
      "rate", "Evaluate schemes on one channel draw and print a rate report");
  rate->add_option("--kind", rate_args.kind,
                   "Channel kind: bernoulli_gaussian|rayleigh|wyner");
  rate->add_option("--users", rate_args.users, "Number of transmitting users");
  rate->add_option("--antennas", rate_args.antennas, "Number of antenna terminals");
  rate->add_option("--activity", rate_args.activity,
                   "Entry activity probability (bernoulli_gaussian)");
  rate->add_option("--gamma", rate_args.gamma, "Ring inter-cell gain (wyner)");
  rate->add_option("--identity", rate_args.identity,
                   "Use the N x N identity channel instead of a draw");
  rate->add_option("--snr-db", rate_args.snr_db, "Operating SNR in dB");
  rate->add_option("--r0", rate_args.r0, "Backhaul rate in bits/channel use");
  rate->add_option("--p", rate_args.p, "Field prime (3 mod 4)");
  rate->add_option("--schemes", rate_args.schemes, "Schemes (default: all)")
      ->delimiter(',');
  rate->add_option("--seed", rate_args.seed, "Master seed");
  rate->add_option("--out", rate_args.out, "Output path (default stdout)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "Run a Monte-Carlo sweep from a JSON config and write CSV");
  sweep->add_option("--config", sweep_args.config, "JSON config path")
      ->required();
  sweep->add_option("--out", sweep_args.out, "Output path (default stdout)");
  sweep->add_flag("--plot-layout", sweep_args.plot_layout,
                  "Write a plot-friendly wide table of ergodic means instead "
                  "of per-trial rows");
  sweep->add_option("--snr-db", sweep_args.snr_db, "Override the SNR grid (dB)")
      ->delimiter(',');
  sweep->add_option("--r0", sweep_args.r0, "Override the backhaul grid")
      ->delimiter(',');
  sweep->add_option("--schemes", sweep_args.schemes, "Override the scheme list")
      ->delimiter(',');
  sweep->add_option("--p", sweep_args.p, "Override the field prime");
  sweep->add_option("--trials", sweep_args.trials, "Override the trial count");
  sweep->add_option("--seed", sweep_args.seed, "Override the master seed");
  sweep->add_option("--threads", sweep_args.threads,
                    "Worker threads (0 = hardware)");

  WynerArgs wyner_args;
  auto* wyner = app.add_subcommand(
      "wyner", "Symmetric-ring per-user rate curves vs backhaul rate");
  wyner->add_option("--gamma", wyner_args.gamma, "Inter-cell gain");
  wyner->add_option("--snr-db", wyner_args.snr_db, "Operating SNR in dB");
  wyner->add_option("--r0", wyner_args.r0, "Backhaul grid (default 1..10)")
      ->delimiter(',');
  wyner->add_option("--p", wyner_args.p, "Field prime for quantized variants");
  wyner->add_option("--out", wyner_args.out, "Output path (default stdout)");

  IfbArgs ifb_args;
  auto* ifb = app.add_subcommand(
      "ifb", "Ergodic integer-forcing beamforming vs zero forcing and the "
             "per-antenna broadcast capacity");
  ifb->add_option("--n", ifb_args.n, "Square system size (users = antennas)");
  ifb->add_option("--snr-db", ifb_args.snr_db, "SNR grid in dB (default 0:5:30)")
      ->delimiter(',');
  ifb->add_option("--trials", ifb_args.trials, "Channel draws per SNR point");
  ifb->add_option("--p", ifb_args.p, "Field prime");
  ifb->add_option("--seed", ifb_args.seed, "Master seed");
  ifb->add_option("--out", ifb_args.out, "Output path (default stdout)");

  auto* selftest =
      app.add_subcommand("selftest", "Run quick built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage/config problem
  }

  try {
    if (rate->parsed()) return run_rate(rate_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (wyner->parsed()) return run_wyner(wyner_args);
    if (ifb->parsed()) return run_ifb(ifb_args);
    if (selftest->parsed()) return run_selftest();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
