// upslab: transforms, set constants, uncertainty audits, and sparse
// recovery on Z_n^d, driven by JSON/CSV/PGM files.
//
// Exit codes: 0 success, 1 result without a guarantee, 2 bad input,
// 3 grid cap exceeded, 4 internal-consistency failure, 5 budget exceeded.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "upslab/io.hpp"
#include "upslab/recovery.hpp"
#include "upslab/rng.hpp"

namespace {

using namespace upslab;
using io::json;

json load_json(const std::string& path) { return json::parse(io::read_text_file(path)); }

template <typename T>
void apply_cfg(const json& cfg, const CLI::Option* opt, std::optional<T>& val,
               const std::string& key) {
  if (opt != nullptr && opt->count() > 0) return;
  if (cfg.contains(key)) val = cfg.at(key).get<T>();
}

template <typename T>
T required(const std::optional<T>& v, const std::string& what) {
  if (!v) throw std::invalid_argument("missing required option --" + what);
  return *v;
}

std::string csv_cell(double x) { return io::format_double(x); }

struct CommonArgs {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config;
  std::optional<std::string> out;
  json cfg = json::object();
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  void finalize() {
    if (config) {
      cfg = load_json(*config);
      if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
    }
    apply_cfg(cfg, seed_opt, seed, "seed");
    apply_cfg(cfg, out_opt, out, "out");
  }
};

// ---------------------------------------------------------------------------
// dft

int cmd_dft(const CommonArgs& common, const std::string& in, const std::string& direction) {
  const Signal input = io::signal_from_json(load_json(in));
  Signal output;
  if (direction == "forward") {
    output = dft_forward(input);
  } else if (direction == "inverse") {
    output = dft_inverse(input);
  } else {
    throw std::invalid_argument("direction must be forward or inverse");
  }
  io::write_text_file_atomic(required(common.out, "out"),
                             io::dump_json(io::signal_to_json(output)));
  return 0;
}

// ---------------------------------------------------------------------------
// profile-set

int cmd_profile_set(const CommonArgs& common, const std::string& in) {
  const IndexSet s = io::index_set_from_json(load_json(in));
  const SetProfile prof = profile(s);
  std::optional<std::int64_t> brute;
  constexpr std::int64_t kBruteCap = 512;
  if (s.size() <= kBruteCap) brute = additive_energy(s, kBruteCap);
  const std::string content = io::dump_json(io::profile_to_json(s.grid, prof, brute));
  if (brute && *brute != prof.energy)
    throw InternalCheckError("energy bridge disagreement: bruteforce " + std::to_string(*brute) +
                             " vs fourier " + std::to_string(prof.energy));
  io::write_text_file_atomic(required(common.out, "out"), content);
  return 0;
}

// ---------------------------------------------------------------------------
// recover

struct RecoverArgs {
  std::optional<std::string> in;
  std::optional<std::string> method;
  std::optional<std::string> report;
  std::optional<std::int64_t> sparsity;
  std::vector<double> alphabet;
  std::optional<double> p;
  std::optional<double> cpq;
  std::optional<double> residual_tol;
};

int cmd_recover(const CommonArgs& common, const RecoverArgs& args) {
  const MaskedSpectrum m = io::masked_from_json(load_json(required(args.in, "in")));
  const std::string method = required(args.method, "method");

  DraOptions opts;
  opts.p = args.p;
  opts.cpq = args.cpq;

  RecoveryReport report;
  if (method == "dra") {
    report = dra_recover(m, opts);
  } else if (method == "alphabet") {
    const std::vector<double> alphabet =
        args.alphabet.empty() ? std::vector<double>{0.0, 1.0} : args.alphabet;
    report = alphabet_recover(m, alphabet, opts);
  } else if (method == "enum") {
    report = enumeration_recover(m, required(args.sparsity, "sparsity"),
                                 args.residual_tol.value_or(1e-8));
  } else {
    throw std::invalid_argument("method must be dra, alphabet, or enum");
  }

  const std::string signal_out = io::dump_json(io::signal_to_json(report.recovered));
  const std::string report_out = io::dump_json(io::report_to_json(report));
  io::write_text_file_atomic(required(common.out, "out"), signal_out);
  io::write_text_file_atomic(required(args.report, "report"), report_out);
  return report.guaranteed ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sample-salem

struct SampleSalemArgs {
  std::optional<std::int64_t> n;
  std::optional<int> d;
  std::optional<std::int64_t> size;
  std::optional<double> epsilon;
  std::optional<int> trials;
};

int cmd_sample_salem(const CommonArgs& common, const SampleSalemArgs& args) {
  const GridParams grid = make_grid(required(args.n, "n"), required(args.d, "d"));
  const std::int64_t size = required(args.size, "size");
  const double epsilon = required(args.epsilon, "epsilon");
  const int trials = required(args.trials, "trials");
  const std::uint64_t seed = required(common.seed, "seed");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (2 * size > grid.total)
    throw std::invalid_argument("sample-salem requires |A| <= n^d / 2");

  const double bound = std::sqrt((1.0 + epsilon) * static_cast<double>(size) *
                                 static_cast<double>(grid.d) *
                                 std::log(static_cast<double>(grid.n))) /
                       static_cast<double>(grid.total);
  std::ostringstream csv;
  csv << "trial,phi,bound,satisfied\n";
  int good = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const IndexSet a = random_set(grid, size, derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const double v = phi(a);
    const bool ok = v < bound;
    good += ok ? 1 : 0;
    csv << trial << "," << csv_cell(v) << "," << csv_cell(bound) << "," << (ok ? 1 : 0) << "\n";
  }
  io::write_text_file_atomic(required(common.out, "out"), csv.str());
  std::cout << "satisfied_fraction=" << csv_cell(static_cast<double>(good) / trials) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// energy-stats

struct EnergyStatsArgs {
  std::optional<std::int64_t> sigma_size;
  std::optional<std::int64_t> subset_size;
  std::optional<int> trials;
};

int cmd_energy_stats(const CommonArgs& common, const SampleSalemArgs& grid_args,
                     const EnergyStatsArgs& args) {
  const GridParams grid = make_grid(required(grid_args.n, "n"), required(grid_args.d, "d"));
  const std::int64_t sigma_size = required(args.sigma_size, "sigma-size");
  const std::int64_t subset_size = required(args.subset_size, "subset-size");
  const int trials = required(args.trials, "trials");
  const std::uint64_t seed = required(common.seed, "seed");
  if (static_cast<double>(sigma_size) <=
      std::pow(static_cast<double>(grid.n), static_cast<double>(grid.d) / 2.0))
    throw std::invalid_argument("energy-stats requires |Sigma| > n^(d/2)");
  if (subset_size < 1 || subset_size > sigma_size)
    throw std::invalid_argument("subset size must lie in [1, |Sigma|]");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  std::ostringstream csv;
  csv << "trial,kind,size,energy,ratio\n";

  // Control row: the axis subgroup {t * e_1}, whose energy is exactly n^3.
  {
    std::vector<std::int64_t> line;
    const std::int64_t stride = grid.total / grid.n;
    for (std::int64_t t = 0; t < grid.n; ++t) line.push_back(t * stride);
    const IndexSet sub = make_index_set(grid, std::move(line));
    const std::int64_t e = additive_energy(sub);
    csv << "-1,control," << sub.size() << "," << e << ","
        << csv_cell(static_cast<double>(e) / static_cast<double>(sub.size() * sub.size())) << "\n";
  }

  double sigma_sum = 0.0;
  double subset_sum = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
    const IndexSet sigma = random_set(grid, sigma_size, derive_seed(trial_seed, 0));
    const std::int64_t sigma_energy = energy_via_fourier(sigma);
    const double sigma_ratio = static_cast<double>(sigma_energy) /
                               static_cast<double>(sigma.size() * sigma.size());
    sigma_sum += sigma_ratio;
    csv << trial << ",sigma," << sigma.size() << "," << sigma_energy << ","
        << csv_cell(sigma_ratio) << "\n";

    // Random subset of sigma via a partial shuffle of its points.
    Rng rng(derive_seed(trial_seed, 1));
    std::vector<std::int64_t> pool = sigma.indices;
    for (std::int64_t i = 0; i < subset_size; ++i) {
      const auto j = i + static_cast<std::int64_t>(
                             rng.below(static_cast<std::uint64_t>(pool.size()) -
                                       static_cast<std::uint64_t>(i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(subset_size));
    const IndexSet u = make_index_set(grid, std::move(pool));
    const std::int64_t u_energy = additive_energy(u);
    const double u_ratio =
        static_cast<double>(u_energy) / static_cast<double>(u.size() * u.size());
    subset_sum += u_ratio;
    csv << trial << ",subset," << u.size() << "," << u_energy << "," << csv_cell(u_ratio) << "\n";
  }
  io::write_text_file_atomic(required(common.out, "out"), csv.str());
  std::cout << "mean_sigma_ratio=" << csv_cell(sigma_sum / trials) << "\n";
  std::cout << "mean_subset_ratio=" << csv_cell(subset_sum / trials) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep-dra

struct SweepArgs {
  std::optional<std::int64_t> e_min, e_max, s_min, s_max;
  std::optional<int> trials;
  std::optional<std::string> pgm;
};

int cmd_sweep_dra(const CommonArgs& common, const SampleSalemArgs& grid_args,
                  const SweepArgs& args) {
  const GridParams grid = make_grid(required(grid_args.n, "n"), required(grid_args.d, "d"));
  const std::int64_t e_min = required(args.e_min, "e-min");
  const std::int64_t e_max = required(args.e_max, "e-max");
  const std::int64_t s_min = required(args.s_min, "s-min");
  const std::int64_t s_max = required(args.s_max, "s-max");
  const int trials = required(args.trials, "trials");
  const std::uint64_t seed = required(common.seed, "seed");
  if (e_min < 1 || e_min > e_max || e_max > grid.total || s_min < 1 || s_min > s_max ||
      s_max > grid.total || trials < 1)
    throw std::invalid_argument("bad sweep ranges");

  Signal indicator = zero_signal(grid, Domain::Space);
  std::ostringstream csv;
  csv << "e_size,s_size,successes,trials,condition_i_holds\n";
  std::vector<int> pixels;
  for (std::int64_t e = e_min; e <= e_max; ++e) {
    for (std::int64_t s = s_min; s <= s_max; ++s) {
      const std::uint64_t cell =
          static_cast<std::uint64_t>(e) << 32 | static_cast<std::uint64_t>(s);
      int successes = 0;
      for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = derive_seed(seed, cell, static_cast<std::uint64_t>(trial));
        const IndexSet e_set = random_set(grid, e, derive_seed(trial_seed, 0));
        const IndexSet s_set = random_set(grid, s, derive_seed(trial_seed, 1));
        indicator.values.setZero();
        for (std::int64_t x : e_set.indices) indicator.values[x] = 1.0;
        DraOptions opts;
        opts.evaluate_salem = false;
        const RecoveryReport rep = dra_recover(mask_spectrum(dft_forward(indicator), s_set), opts);
        bool ok = true;
        for (std::int64_t x = 0; x < grid.total && ok; ++x) {
          const double expect = e_set.contains(x) ? 1.0 : 0.0;
          ok = rep.recovered.values[x] == Complex{expect, 0.0};
        }
        successes += ok ? 1 : 0;
      }
      const bool condition = recovery_condition(ConditionId::DRA43i, e, s, grid).satisfied;
      csv << e << "," << s << "," << successes << "," << trials << "," << (condition ? 1 : 0)
          << "\n";
      pixels.push_back(static_cast<int>(
          std::llround(255.0 * static_cast<double>(successes) / static_cast<double>(trials))));
    }
  }
  io::write_text_file_atomic(required(common.out, "out"), csv.str());
  io::write_text_file_atomic(required(args.pgm, "pgm"),
                             io::pgm_p2(s_max - s_min + 1, e_max - e_min + 1, pixels));
  return 0;
}

// ---------------------------------------------------------------------------
// demo-figure

int cmd_demo_figure(const CommonArgs& common, const std::string& in) {
  const IndexSet s = io::index_set_from_json(load_json(in));
  if (s.grid.d != 2) throw std::invalid_argument("demo-figure needs a 2-dimensional grid");
  const std::string prefix = required(common.out, "out");

  std::vector<int> set_pixels(static_cast<std::size_t>(s.grid.total), 0);
  Signal indicator = zero_signal(s.grid, Domain::Space);
  for (std::int64_t x : s.indices) {
    set_pixels[static_cast<std::size_t>(x)] = 255;
    indicator.values[x] = 1.0;
  }
  const Signal spectrum = dft_forward(indicator);
  const double peak = spectrum.values.cwiseAbs().maxCoeff();
  std::vector<int> spec_pixels(static_cast<std::size_t>(s.grid.total), 0);
  if (peak > 0.0) {
    for (std::int64_t m = 0; m < s.grid.total; ++m)
      spec_pixels[static_cast<std::size_t>(m)] =
          static_cast<int>(std::llround(255.0 * std::abs(spectrum.values[m]) / peak));
  }
  io::write_text_file_atomic(prefix + "_set.pgm", io::pgm_p2(s.grid.n, s.grid.n, set_pixels));
  io::write_text_file_atomic(prefix + "_spectrum.pgm",
                             io::pgm_p2(s.grid.n, s.grid.n, spec_pixels));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uncertainty-principle lab on Z_n^d"};
  app.require_subcommand(1);

  CommonArgs common;
  common.seed_opt = app.add_option("--seed", common.seed, "random seed (no wall-clock fallback)");
  app.add_option("--config", common.config, "flat JSON config; flags override its keys");
  common.out_opt = app.add_option("--out", common.out, "primary output path");

  // dft
  auto* dft = app.add_subcommand("dft", "transform a signal file");
  dft->fallthrough();
  std::optional<std::string> dft_in, dft_dir;
  auto* dft_in_opt = dft->add_option("--in", dft_in, "input signal JSON");
  auto* dft_dir_opt = dft->add_option("--direction", dft_dir, "forward | inverse");

  // profile-set
  auto* prof = app.add_subcommand("profile-set", "structure constants of a set");
  prof->fallthrough();
  std::optional<std::string> prof_in;
  auto* prof_in_opt = prof->add_option("--in", prof_in, "input set JSON");

  // recover
  auto* rec = app.add_subcommand("recover", "recover a signal from partial Fourier data");
  rec->fallthrough();
  RecoverArgs rec_args;
  auto* rec_in_opt = rec->add_option("--in", rec_args.in, "masked spectrum JSON");
  auto* rec_method_opt = rec->add_option("--method", rec_args.method, "dra | alphabet | enum");
  auto* rec_report_opt = rec->add_option("--report", rec_args.report, "report JSON path");
  auto* rec_t_opt = rec->add_option("--sparsity", rec_args.sparsity, "support budget for enum");
  auto* rec_alpha_opt = rec->add_option("--alphabet", rec_args.alphabet, "alphabet values");
  auto* rec_p_opt = rec->add_option("--p", rec_args.p, "exponent for DRA-4.3ii");
  auto* rec_c_opt = rec->add_option("--cpq", rec_args.cpq, "restriction constant for DRA-4.3ii");
  auto* rec_tol_opt = rec->add_option("--residual-tol", rec_args.residual_tol,
                                      "relative residual tolerance for enum");

  // sample-salem
  auto* salem = app.add_subcommand("sample-salem", "Monte-Carlo peak-coefficient sampling");
  salem->fallthrough();
  SampleSalemArgs salem_args;
  auto* salem_n = salem->add_option("--n", salem_args.n, "modulus");
  auto* salem_d = salem->add_option("--d", salem_args.d, "dimension");
  auto* salem_size = salem->add_option("--size", salem_args.size, "set size");
  auto* salem_eps = salem->add_option("--epsilon", salem_args.epsilon, "epsilon");
  auto* salem_trials = salem->add_option("--trials", salem_args.trials, "trial count");

  // energy-stats
  auto* estats = app.add_subcommand("energy-stats", "energy/|U|^2 statistics of random sets");
  estats->fallthrough();
  SampleSalemArgs estats_grid;
  EnergyStatsArgs estats_args;
  auto* estats_n = estats->add_option("--n", estats_grid.n, "modulus");
  auto* estats_d = estats->add_option("--d", estats_grid.d, "dimension");
  auto* estats_sigma = estats->add_option("--sigma-size", estats_args.sigma_size, "|Sigma|");
  auto* estats_subset = estats->add_option("--subset-size", estats_args.subset_size, "|U|");
  auto* estats_trials = estats->add_option("--trials", estats_args.trials, "trial count");

  // sweep-dra
  auto* sweep = app.add_subcommand("sweep-dra", "success-rate sweep over (|E|, |S|)");
  sweep->fallthrough();
  SampleSalemArgs sweep_grid;
  SweepArgs sweep_args;
  auto* sweep_n = sweep->add_option("--n", sweep_grid.n, "modulus");
  auto* sweep_d = sweep->add_option("--d", sweep_grid.d, "dimension");
  auto* sweep_emin = sweep->add_option("--e-min", sweep_args.e_min, "smallest |E|");
  auto* sweep_emax = sweep->add_option("--e-max", sweep_args.e_max, "largest |E|");
  auto* sweep_smin = sweep->add_option("--s-min", sweep_args.s_min, "smallest |S|");
  auto* sweep_smax = sweep->add_option("--s-max", sweep_args.s_max, "largest |S|");
  auto* sweep_trials = sweep->add_option("--trials", sweep_args.trials, "trials per cell");
  auto* sweep_pgm = sweep->add_option("--pgm", sweep_args.pgm, "heatmap PGM path");

  // demo-figure
  auto* fig = app.add_subcommand("demo-figure", "set + spectrum images for a 2-d set");
  fig->fallthrough();
  std::optional<std::string> fig_in;
  auto* fig_in_opt = fig->add_option("--in", fig_in, "input set JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    common.finalize();
    const json& cfg = common.cfg;
    if (dft->parsed()) {
      apply_cfg(cfg, dft_in_opt, dft_in, "in");
      apply_cfg(cfg, dft_dir_opt, dft_dir, "direction");
      return cmd_dft(common, required(dft_in, "in"), required(dft_dir, "direction"));
    }
    if (prof->parsed()) {
      apply_cfg(cfg, prof_in_opt, prof_in, "in");
      return cmd_profile_set(common, required(prof_in, "in"));
    }
    if (rec->parsed()) {
      apply_cfg(cfg, rec_in_opt, rec_args.in, "in");
      apply_cfg(cfg, rec_method_opt, rec_args.method, "method");
      apply_cfg(cfg, rec_report_opt, rec_args.report, "report");
      apply_cfg(cfg, rec_t_opt, rec_args.sparsity, "sparsity");
      apply_cfg(cfg, rec_p_opt, rec_args.p, "p");
      apply_cfg(cfg, rec_c_opt, rec_args.cpq, "cpq");
      apply_cfg(cfg, rec_tol_opt, rec_args.residual_tol, "residual-tol");
      if (rec_alpha_opt->count() == 0 && cfg.contains("alphabet"))
        rec_args.alphabet = cfg.at("alphabet").get<std::vector<double>>();
      return cmd_recover(common, rec_args);
    }
    if (salem->parsed()) {
      apply_cfg(cfg, salem_n, salem_args.n, "n");
      apply_cfg(cfg, salem_d, salem_args.d, "d");
      apply_cfg(cfg, salem_size, salem_args.size, "size");
      apply_cfg(cfg, salem_eps, salem_args.epsilon, "epsilon");
      apply_cfg(cfg, salem_trials, salem_args.trials, "trials");
      return cmd_sample_salem(common, salem_args);
    }
    if (estats->parsed()) {
      apply_cfg(cfg, estats_n, estats_grid.n, "n");
      apply_cfg(cfg, estats_d, estats_grid.d, "d");
      apply_cfg(cfg, estats_sigma, estats_args.sigma_size, "sigma-size");
      apply_cfg(cfg, estats_subset, estats_args.subset_size, "subset-size");
      apply_cfg(cfg, estats_trials, estats_args.trials, "trials");
      return cmd_energy_stats(common, estats_grid, estats_args);
    }
    if (sweep->parsed()) {
      apply_cfg(cfg, sweep_n, sweep_grid.n, "n");
      apply_cfg(cfg, sweep_d, sweep_grid.d, "d");
      apply_cfg(cfg, sweep_emin, sweep_args.e_min, "e-min");
      apply_cfg(cfg, sweep_emax, sweep_args.e_max, "e-max");
      apply_cfg(cfg, sweep_smin, sweep_args.s_min, "s-min");
      apply_cfg(cfg, sweep_smax, sweep_args.s_max, "s-max");
      apply_cfg(cfg, sweep_trials, sweep_args.trials, "trials");
      apply_cfg(cfg, sweep_pgm, sweep_args.pgm, "pgm");
      return cmd_sweep_dra(common, sweep_grid, sweep_args);
    }
    if (fig->parsed()) {
      apply_cfg(cfg, fig_in_opt, fig_in, "in");
      return cmd_demo_figure(common, required(fig_in, "in"));
    }
    return 2;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InternalCheckError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
