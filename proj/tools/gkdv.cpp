// Command-line front end: simulation, verification sweeps, and continuation
// planning.  Exit codes: 0 success, 1 a verification ceiling was exceeded,
// 2 usage error.  All primary outputs are byte-deterministic given --seed;
// timestamps live only in the manifest sidecars.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gkdv/continuation.hpp"
#include "gkdv/energy.hpp"
#include "gkdv/initial_data.hpp"
#include "gkdv/lattice_fourier.hpp"
#include "gkdv/json_io.hpp"
#include "gkdv/manifest.hpp"
#include "gkdv/multiplier.hpp"
#include "gkdv/parallel.hpp"
#include "gkdv/solver.hpp"
#include "gkdv/strichartz.hpp"
#include "gkdv/sweep.hpp"
#include "gkdv/version.hpp"

namespace {

using gkdv::Complex;
using gkdv::JsonArray;
using gkdv::JsonObject;

// Flat JSON config file: lowest-precedence defaults (flags always win).
class Config {
 public:
  void load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    nlohmann::json j;
    f >> j;
    if (!j.is_object()) {
      throw CLI::ValidationError("--config", "config must be a JSON object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) values_[it.key()] = it.value();
  }

  double number(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return it->second.get<double>();
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.is_string()) return it->second.get<std::string>();
    return it->second.dump();
  }

 private:
  std::map<std::string, nlohmann::json> values_;
};

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
  if (body.empty() || body.back() != '\n') f << "\n";
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

double log2_slope(const std::vector<double>& x, const std::vector<double>& y) {
  // least-squares slope of log2(y) against log2(x)
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log2(x[i]);
    const double ly = std::log2(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  int k = 3;
  double lambda = 1.0;
  int modes = 64;
  double dt = 1e-4;
  double t_end = 0.1;
  double N = 8.0;
  double s = 0.5;
  std::uint64_t seed = 1;
  double mu = 1.0;
  int record_every = 0;  // 0 -> auto (~32 rows)
  std::string init = "random-hs";
  std::string coeffs_file;
  double amplitude = 1.0;
  double decay = 1.6;
  double bump_width = 0.0;  // 0 -> lambda/8
  bool allow_large = false;
  std::string out = "simulate.csv";
};

int run_simulate(const SimulateArgs& a) {
  gkdv::TorusGrid grid = gkdv::TorusGrid::make(a.lambda, a.modes);
  gkdv::SpectralField phi;
  if (a.init == "random-hs") {
    phi = gkdv::random_hs_data(grid, a.s, a.seed, a.decay, a.amplitude);
  } else if (a.init == "bump") {
    phi = gkdv::bump_data(grid, a.amplitude,
                          a.bump_width > 0.0 ? a.bump_width : a.lambda / 8.0);
  } else if (a.init == "coeffs") {
    std::ifstream f(a.coeffs_file);
    if (!f) {
      std::cerr << "gkdv: cannot open coefficient file " << a.coeffs_file << "\n";
      return 2;
    }
    nlohmann::json j;
    f >> j;
    std::vector<gkdv::CoeffEntry> entries;
    for (const auto& row : j) {
      entries.push_back(gkdv::CoeffEntry{row.at(0).get<std::int64_t>(),
                                         row.at(1).get<double>(),
                                         row.at(2).get<double>()});
    }
    phi = gkdv::field_from_coeffs(grid, entries);
  } else {
    std::cerr << "gkdv: unknown --init kind '" << a.init << "'\n";
    return 2;
  }

  gkdv::SolverConfig config;
  config.grid = grid;
  config.k = a.k;
  config.dt = a.dt;
  config.t_end = a.t_end;
  config.mu = a.mu;
  const std::int64_t steps =
      static_cast<std::int64_t>(std::ceil(a.t_end / a.dt - 1e-12));
  config.record_every =
      a.record_every > 0 ? a.record_every
                         : static_cast<int>(std::max<std::int64_t>(1, steps / 32));

  const gkdv::Trajectory traj = gkdv::integrate(config, phi);

  gkdv::MultiplierParams p;
  p.N = a.N;
  p.s = a.s;
  p.k = a.k;

  std::ostringstream csv;
  gkdv::write_diagnostics_csv(csv, traj, p, a.allow_large);
  write_text_file(a.out, csv.str());

  gkdv::RunManifest manifest;
  manifest.command = "simulate";
  manifest.set("k", a.k);
  manifest.set("lambda", a.lambda);
  manifest.set("modes", a.modes);
  manifest.set("samples", grid.samples);
  manifest.set("dt", a.dt);
  manifest.set("t_end", a.t_end);
  manifest.set("N", a.N);
  manifest.set("s", a.s);
  manifest.set("seed", a.seed);
  manifest.set("mu", a.mu);
  manifest.set("record_every", config.record_every);
  manifest.set("init", a.init);
  manifest.set("amplitude", a.amplitude);
  manifest.set("decay", a.decay);
  manifest.set("allow_large", a.allow_large);
  manifest.set("threads", gkdv::max_threads());
  manifest.outputs.push_back(a.out);
  manifest.write_sidecars();

  if (traj.blew_up) {
    std::cerr << "gkdv: blow-up detected; last valid time "
              << traj.last_valid_time << "\n";
  }
  std::cout << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify-multipliers
// ---------------------------------------------------------------------------

struct MultArgs {
  std::string lemma = "all";
  int k = 3;
  double N = 16.0;
  double s = 0.5;
  double lambda = 1.0;
  std::int64_t bound = 0;
  std::uint64_t count = 100000;
  std::uint64_t seed = 1;
  double cmp_large = 10.0;
  double cmp_sim = 10.0;
  double cmp_gtrsim = 1.0;
  double ceiling = 0.0;  // 0 disables the exit-code check
  std::string out = "multiplier_report.json";
};

int run_verify_multipliers(const MultArgs& a) {
  std::vector<gkdv::Lemma> lemmas;
  if (a.lemma == "all") {
    lemmas = {gkdv::Lemma::nonres, gkdv::Lemma::mk2_1, gkdv::Lemma::mk2_2,
              gkdv::Lemma::mk2_3, gkdv::Lemma::m2k2_1, gkdv::Lemma::m2k2_2};
  } else {
    const auto parsed = gkdv::lemma_from_name(a.lemma);
    if (!parsed) {
      std::cerr << "gkdv: unknown lemma '" << a.lemma << "'\n";
      return 2;
    }
    lemmas = {*parsed};
  }

  gkdv::SweepConfig sc;
  sc.params.N = a.N;
  sc.params.s = a.s;
  sc.params.k = a.k;
  sc.params.cmp_large = a.cmp_large;
  sc.params.cmp_sim = a.cmp_sim;
  sc.params.cmp_gtrsim_N = a.cmp_gtrsim;
  sc.lambda = a.lambda;
  sc.bound = a.bound;
  sc.count = a.count;
  sc.seed = a.seed;

  bool exceeded = false;
  JsonArray reports;
  for (gkdv::Lemma lemma : lemmas) {
    sc.lemma = lemma;
    const gkdv::SweepReport report = gkdv::bound_sweep(sc);
    reports.raw(report.to_json());
    if (a.ceiling > 0.0 && report.max_ratio > a.ceiling) exceeded = true;
  }

  JsonObject doc;
  doc.add("command", "verify-multipliers");
  doc.add("ceiling", a.ceiling);
  doc.raw("reports", reports.str());
  const std::string body = doc.str();
  write_text_file(a.out, body);
  std::cout << body << "\n";

  gkdv::RunManifest manifest;
  manifest.command = "verify-multipliers";
  manifest.set("lemma", a.lemma);
  manifest.set("k", a.k);
  manifest.set("N", a.N);
  manifest.set("s", a.s);
  manifest.set("lambda", a.lambda);
  manifest.set("bound", a.bound);
  manifest.set("count", a.count);
  manifest.set("seed", a.seed);
  manifest.set("cmp_large", a.cmp_large);
  manifest.set("cmp_sim", a.cmp_sim);
  manifest.set("cmp_gtrsim_N", a.cmp_gtrsim);
  manifest.set("ceiling", a.ceiling);
  manifest.outputs.push_back(a.out);
  manifest.write_sidecars();

  return exceeded ? 1 : 0;
}

// ---------------------------------------------------------------------------
// verify-bilinear
// ---------------------------------------------------------------------------

struct BilinearArgs {
  double lambda = 1.0;
  double M = 16.0;
  double width = 1.0;
  std::uint64_t queries = 10000;
  std::int64_t xi_bound = 64;       // |xi| <= xi_bound on the lattice
  std::int64_t search_bound = 0;    // 0 -> 4 * xi_bound * lambda
  std::uint64_t pairs = 100;
  int modes = 16;
  int quad = 256;
  std::uint64_t seed = 1;
  double ceiling_card = 10.0;
  double ceiling_ratio = 0.0;
  std::string out = "bilinear_report.json";
};

int run_verify_bilinear(const BilinearArgs& a) {
  const std::int64_t nb = static_cast<std::int64_t>(
      std::llround(a.xi_bound * a.lambda));
  const std::int64_t search =
      a.search_bound > 0 ? a.search_bound : 4 * std::max<std::int64_t>(nb, 1);

  // Counting-set sweep: random (xi, tau) queries, half of them centered on
  // an actual cubic-surface value so nonempty sets are exercised.
  double max_card_ratio = 0.0;
  std::uint64_t disagreements = 0;
  std::uint64_t nonempty = 0;
  {
    std::mt19937_64 rng(a.seed * 0x9e3779b97f4a7c15ULL + 17);
    const double tau_max =
        2.0 * std::pow(static_cast<double>(search) / a.lambda, 3.0);
    for (std::uint64_t i = 0; i < a.queries; ++i) {
      gkdv::CountingSetQuery q;
      q.lambda = a.lambda;
      q.M = a.M;
      q.width = a.width;
      const std::int64_t n = static_cast<std::int64_t>(rng() % (2 * nb + 1)) - nb;
      q.xi = static_cast<double>(n) / a.lambda;
      if (rng() % 2 == 0) {
        q.tau = (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0) *
                tau_max;
      } else {
        const std::int64_t n1 =
            static_cast<std::int64_t>(rng() % (2 * search + 1)) - search;
        const double xi1 = static_cast<double>(n1) / a.lambda;
        const double xi2 = q.xi - xi1;
        q.tau = xi1 * xi1 * xi1 + xi2 * xi2 * xi2 +
                (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0);
      }
      const gkdv::CountingSetResult r = gkdv::counting_set(q, search);
      if (!r.characterizations_agree) ++disagreements;
      if (!r.members.empty()) ++nonempty;
      const double ratio =
          static_cast<double>(r.members.size()) / (a.lambda / a.M + 1.0);
      max_card_ratio = std::max(max_card_ratio, ratio);
    }
  }

  // Bilinear-ratio sweep over random pairs.
  double max_bilinear_ratio = 0.0;
  {
    const gkdv::TorusGrid grid = gkdv::TorusGrid::make(a.lambda, a.modes);
    for (std::uint64_t i = 0; i < a.pairs; ++i) {
      const gkdv::SpectralField p1 =
          gkdv::random_hs_data(grid, 0.0, a.seed + 2 * i + 1, 0.0);
      const gkdv::SpectralField p2 =
          gkdv::random_hs_data(grid, 0.0, a.seed + 2 * i + 2, 0.0);
      max_bilinear_ratio = std::max(
          max_bilinear_ratio, gkdv::bilinear_ratio(p1, p2, a.M, a.quad));
    }
  }

  JsonObject doc;
  doc.add("command", "verify-bilinear");
  doc.add("lambda", a.lambda);
  doc.add("M", a.M);
  doc.add("width", a.width);
  doc.add("samples", a.queries);
  doc.add("xi_bound", a.xi_bound);
  doc.add("search_bound", search);
  doc.add("nonempty_sets", nonempty);
  doc.add("characterization_disagreements", disagreements);
  doc.add("max_card_ratio", max_card_ratio);
  doc.add("pairs", a.pairs);
  doc.add("modes", a.modes);
  doc.add("max_bilinear_ratio", max_bilinear_ratio);
  doc.add("quadrature_points", a.quad);
  doc.add("seed", a.seed);
  const std::string body = doc.str();
  write_text_file(a.out, body);
  std::cout << body << "\n";

  gkdv::RunManifest manifest;
  manifest.command = "verify-bilinear";
  manifest.set("lambda", a.lambda);
  manifest.set("M", a.M);
  manifest.set("width", a.width);
  manifest.set("queries", a.queries);
  manifest.set("xi_bound", a.xi_bound);
  manifest.set("search_bound", search);
  manifest.set("pairs", a.pairs);
  manifest.set("modes", a.modes);
  manifest.set("quad", a.quad);
  manifest.set("seed", a.seed);
  manifest.set("ceiling_card", a.ceiling_card);
  manifest.set("ceiling_ratio", a.ceiling_ratio);
  manifest.outputs.push_back(a.out);
  manifest.write_sidecars();

  if (disagreements > 0) return 1;
  if (a.ceiling_card > 0.0 && max_card_ratio > a.ceiling_card) return 1;
  if (a.ceiling_ratio > 0.0 && max_bilinear_ratio > a.ceiling_ratio) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// verify-energy
// ---------------------------------------------------------------------------

struct EnergyArgs {
  int k = 3;
  int modes = 128;
  double lambda = 1.0;
  double s = 0.5;
  double decay = 1.6;
  std::string n_grid = "8,16,32,64";
  std::uint64_t seed = 1;
  double slope_ceiling = -1.8;
  bool allow_large = true;
  std::string out = "energy_report.json";
};

int run_verify_energy(const EnergyArgs& a) {
  const gkdv::TorusGrid grid = gkdv::TorusGrid::make(a.lambda, a.modes);
  const gkdv::SpectralField u =
      gkdv::random_hs_data(grid, a.s, a.seed, a.decay, 1.0);

  const std::vector<double> n_values = parse_list(a.n_grid);
  std::vector<double> gaps;
  double max_residue = 0.0;
  for (double N : n_values) {
    gkdv::MultiplierParams p;
    p.N = N;
    p.s = a.s;
    p.k = a.k;
    const gkdv::SecondEnergy se =
        gkdv::second_modified_energy(u, p, 1.0, a.allow_large);
    gaps.push_back(std::abs(se.value - gkdv::e_of_Iu(u, p)));
    max_residue = std::max(max_residue, se.imag_residue);
  }
  const double slope = log2_slope(n_values, gaps);

  // With N above every active frequency the multiplier is identically one
  // and the derivative functionals must cancel.
  double m1_residual = 0.0;
  {
    gkdv::MultiplierParams p;
    p.N = 1e9;
    p.s = a.s;
    p.k = a.k;
    const gkdv::IncrementTerms inc = gkdv::increment_terms(u, p, 1.0);
    const double scale =
        std::max(1.0, std::abs(inc.dE1) + std::abs(inc.dE2));
    m1_residual = std::abs(inc.dE1 + inc.dE2) / scale;
  }

  JsonObject doc;
  doc.add("command", "verify-energy");
  doc.add("k", a.k);
  doc.add("modes", a.modes);
  doc.add("lambda", a.lambda);
  doc.add("s", a.s);
  doc.add("decay", a.decay);
  doc.add("seed", a.seed);
  JsonArray narr, garr;
  for (double v : n_values) narr.add(v);
  for (double v : gaps) garr.add(v);
  doc.raw("N_grid", narr.str());
  doc.raw("gaps", garr.str());
  doc.add("gap_slope_log2", slope);
  doc.add("slope_ceiling", a.slope_ceiling);
  doc.add("max_imag_residue", max_residue);
  doc.add("m_identity_residual", m1_residual);
  const std::string body = doc.str();
  write_text_file(a.out, body);
  std::cout << body << "\n";

  gkdv::RunManifest manifest;
  manifest.command = "verify-energy";
  manifest.set("k", a.k);
  manifest.set("modes", a.modes);
  manifest.set("lambda", a.lambda);
  manifest.set("s", a.s);
  manifest.set("decay", a.decay);
  manifest.set("n_grid", a.n_grid);
  manifest.set("seed", a.seed);
  manifest.set("slope_ceiling", a.slope_ceiling);
  manifest.outputs.push_back(a.out);
  manifest.write_sidecars();

  if (slope > a.slope_ceiling) return 1;
  if (m1_residual > 1e-9) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// rescale-check
// ---------------------------------------------------------------------------

struct RescaleArgs {
  int k = 3;
  int modes = 32;
  std::string lambdas = "1,2,4,8,16";
  std::uint64_t seed = 1;
  double ceiling = 1e-10;
  std::string out = "rescale_report.json";
};

int run_rescale_check(const RescaleArgs& a) {
  const gkdv::TorusGrid grid = gkdv::TorusGrid::make(1.0, a.modes);
  const gkdv::SpectralField phi =
      gkdv::random_hs_data(grid, 0.5, a.seed, 1.0, 1.0);

  double worst = 0.0;
  JsonArray rows;
  for (double lam_d : parse_list(a.lambdas)) {
    const auto lam = static_cast<std::int64_t>(std::llround(lam_d));
    const gkdv::SpectralField scaled = gkdv::rescale(phi, lam, a.k);
    const double L = static_cast<double>(lam);

    JsonObject row;
    row.add("lambda", lam);
    // L^2 and homogeneous H^s scaling identities
    const double l2_err =
        std::abs(gkdv::l2_norm(scaled) -
                 std::pow(L, 0.5 - 2.0 / a.k) * gkdv::l2_norm(phi)) /
        std::max(1e-300, gkdv::l2_norm(phi));
    row.add("l2_error", l2_err);
    worst = std::max(worst, l2_err);
    for (double s : {0.5, 1.0}) {
      const double lhs = gkdv::sobolev_norm(scaled, s, /*homogeneous=*/true);
      const double rhs = std::pow(L, 0.5 - 2.0 / a.k - s) *
                         gkdv::sobolev_norm(phi, s, /*homogeneous=*/true);
      const double err = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
      row.add(s == 0.5 ? "hdot_half_error" : "hdot_one_error", err);
      worst = std::max(worst, err);
    }
    rows.raw(row.str());
  }

  JsonObject doc;
  doc.add("command", "rescale-check");
  doc.add("k", a.k);
  doc.add("modes", a.modes);
  doc.add("seed", a.seed);
  doc.add("ceiling", a.ceiling);
  doc.add("worst_error", worst);
  doc.raw("rows", rows.str());
  const std::string body = doc.str();
  write_text_file(a.out, body);
  std::cout << body << "\n";

  gkdv::RunManifest manifest;
  manifest.command = "rescale-check";
  manifest.set("k", a.k);
  manifest.set("modes", a.modes);
  manifest.set("lambdas", a.lambdas);
  manifest.set("seed", a.seed);
  manifest.set("ceiling", a.ceiling);
  manifest.outputs.push_back(a.out);
  manifest.write_sidecars();

  return worst > a.ceiling ? 1 : 0;
}

// ---------------------------------------------------------------------------
// plan
// ---------------------------------------------------------------------------

struct PlanArgs {
  int k = 3;
  std::string s;  // empty -> threshold itself
  double N = 1024.0;
  double C0 = 1.0;
  std::string eps = "1/100";
  std::string eps_prime = "1/100";
  std::string out;
};

int run_plan(const PlanArgs& a) {
  const gkdv::GwpThreshold thr = gkdv::gwp_threshold(a.k);
  gkdv::Rational s = thr.value;
  if (!a.s.empty()) {
    const auto parsed = gkdv::parse_rational(a.s);
    if (!parsed) {
      std::cerr << "gkdv: cannot parse --s '" << a.s << "' as a rational\n";
      return 2;
    }
    s = *parsed;
  }
  const auto eps = gkdv::parse_rational(a.eps);
  const auto epsp = gkdv::parse_rational(a.eps_prime);
  if (!eps || !epsp) {
    std::cerr << "gkdv: cannot parse epsilon flags as rationals\n";
    return 2;
  }
  const gkdv::ContinuationPlan plan =
      gkdv::build_plan(a.N, s, a.k, a.C0, *eps, *epsp);
  const std::string body = plan.to_json();
  std::cout << body << "\n";
  if (!a.out.empty()) {
    write_text_file(a.out, body);
    gkdv::RunManifest manifest;
    manifest.command = "plan";
    manifest.set("k", a.k);
    manifest.set("s", s.str());
    manifest.set("N", a.N);
    manifest.set("C0", a.C0);
    manifest.set("eps", eps->str());
    manifest.set("eps_prime", epsp->str());
    manifest.outputs.push_back(a.out);
    manifest.write_sidecars();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral toolkit for periodic generalized KdV: pseudospectral "
               "integration, frequency-truncation energies, resonance "
               "verification sweeps, and global-continuation planning"};
  app.require_subcommand(1);
  // let --config (a parent option) appear after the subcommand name
  
  app.set_help_all_flag("--help-all", "print help for every subcommand");

  // Config file: lowest precedence, applied as defaults before parsing.
  Config cfg;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        cfg.load(argv[i + 1]);
      } catch (const std::exception& e) {
        std::cerr << "gkdv: " << e.what() << "\n";
        return 2;
      }
    }
  }
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file (defaults; flags take precedence)");

  SimulateArgs sim;
  sim.k = static_cast<int>(cfg.number("k", sim.k));
  sim.lambda = cfg.number("lambda", sim.lambda);
  sim.modes = static_cast<int>(cfg.number("modes", sim.modes));
  sim.dt = cfg.number("dt", sim.dt);
  sim.t_end = cfg.number("t_end", sim.t_end);
  sim.N = cfg.number("N", sim.N);
  sim.s = cfg.number("s", sim.s);
  sim.seed = static_cast<std::uint64_t>(cfg.number("seed", 1));
  auto* c_sim = app.add_subcommand(
      "simulate",
      "integrate gKdV and stream energy diagnostics to CSV with columns "
      "t,hamiltonian,e_Iu,e_I2,gap,h1_Iu,mass,dE1_re,dE2_re");
  c_sim->fallthrough();
  c_sim->add_option("--k", sim.k, "nonlinearity degree (3 or 4)");
  c_sim->add_option("--lambda", sim.lambda, "torus period");
  c_sim->add_option("--modes", sim.modes, "retained mode bound K");
  c_sim->add_option("--dt", sim.dt, "time step");
  c_sim->add_option("--t-end", sim.t_end, "final time");
  c_sim->add_option("--N", sim.N, "I-method frequency threshold");
  c_sim->add_option("--s", sim.s, "Sobolev index");
  c_sim->add_option("--seed", sim.seed, "RNG seed");
  c_sim->add_option("--mu", sim.mu, "+1 defocusing, -1 focusing, 0 linear");
  c_sim->add_option("--record-every", sim.record_every,
                    "record every n-th step (0 = auto)");
  c_sim->add_option("--init", sim.init, "random-hs | bump | coeffs");
  c_sim->add_option("--coeffs-file", sim.coeffs_file,
                    "JSON list of [n, re, im] rows for --init coeffs");
  c_sim->add_option("--amplitude", sim.amplitude,
                    "H^s norm (random-hs) or bump height");
  c_sim->add_option("--decay", sim.decay, "random-hs coefficient decay");
  c_sim->add_option("--bump-width", sim.bump_width, "bump width (0 = lambda/8)");
  c_sim->add_flag("--allow-large", sim.allow_large,
                  "override the correction-functional term budget");
  c_sim->add_option("--out", sim.out, "output CSV path");

  MultArgs mult;
  mult.k = static_cast<int>(cfg.number("k", mult.k));
  mult.N = cfg.number("N", mult.N);
  mult.s = cfg.number("s", mult.s);
  mult.seed = static_cast<std::uint64_t>(cfg.number("seed", 1));
  auto* c_mult = app.add_subcommand(
      "verify-multipliers", "ratio sweeps for the multiplier bounds");
  c_mult->fallthrough();
  c_mult->add_option("--lemma", mult.lemma,
                     "nonres | mk2_1 | mk2_2 | mk2_3 | m2k2_1 | m2k2_2 | all");
  c_mult->add_option("--k", mult.k, "nonlinearity degree");
  c_mult->add_option("--N", mult.N, "frequency threshold");
  c_mult->add_option("--s", mult.s, "Sobolev index");
  c_mult->add_option("--lambda", mult.lambda, "lattice scale");
  c_mult->add_option("--bound", mult.bound, "|n_j| bound (0 = 4 N lambda)");
  c_mult->add_option("--count", mult.count, "sampled tuples");
  c_mult->add_option("--seed", mult.seed, "RNG seed");
  c_mult->add_option("--cmp-large", mult.cmp_large, "constant realizing >>");
  c_mult->add_option("--cmp-sim", mult.cmp_sim, "constant realizing ~");
  c_mult->add_option("--cmp-gtrsim-n", mult.cmp_gtrsim,
                     "constant realizing >~ N");
  c_mult->add_option("--ceiling", mult.ceiling,
                     "exit 1 if any max ratio exceeds this (0 = off)");
  c_mult->add_option("--out", mult.out, "output JSON path");

  BilinearArgs bil;
  bil.seed = static_cast<std::uint64_t>(cfg.number("seed", 1));
  bil.lambda = cfg.number("lambda", bil.lambda);
  auto* c_bil = app.add_subcommand(
      "verify-bilinear",
      "counting-set cardinality bound and bilinear-ratio sweep");
  c_bil->fallthrough();
  c_bil->add_option("--lambda", bil.lambda, "torus period");
  c_bil->add_option("--M", bil.M, "frequency-separation threshold");
  c_bil->add_option("--width", bil.width, "thickness of the tau window");
  c_bil->add_option("--queries", bil.queries, "random (xi, tau) queries");
  c_bil->add_option("--xi-bound", bil.xi_bound, "|xi| range of queries");
  c_bil->add_option("--search-bound", bil.search_bound,
                    "enumeration range (0 = auto)");
  c_bil->add_option("--pairs", bil.pairs, "random field pairs");
  c_bil->add_option("--modes", bil.modes, "mode bound of the pair fields");
  c_bil->add_option("--quad", bil.quad, "time-quadrature points");
  c_bil->add_option("--seed", bil.seed, "RNG seed");
  c_bil->add_option("--ceiling-card", bil.ceiling_card,
                    "cardinality ratio ceiling (0 = off)");
  c_bil->add_option("--ceiling-ratio", bil.ceiling_ratio,
                    "bilinear ratio ceiling (0 = off)");
  c_bil->add_option("--out", bil.out, "output JSON path");

  EnergyArgs en;
  en.k = static_cast<int>(cfg.number("k", en.k));
  en.s = cfg.number("s", en.s);
  en.seed = static_cast<std::uint64_t>(cfg.number("seed", 1));
  auto* c_en = app.add_subcommand(
      "verify-energy",
      "fixed-time gap scaling in N and the flat-multiplier identity");
  c_en->fallthrough();
  c_en->add_option("--k", en.k, "nonlinearity degree");
  c_en->add_option("--modes", en.modes, "mode bound K");
  c_en->add_option("--lambda", en.lambda, "torus period");
  c_en->add_option("--s", en.s, "Sobolev index");
  c_en->add_option("--decay", en.decay, "data coefficient decay");
  c_en->add_option("--n-grid", en.n_grid, "comma list of N values");
  c_en->add_option("--seed", en.seed, "RNG seed");
  c_en->add_option("--slope-ceiling", en.slope_ceiling,
                   "exit 1 if the log-log gap slope exceeds this");
  c_en->add_option("--out", en.out, "output JSON path");

  RescaleArgs re;
  re.k = static_cast<int>(cfg.number("k", re.k));
  re.seed = static_cast<std::uint64_t>(cfg.number("seed", 1));
  auto* c_re = app.add_subcommand("rescale-check",
                                  "norm scaling identities of the rescaling map");
  c_re->fallthrough();
  c_re->add_option("--k", re.k, "nonlinearity degree");
  c_re->add_option("--modes", re.modes, "mode bound K");
  c_re->add_option("--lambdas", re.lambdas, "comma list of integer lambdas");
  c_re->add_option("--seed", re.seed, "RNG seed");
  c_re->add_option("--ceiling", re.ceiling, "error ceiling");
  c_re->add_option("--out", re.out, "output JSON path");

  PlanArgs pl;
  pl.k = static_cast<int>(cfg.number("k", pl.k));
  auto* c_pl = app.add_subcommand(
      "plan", "exact-rational continuation thresholds and iteration plan");
  c_pl->fallthrough();
  c_pl->add_option("--k", pl.k, "nonlinearity degree");
  c_pl->add_option("--s", pl.s, "Sobolev index as a rational, e.g. 3/5");
  c_pl->add_option("--N", pl.N, "frequency threshold");
  c_pl->add_option("--C0", pl.C0, "energy budget constant");
  c_pl->add_option("--eps", pl.eps, "lifetime exponent epsilon");
  c_pl->add_option("--eps-prime", pl.eps_prime, "increment exponent epsilon'");
  c_pl->add_option("--out", pl.out, "optional output JSON path");

  auto* c_ver = app.add_subcommand("version", "print the artifact version");
  c_ver->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  try {
    if (c_sim->parsed()) return run_simulate(sim);
    if (c_mult->parsed()) return run_verify_multipliers(mult);
    if (c_bil->parsed()) return run_verify_bilinear(bil);
    if (c_en->parsed()) return run_verify_energy(en);
    if (c_re->parsed()) return run_rescale_check(re);
    if (c_pl->parsed()) return run_plan(pl);
    if (c_ver->parsed()) {
      std::cout << "gkdv " << gkdv::kVersion << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "gkdv: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
