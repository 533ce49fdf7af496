// Acceptance runner: exercises every gate criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit code is the number of
// failing criteria.  `--cli <path>` points at the command-line binary
// (needed by the threshold and determinism criteria).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gkdv/continuation.hpp"
#include "gkdv/energy.hpp"
#include "gkdv/initial_data.hpp"
#include "gkdv/lattice_fourier.hpp"
#include "gkdv/multiplier.hpp"
#include "gkdv/parallel.hpp"
#include "gkdv/solver.hpp"
#include "gkdv/strichartz.hpp"
#include "gkdv/sweep.hpp"
#include "oracles.hpp"

using namespace gkdv;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& name,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cli(const std::string& cli, const std::string& args,
            const std::string& stdout_path) {
  const std::string cmd = cli + " " + args + " > " + stdout_path + " 2> " +
                          stdout_path + ".err";
  const int rc = std::system(cmd.c_str());
  return rc;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --------------------------------------------------------------------------
// 1. Threshold algebra through the CLI
// --------------------------------------------------------------------------
void criterion_1(const std::string& cli) {
  const auto start = std::chrono::steady_clock::now();
  const int rc3 = run_cli(cli, "plan --k 3", "acc_plan3.json");
  const int rc4 = run_cli(cli, "plan --k 4", "acc_plan4.json");
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  const std::string p3 = read_file("acc_plan3.json");
  const std::string p4 = read_file("acc_plan4.json");
  const bool ok3 = rc3 == 0 &&
                   p3.find("\"threshold\":\"1/2\"") != std::string::npos &&
                   p3.find("\"threshold_inclusive\":true") != std::string::npos;
  const bool ok4 = rc4 == 0 &&
                   p4.find("\"threshold\":\"5/9\"") != std::string::npos &&
                   p4.find("\"threshold_inclusive\":false") != std::string::npos;
  report(1, ok3 && ok4 && elapsed < 1.0, "threshold algebra",
         "k=3 -> 1/2 inclusive, k=4 -> 5/9 strict, " + fmt(elapsed) + " s");
}

// --------------------------------------------------------------------------
// 2. Multiplier lemma sweeps: ratio stability under N-doubling
// --------------------------------------------------------------------------
void criterion_2() {
  const std::vector<Lemma> lemmas = {Lemma::nonres, Lemma::mk2_1, Lemma::mk2_2,
                                     Lemma::mk2_3,  Lemma::m2k2_1,
                                     Lemma::m2k2_2};
  bool pass = true;
  std::string detail;
  double worst_factor = 0.0;
  for (int k : {3, 4}) {
    for (Lemma lemma : lemmas) {
      std::vector<double> maxima;
      for (double N : {8.0, 16.0, 32.0}) {
        double mx = 0.0;
        bool any = false;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
          SweepConfig c;
          c.lemma = lemma;
          c.params.N = N;
          c.params.s = 0.5;
          c.params.k = k;
          // lambda = 4: the two-high-two-low side condition needs lattice
          // frequencies below N/cmp_large, which don't exist at lambda = 1
          // when N = 8 (the set is arithmetic-empty there, not thin).
          c.lambda = 4.0;
          c.count = 100000;
          c.seed = seed;
          const SweepReport r = bound_sweep(c);
          if (!r.empty) {
            any = true;
            mx = std::max(mx, r.max_ratio);
          }
          if (r.rhs_zero_lhs_nonzero > 0) {
            pass = false;
            detail += std::string(lemma_name(lemma)) + ": rhs=0,lhs!=0; ";
          }
        }
        if (!any) {
          pass = false;
          detail += std::string(lemma_name(lemma)) + ": empty sweep; ";
          mx = 0.0;
        }
        maxima.push_back(mx);
      }
      for (std::size_t i = 1; i < maxima.size(); ++i) {
        if (maxima[i] <= 0.0 || maxima[i - 1] <= 0.0) continue;
        const double factor =
            std::max(maxima[i] / maxima[i - 1], maxima[i - 1] / maxima[i]);
        worst_factor = std::max(worst_factor, factor);
        if (factor >= 4.0) {
          pass = false;
          detail += std::string("k=") + std::to_string(k) + " " +
                    lemma_name(lemma) + " x" + fmt(factor) + "; ";
        }
      }
    }
  }
  report(2, pass, "multiplier lemma sweeps stable under N-doubling",
         detail.empty() ? "worst doubling factor x" + fmt(worst_factor)
                        : detail);
}

// --------------------------------------------------------------------------
// 3. Counting bound #A <= 10 (lambda/M + 1) and the exact dual membership
// --------------------------------------------------------------------------
void criterion_3() {
  bool pass = true;
  double worst_ratio = 0.0;
  std::uint64_t disagreements = 0;
  for (double lambda : {1.0, 8.0, 64.0}) {
    for (double M = 4.0; M <= 4096.0; M *= 2.0) {
      const std::int64_t nb = static_cast<std::int64_t>(64 * lambda);
      const std::int64_t search = 4 * nb;
      const std::uint64_t queries = 10000;
      const std::uint64_t chunk = 512;
      const std::uint64_t n_chunks = (queries + chunk - 1) / chunk;
      std::vector<double> ratio_per_chunk(n_chunks, 0.0);
      std::vector<std::uint64_t> disagree_per_chunk(n_chunks, 0);
      parallel_for_chunks(n_chunks, [&](std::size_t c) {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL * (c + 1) +
                            static_cast<std::uint64_t>(M) + 1000 *
                            static_cast<std::uint64_t>(lambda));
        const std::uint64_t lo = c * chunk;
        const std::uint64_t hi = std::min(lo + chunk, queries);
        for (std::uint64_t i = lo; i < hi; ++i) {
          CountingSetQuery q;
          q.lambda = lambda;
          q.M = M;
          const std::int64_t n =
              static_cast<std::int64_t>(rng() % (2 * nb + 1)) - nb;
          q.xi = static_cast<double>(n) / lambda;
          if (rng() % 2 == 0) {
            const std::int64_t n1 =
                static_cast<std::int64_t>(rng() % (2 * search + 1)) - search;
            const double xi1 = static_cast<double>(n1) / lambda;
            const double xi2 = q.xi - xi1;
            q.tau = xi1 * xi1 * xi1 + xi2 * xi2 * xi2 +
                    2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
          } else {
            const double tmax =
                2.0 * std::pow(static_cast<double>(search) / lambda, 3.0);
            q.tau =
                (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0) *
                tmax;
          }
          const CountingSetResult r = counting_set(q, search);
          if (!r.characterizations_agree) ++disagree_per_chunk[c];
          ratio_per_chunk[c] = std::max(
              ratio_per_chunk[c],
              static_cast<double>(r.members.size()) / (lambda / M + 1.0));
        }
      });
      for (std::size_t c = 0; c < n_chunks; ++c) {
        worst_ratio = std::max(worst_ratio, ratio_per_chunk[c]);
        disagreements += disagree_per_chunk[c];
      }
    }
  }
  if (worst_ratio > 10.0 || disagreements > 0) pass = false;
  report(3, pass, "counting bound #A <= 10 (lambda/M + 1)",
         "max ratio " + fmt(worst_ratio) + ", dual-form disagreements " +
             std::to_string(disagreements));
}

// --------------------------------------------------------------------------
// 4. Bilinear ratio: finite, stable under quadrature doubling
// --------------------------------------------------------------------------
void criterion_4() {
  const int modes = 16;
  bool pass = true;
  double worst_ratio = 0.0, worst_change = 0.0;
  for (double lambda : {1.0, 8.0}) {
    const TorusGrid grid = TorusGrid::make(lambda, modes);
    for (double M : {1.0, 16.0, 256.0}) {
      // 1000 pairs split over the (M, lambda) grid keeps the total at the
      // stated count; ratios are max-aggregated either way.
      double max256 = 0.0, max512 = 0.0;
      for (std::uint64_t i = 0; i < 1000; ++i) {
        const SpectralField p1 =
            random_hs_data(grid, 0.0, 7000 + 2 * i, 0.3, 1.0);
        const SpectralField p2 =
            random_hs_data(grid, 0.0, 7001 + 2 * i, 0.3, 1.0);
        max256 = std::max(max256, bilinear_ratio(p1, p2, M, 256));
        max512 = std::max(max512, bilinear_ratio(p1, p2, M, 512));
      }
      if (!std::isfinite(max256) || !std::isfinite(max512)) pass = false;
      const double change = std::abs(max512 - max256) / max512;
      worst_change = std::max(worst_change, change);
      worst_ratio = std::max(worst_ratio, max512);
      if (change > 0.05) pass = false;
    }
  }
  report(4, pass, "bilinear Strichartz ratio finite and quadrature-stable",
         "max ratio " + fmt(worst_ratio) + ", doubling change " +
             fmt(100.0 * worst_change) + "%");
}

// --------------------------------------------------------------------------
// 5. Galerkin derivative identity
// --------------------------------------------------------------------------
void criterion_5() {
  bool pass = true;
  double worst_rel = 0.0, worst_flat = 0.0;
  const TorusGrid grid = TorusGrid::make(1.0, 8);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const SpectralField u = random_hs_data(grid, 0.5, seed, 0.4, 1.0);
    MultiplierParams p;
    p.N = 2.0;
    p.s = 0.5;
    p.k = 3;
    const IncrementTerms inc = increment_terms(u, p, 1.0);
    const double oracle = oracles::galerkin_dE_Iu_dt(u, p, 1.0);
    const double rel = std::abs((inc.dE1 + inc.dE2).real() - oracle) /
                       std::max(std::abs(oracle), 1e-300);
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-8) pass = false;

    // flat multiplier: N above every frequency reachable by block sums
    MultiplierParams flat = p;
    flat.N = 1e6;
    const IncrementTerms inc0 = increment_terms(u, flat, 1.0);
    const double scale = std::max(1.0, std::pow(sobolev_norm(u, 1.0), 5.0));
    const double flat_res = std::abs(inc0.dE1 + inc0.dE2) / scale;
    worst_flat = std::max(worst_flat, flat_res);
    if (flat_res > 1e-9) pass = false;
  }
  report(5, pass, "Galerkin derivative identity (convention constant 1)",
         "max relative mismatch " + fmt(worst_rel) + ", flat-multiplier residual " +
             fmt(worst_flat));
}

// --------------------------------------------------------------------------
// 6. Fixed-time bound scaling: log gap vs log N slope <= -1.8
// --------------------------------------------------------------------------
void criterion_6() {
  const TorusGrid grid = TorusGrid::make(1.0, 128);
  const SpectralField u = random_hs_data(grid, 0.5, 2026, 1.6, 1.0);
  std::vector<double> ns = {8.0, 16.0, 32.0, 64.0};
  std::vector<double> gaps;
  for (double N : ns) {
    MultiplierParams p;
    p.N = N;
    p.s = 0.5;
    p.k = 3;
    const SecondEnergy se = second_modified_energy(u, p, 1.0, true);
    gaps.push_back(std::abs(se.value - e_of_Iu(u, p)));
  }
  const double slope = oracles::log2_slope(ns, gaps);
  std::string gap_list;
  for (double g : gaps) gap_list += fmt(g) + " ";
  report(6, slope <= -1.8, "fixed-time gap scaling",
         "slope " + fmt(slope) + " over gaps " + gap_list);
}

// --------------------------------------------------------------------------
// 7. Solver integrity
// --------------------------------------------------------------------------
void criterion_7() {
  bool pass = true;
  std::string detail;

  // mass conservation
  {
    const TorusGrid grid = TorusGrid::make(1.0, 32);
    SolverConfig config;
    config.grid = grid;
    config.k = 3;
    config.dt = 5e-5;
    config.t_end = 5e-3;
    config.record_every = 20;
    SpectralField phi = random_hs_data(grid, 0.5, 15, 1.2, 1.0);
    phi.at(0) = Complex(0.2, 0.0);
    const Trajectory traj = integrate(config, phi);
    double drift = 0.0;
    for (const SpectralField& s : traj.samples) {
      drift = std::max(drift, std::abs(s.at(0) - phi.at(0)));
    }
    if (drift > 1e-12) pass = false;
    detail += "mass drift " + fmt(drift);
  }

  // Hamiltonian drift order (dt ladder inside the phase-resolved regime)
  {
    const TorusGrid grid = TorusGrid::make(1.0, 8);
    const SpectralField phi = random_hs_data(grid, 0.5, 12, 2.0, 0.4);
    std::vector<double> dts = {1.6e-5, 8e-6, 4e-6, 2e-6};
    std::vector<double> drifts;
    for (double dt : dts) {
      SolverConfig config;
      config.grid = grid;
      config.k = 3;
      config.dt = dt;
      config.t_end = 0.02;
      config.record_every = 1 << 20;
      const Trajectory traj = integrate(config, phi);
      drifts.push_back(std::abs(hamiltonian(traj.samples.back(), 3) -
                                hamiltonian(phi, 3)));
    }
    const double slope = oracles::log2_slope(dts, drifts);
    if (!(slope >= 3.7 && slope <= 4.3)) pass = false;
    detail += ", dt-order " + fmt(slope);
  }

  // linear limit
  {
    const TorusGrid grid = TorusGrid::make(1.0, 32);
    SolverConfig config;
    config.grid = grid;
    config.k = 3;
    config.dt = 1e-4;
    config.t_end = 0.02;
    config.mu = 0.0;
    config.record_every = 1 << 20;
    const SpectralField phi = random_hs_data(grid, 0.5, 17, 1.0, 1.0);
    const Trajectory traj = integrate(config, phi);
    const SpectralField expected = free_propagator(phi, traj.times.back());
    double worst = 0.0;
    for (int n = -32; n <= 32; ++n) {
      worst = std::max(worst,
                       std::abs(traj.samples.back().at(n) - expected.at(n)));
    }
    if (worst > 1e-12) pass = false;
    detail += ", linear-limit " + fmt(worst);
  }

  // rescaling identities
  {
    const TorusGrid grid = TorusGrid::make(1.0, 32);
    double worst = 0.0;
    for (int k : {3, 4}) {
      const SpectralField phi = random_hs_data(grid, 0.5, 18, 1.0, 1.0);
      for (std::int64_t lam : {1, 2, 4, 8, 16}) {
        const SpectralField scaled = rescale(phi, lam, k);
        const double L = static_cast<double>(lam);
        worst = std::max(
            worst, std::abs(l2_norm(scaled) -
                            std::pow(L, 0.5 - 2.0 / k) * l2_norm(phi)) /
                       l2_norm(phi));
        for (double s : {0.5, 1.0}) {
          const double rhs = std::pow(L, 0.5 - 2.0 / k - s) *
                             sobolev_norm(phi, s, true);
          worst = std::max(
              worst, std::abs(sobolev_norm(scaled, s, true) - rhs) / rhs);
        }
      }
    }
    if (worst > 1e-10) pass = false;
    detail += ", rescale error " + fmt(worst);
  }

  report(7, pass, "solver integrity", detail);
}

// --------------------------------------------------------------------------
// 8. Almost-conservation trend
// --------------------------------------------------------------------------
void criterion_8() {
  // The window increments of E_I^2 are tiny flow quantities; the step size
  // must resolve every dispersive phase on the grid (dt (2 pi K)^3 < 2) or
  // integrator residue swamps them.  K = 96 with dt = 1e-8 is fully
  // resolved: the measured increments are step-size-stable to four digits.
  const TorusGrid grid = TorusGrid::make(1.0, 96);
  SolverConfig config;
  config.grid = grid;
  config.k = 3;
  config.dt = 1e-8;
  config.t_end = 1e-3;
  config.record_every = 1 << 20;  // window endpoints only
  const SpectralField phi = random_hs_data(grid, 0.5, 41, 1.9, 0.5);
  const Trajectory traj = integrate(config, phi);

  std::vector<double> ns = {8.0, 16.0, 32.0, 64.0};
  std::vector<double> increments;
  for (double N : ns) {
    MultiplierParams p;
    p.N = N;
    p.s = 0.5;
    p.k = 3;
    const double e0 =
        second_modified_energy(traj.samples.front(), p, 1.0, true).value;
    const double e1 =
        second_modified_energy(traj.samples.back(), p, 1.0, true).value;
    increments.push_back(std::abs(e1 - e0));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < increments.size(); ++i) {
    if (!(increments[i] < increments[i - 1])) monotone = false;
  }
  const double slope = oracles::log2_slope(ns, increments);
  std::string inc_list;
  for (double v : increments) inc_list += fmt(v) + " ";
  report(8, monotone && slope <= -1.5, "almost-conservation trend",
         "increments " + inc_list + "slope " + fmt(slope));
}

// --------------------------------------------------------------------------
// 9. Gauge invariance of hyperplane products
// --------------------------------------------------------------------------
void criterion_9() {
  const TorusGrid grid = TorusGrid::make(1.0, 24);
  SolverConfig config;
  config.grid = grid;
  config.k = 3;
  config.dt = 1e-4;
  config.t_end = 4e-3;
  config.record_every = 8;
  const SpectralField phi = random_hs_data(grid, 0.5, 23, 1.0, 1.0);
  const Trajectory traj = integrate(config, phi);
  const Trajectory gauged = gauge_transform(traj);

  double worst = 0.0;
  const std::vector<std::vector<int>> tuples = {
      {3, -5, 2, 1, -1}, {7, -7, 4, -4, 0}, {10, -4, -3, -2, -1},
      {12, -12, 6, -6, 0}, {1, 1, 1, 1, -4}};
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    for (const auto& tup : tuples) {
      Complex a(1.0, 0.0), b(1.0, 0.0);
      for (int n : tup) {
        a *= traj.samples[i].at(n);
        b *= gauged.samples[i].at(n);
      }
      worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(a)));
    }
  }
  report(9, worst <= 1e-12, "gauge invariance of hyperplane products",
         "max relative deviation " + fmt(worst));
}

// --------------------------------------------------------------------------
// 10. Determinism of every verification subcommand
// --------------------------------------------------------------------------
void criterion_10(const std::string& cli) {
  bool pass = true;
  std::string detail;

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"verify-multipliers",
       "verify-multipliers --lemma nonres --k 3 --N 16 --seed 7 --count 20000 "
       "--out acc_det_mult.json"},
      {"verify-bilinear",
       "verify-bilinear --lambda 2 --M 16 --queries 400 --pairs 8 --modes 8 "
       "--quad 64 --seed 3 --out acc_det_bil.json"},
      {"verify-energy",
       "verify-energy --modes 48 --n-grid 4,8,16 --seed 5 "
       "--out acc_det_energy.json"},
      {"rescale-check", "rescale-check --seed 9 --out acc_det_rescale.json"},
      {"plan", "plan --k 4 --s 3/5 --out acc_det_plan.json"},
      {"simulate",
       "simulate --k 3 --modes 24 --dt 1e-4 --t-end 5e-3 --N 8 --seed 11 "
       "--out acc_det_sim.csv"},
  };
  for (const auto& [name, args] : runs) {
    const std::string out = args.substr(args.rfind(' ') + 1);
    const int rc1 = run_cli(cli, args, "acc_det_stdout1.txt");
    const std::string first = read_file(out);
    const std::string first_stdout = read_file("acc_det_stdout1.txt");
    const int rc2 = run_cli(cli, args, "acc_det_stdout2.txt");
    const std::string second = read_file(out);
    const std::string second_stdout = read_file("acc_det_stdout2.txt");
    if (first.empty() || first != second || first_stdout != second_stdout ||
        rc1 != rc2) {
      pass = false;
      detail += name + " differs; ";
    }
  }

  // config precedence: file provides defaults, flags win
  {
    std::ofstream cfg("acc_det_cfg.json");
    cfg << "{\"k\": 4}\n";
    cfg.close();
    run_cli(cli, "plan --config acc_det_cfg.json", "acc_det_cfg4.txt");
    run_cli(cli, "plan --config acc_det_cfg.json --k 3", "acc_det_cfg3.txt");
    const std::string from_file = read_file("acc_det_cfg4.txt");
    const std::string from_flag = read_file("acc_det_cfg3.txt");
    if (from_file.find("\"threshold\":\"5/9\"") == std::string::npos ||
        from_flag.find("\"threshold\":\"1/2\"") == std::string::npos) {
      pass = false;
      detail += "config precedence broken; ";
    }
  }

  // manifest sidecars accompany primary outputs and carry the version
  {
    const std::string manifest = read_file("acc_det_sim.csv.manifest.json");
    if (manifest.find("\"artifact_version\"") == std::string::npos ||
        manifest.find("\"command\":\"simulate\"") == std::string::npos) {
      pass = false;
      detail += "manifest sidecar missing; ";
    }
  }

  // simulate smoke properties: monotone time column, finite energies
  {
    std::istringstream csv(read_file("acc_det_sim.csv"));
    std::string line;
    std::getline(csv, line);  // header
    double prev = -1.0;
    bool ok = line == "t,hamiltonian,e_Iu,e_I2,gap,h1_Iu,mass,dE1_re,dE2_re";
    while (std::getline(csv, line)) {
      std::stringstream ls(line);
      std::string cell;
      std::vector<double> vals;
      while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
      if (vals.size() != 9 || !(vals[0] > prev)) ok = false;
      for (double v : vals) {
        if (!std::isfinite(v)) ok = false;
      }
      prev = vals[0];
    }
    if (!ok) {
      pass = false;
      detail += "simulate CSV malformed; ";
    }
  }

  report(10, pass, "byte-identical reruns with fixed seeds",
         detail.empty() ? "6 subcommands replayed" : detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = "./gkdv";
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  criterion_1(cli);
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(cli);

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
