#include "gkdv/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gkdv/json_io.hpp"
#include "gkdv/parallel.hpp"
#include "gkdv/resonance.hpp"

namespace gkdv {
namespace {

constexpr std::uint64_t kChunk = 4096;

const char* kLemmaNames[] = {"nonres", "mk2_1", "mk2_2", "mk2_3",
                             "m2k2_1", "m2k2_2"};

int tuple_arity(Lemma lemma, int k) {
  switch (lemma) {
    case Lemma::nonres:
    case Lemma::mk2_1:
    case Lemma::mk2_2:
    case Lemma::mk2_3:
      return k + 2;
    default:
      return 2 * k + 2;
  }
}

// Self-contained integer draw: uniform on [lo, hi] via modulo.  The slight
// modulo bias is irrelevant for sampling; what matters is that the stream
// is fully determined by the engine state.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(rng() % span);
}

// One sampled tuple of arity m with sum 0 and |n_j| <= B.  Uniform draws
// miss the thin resonant configurations, so half the stream comes from
// structured families: pairwise-cancelling tuples, a near-collinear huge
// pair, and a separated pair near the threshold N.
bool sample_tuple(std::mt19937_64& rng, int m, std::int64_t B, double n_lambda,
                  std::span<std::int64_t> out) {
  const std::uint64_t strategy = rng() % 4;
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::int64_t sum = 0;
    switch (strategy) {
      case 0: {  // uniform
        for (int j = 0; j + 1 < m; ++j) {
          out[static_cast<std::size_t>(j)] = draw(rng, -B, B);
          sum += out[static_cast<std::size_t>(j)];
        }
        break;
      }
      case 1: {  // pairwise-cancelling with small jitter
        int j = 0;
        while (j + 2 < m) {
          const std::int64_t a = draw(rng, 1, B);
          const std::int64_t jitter = draw(rng, -2, 2);
          out[static_cast<std::size_t>(j)] = a;
          out[static_cast<std::size_t>(j + 1)] = -a + jitter;
          sum += jitter;
          j += 2;
        }
        for (; j + 1 < m; ++j) {
          out[static_cast<std::size_t>(j)] = draw(rng, -4, 4);
          sum += out[static_cast<std::size_t>(j)];
        }
        break;
      }
      case 2: {  // near-collinear huge pair, small companions
        const std::int64_t a = draw(rng, B / 2 + 1, B) * (rng() % 2 ? 1 : -1);
        out[0] = a;
        out[1] = -a + draw(rng, -3, 3);
        sum = out[0] + out[1];
        for (int j = 2; j + 1 < m; ++j) {
          out[static_cast<std::size_t>(j)] = draw(rng, -8, 8);
          sum += out[static_cast<std::size_t>(j)];
        }
        break;
      }
      default: {  // two high modes pinned near the threshold N
        const std::int64_t nl = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::llround(n_lambda)));
        const std::int64_t hi = std::min<std::int64_t>(B, 3 * nl);
        if (hi <= nl) return false;
        const std::int64_t a = draw(rng, nl, hi) * (rng() % 2 ? 1 : -1);
        out[0] = a;
        out[1] = -a + draw(rng, -2, 2);
        sum = out[0] + out[1];
        const std::int64_t low =
            std::max<std::int64_t>(1, nl / 64);
        for (int j = 2; j + 1 < m; ++j) {
          out[static_cast<std::size_t>(j)] = draw(rng, -low, low);
          sum += out[static_cast<std::size_t>(j)];
        }
        break;
      }
    }
    const std::int64_t last = -sum;
    if (last >= -B && last <= B) {
      out[static_cast<std::size_t>(m - 1)] = last;
      return true;
    }
  }
  return false;
}

struct LocalReport {
  std::uint64_t requested = 0, checked = 0, filtered = 0, skipped_zero = 0,
                rhs_zero_lhs_nonzero = 0, omega_alpha_zero = 0;
  double max_ratio = -1.0;
  std::vector<std::int64_t> argmax;
  std::array<std::uint64_t, kHistogramBins> histogram{};
};

void merge(SweepReport& into, const LocalReport& from) {
  into.requested += from.requested;
  into.checked += from.checked;
  into.filtered += from.filtered;
  into.skipped_zero += from.skipped_zero;
  into.rhs_zero_lhs_nonzero += from.rhs_zero_lhs_nonzero;
  into.omega_alpha_zero += from.omega_alpha_zero;
  for (int b = 0; b < kHistogramBins; ++b) {
    into.histogram[static_cast<std::size_t>(b)] +=
        from.histogram[static_cast<std::size_t>(b)];
  }
  // Strictly-greater keeps the earliest chunk on ties: deterministic.
  if (from.max_ratio > into.max_ratio) {
    into.max_ratio = from.max_ratio;
    into.argmax = from.argmax;
  }
}

// Condition |xi_1*| ~ |xi_2*| >~ N >> |xi_3*| ~ |xi_4*| on a rearrangement.
bool two_high_two_low(std::span<const double> xs, const MultiplierParams& p) {
  const double a1 = std::abs(xs[0]), a2 = std::abs(xs[1]);
  const double a3 = std::abs(xs[2]);
  const double a4 = xs.size() > 3 ? std::abs(xs[3]) : 0.0;
  return p.similar(a1, a2) && p.gtrsim_N(a2) && p.much_greater(p.N, a3) &&
         p.similar(a3, a4);
}

class LemmaEvaluator {
 public:
  LemmaEvaluator(const SweepConfig& config)
      : config_(config),
        // m is also evaluated at block sums, which reach (k+2)*bound.
        table_(config.params, config.lambda,
               static_cast<int>((config.params.k + 2) * config.bound + 1)) {}

  void evaluate(std::span<const std::int64_t> tuple, LocalReport& local) const {
    const MultiplierParams& p = config_.params;
    const TupleView t{tuple, config_.lambda};
    auto m_of = [this](std::int64_t n) { return table_(n); };

    std::array<double, 10> star_buf;
    std::span<double> xs(star_buf.data(), tuple.size());
    rearrange_by_modulus(t, xs);

    double lhs = 0.0, rhs = 0.0, lhs_scale = 0.0;
    bool alpha_zero_flag = false;

    switch (config_.lemma) {
      case Lemma::nonres: {
        std::array<double, 10> tmp;
        const OmegaFlags f = classify_core(
            t, p, m_of, std::span<double>(tmp.data(), tuple.size()));
        if (!f.any) {
          ++local.filtered;
          return;
        }
        if (alpha_is_zero(t)) {
          ++local.omega_alpha_zero;
          ++local.filtered;
          return;
        }
        lhs = std::abs(weighted_cubic_sum(t, m_of));
        lhs_scale = abs_weighted_cubic_sum(t, m_of);
        rhs = std::abs(alpha_of(t));
        break;
      }
      case Lemma::mk2_1:
      case Lemma::mk2_2:
      case Lemma::mk2_3: {
        if (effective_omega_core(t, p, m_of, &alpha_zero_flag)) {
          ++local.filtered;
          return;
        }
        if (alpha_zero_flag) ++local.omega_alpha_zero;
        if (config_.lemma == Lemma::mk2_2 && !two_high_two_low(xs, p)) {
          ++local.filtered;
          return;
        }
        if (config_.lemma == Lemma::mk2_3 &&
            !(xs.size() >= 5 &&
              p.much_greater(std::abs(xs[3]), std::abs(xs[4])))) {
          ++local.filtered;
          return;
        }
        lhs = std::abs(weighted_cubic_sum(t, m_of));
        lhs_scale = abs_weighted_cubic_sum(t, m_of);
        const double m1 = m_of(llround_abs(xs[0] * config_.lambda));
        if (config_.lemma == Lemma::mk2_1) {
          rhs = m1 * m1 * std::abs(xs[0]) * xs[2] * xs[2];
        } else if (config_.lemma == Lemma::mk2_2) {
          rhs = std::abs(xs[2] * xs[3] * xs[4]);
        } else {
          rhs = m1 * m1 * xs[0] * xs[0] * std::abs(xs[4]);
        }
        break;
      }
      case Lemma::m2k2_1:
      case Lemma::m2k2_2: {
        if (config_.lemma == Lemma::m2k2_2 && !two_high_two_low(xs, p)) {
          ++local.filtered;
          return;
        }
        const std::complex<double> M = symmetrized_block_multiplier(
            t, p.k, [&](TupleView block) {
              bool az = false;
              const double v = sigma_tilde_core(block, p, m_of, &az);
              return v;
            });
        lhs = std::abs(M);
        lhs_scale = lhs;  // cancellation-free scale not needed here
        rhs = config_.lemma == Lemma::m2k2_1 ? std::abs(xs[0]) : std::abs(xs[2]);
        break;
      }
    }

    // Accumulated rounding can leave a nonzero residue where the sum
    // vanishes identically; treat anything below 1e-12 of the term scale
    // as zero before classifying.
    const bool lhs_zero = lhs <= 1e-12 * lhs_scale;
    if (rhs == 0.0) {
      if (lhs_zero) {
        ++local.skipped_zero;
      } else {
        ++local.rhs_zero_lhs_nonzero;
      }
      return;
    }
    const double ratio = lhs / rhs;
    ++local.checked;
    int bin = ratio > 0.0
                  ? static_cast<int>(std::floor((std::log10(ratio) + 12.0) * 2.0))
                  : 0;
    bin = std::clamp(bin, 0, kHistogramBins - 1);
    ++local.histogram[static_cast<std::size_t>(bin)];
    if (ratio > local.max_ratio) {
      local.max_ratio = ratio;
      local.argmax.assign(tuple.begin(), tuple.end());
    }
  }

 private:
  template <typename MEval>
  static double abs_weighted_cubic_sum(TupleView t, MEval&& m_of) {
    double acc = 0.0;
    const double il = 1.0 / t.lambda;
    for (std::int64_t nj : t.n) {
      const double xi = static_cast<double>(nj) * il;
      const double mm = m_of(nj);
      acc += mm * mm * std::abs(xi * xi * xi);
    }
    return acc;
  }

  static std::int64_t llround_abs(double v) {
    return std::llabs(std::llround(v));
  }

  const SweepConfig& config_;
  MultiplierTable table_;
};

}  // namespace

const char* lemma_name(Lemma lemma) {
  return kLemmaNames[static_cast<int>(lemma)];
}

std::optional<Lemma> lemma_from_name(const std::string& name) {
  for (int i = 0; i < 6; ++i) {
    if (name == kLemmaNames[i]) return static_cast<Lemma>(i);
  }
  return std::nullopt;
}

SweepReport bound_sweep(const SweepConfig& config_in) {
  SweepConfig config = config_in;
  config.params.validate();
  if (config.bound <= 0) {
    config.bound = static_cast<std::int64_t>(
        std::ceil(4.0 * config.params.N * config.lambda));
  }

  SweepReport report;
  report.lemma = lemma_name(config.lemma);
  report.params = config.params;
  report.lambda = config.lambda;
  report.bound = config.bound;
  report.seed = config.seed;
  report.exhaustive = config.exhaustive;
  report.max_ratio = -1.0;

  const int m = tuple_arity(config.lemma, config.params.k);
  const LemmaEvaluator eval(config);

  if (config.exhaustive) {
    const double terms = std::pow(2.0 * config.bound + 1.0, m - 1);
    if (terms > 1e7) {
      throw SizeOverflowError("exhaustive sweep exceeds the term budget");
    }
    const std::int64_t B = config.bound;
    std::vector<LocalReport> locals(static_cast<std::size_t>(2 * B + 1));
    parallel_for_chunks(locals.size(), [&](std::size_t c) {
      LocalReport& local = locals[c];
      std::vector<std::int64_t> idx(static_cast<std::size_t>(m), -B);
      idx[0] = static_cast<std::int64_t>(c) - B;
      // odometer over positions 1..m-2; last balances
      for (;;) {
        std::int64_t sum = 0;
        for (int j = 0; j + 1 < m; ++j) sum += idx[static_cast<std::size_t>(j)];
        const std::int64_t last = -sum;
        if (last >= -B && last <= B) {
          idx[static_cast<std::size_t>(m - 1)] = last;
          ++local.requested;
          eval.evaluate(std::span<const std::int64_t>(idx), local);
        }
        int j = m - 2;
        for (; j >= 1; --j) {
          if (idx[static_cast<std::size_t>(j)] < B) {
            ++idx[static_cast<std::size_t>(j)];
            break;
          }
          idx[static_cast<std::size_t>(j)] = -B;
        }
        if (j < 1) break;
      }
    });
    for (const LocalReport& local : locals) merge(report, local);
  } else {
    const std::uint64_t n_chunks = (config.count + kChunk - 1) / kChunk;
    std::vector<LocalReport> locals(static_cast<std::size_t>(n_chunks));
    parallel_for_chunks(locals.size(), [&](std::size_t c) {
      LocalReport& local = locals[c];
      // Chunk-indexed engine: the stream is independent of the thread
      // schedule, so reports are reproducible under any GKDV_THREADS.
      std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ULL +
                          0x243f6a8885a308d3ULL * (c + 1));
      const std::uint64_t lo = c * kChunk;
      const std::uint64_t hi = std::min<std::uint64_t>(lo + kChunk, config.count);
      std::array<std::int64_t, 10> tuple;
      for (std::uint64_t i = lo; i < hi; ++i) {
        ++local.requested;
        if (!sample_tuple(rng, m, config.bound,
                          config.params.N * config.lambda,
                          std::span<std::int64_t>(tuple.data(),
                                                  static_cast<std::size_t>(m)))) {
          ++local.filtered;
          continue;
        }
        eval.evaluate(std::span<const std::int64_t>(tuple.data(),
                                                    static_cast<std::size_t>(m)),
                      local);
      }
    });
    for (const LocalReport& local : locals) merge(report, local);
  }

  if (report.checked == 0) {
    report.empty = true;
    report.max_ratio = 0.0;
  }
  return report;
}

std::string SweepReport::to_json() const {
  JsonObject params_obj;
  params_obj.add("N", params.N)
      .add("s", params.s)
      .add("k", params.k)
      .add("cmp_large", params.cmp_large)
      .add("cmp_sim", params.cmp_sim)
      .add("cmp_gtrsim_N", params.cmp_gtrsim_N);

  JsonArray argmax_arr;
  for (std::int64_t v : argmax) argmax_arr.add(v);
  JsonArray hist_arr;
  for (std::uint64_t v : histogram) hist_arr.add(v);

  JsonObject obj;
  obj.add("lemma", lemma)
      .raw("params", params_obj.str())
      .add("lambda", lambda)
      .add("bound", bound)
      .add("seed", seed)
      .add("sampler", exhaustive ? "exhaustive" : "random")
      .add("requested", requested)
      .add("checked", checked)
      .add("filtered", filtered)
      .add("skipped", skipped_zero)
      .add("rhs_zero_lhs_nonzero", rhs_zero_lhs_nonzero)
      .add("omega_alpha_zero", omega_alpha_zero)
      .add("empty", empty)
      .add("max_ratio", max_ratio)
      .raw("argmax", argmax_arr.str())
      .raw("histogram_log10_halfdecade", hist_arr.str());
  return obj.str();
}

}  // namespace gkdv
