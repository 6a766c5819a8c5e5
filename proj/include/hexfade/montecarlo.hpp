#pragma once

// End-to-end validation pipeline: deploy random nodes, turn distances into
// mean path loss, add Gaussian shadowing, then compare the empirical fading
// law against the closed-form density via histogram, recursive CDF and
// Kolmogorov-Smirnov distance.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hexfade/lsf.hpp"
#include "hexfade/sampling.hpp"

namespace hexfade {

struct LsfSample {
  double distance_m;   // node-to-base-station separation
  double mean_pl_db;   // alpha + beta log10(distance)
  double lsf_db;       // mean path loss plus shadowing draw
};

/// One fading sample per deployed node. Distances come from whichever
/// sampler the strategy rule picks for this geometry; shadowing adds
/// sigma times a standard normal.
inline std::vector<LsfSample> simulate_lsf_samples(const ChannelModel& model,
                                                   RngStream& rng,
                                                   std::size_t n_s) {
  const SampleBatch<double> radii =
      sample_distances(model.geometry, rng, n_s);
  const double sigma = model.shadowing.sigma_psi_db;
  std::vector<LsfSample> out;
  out.reserve(n_s);
  for (double r : radii.samples) {
    const double mean = mean_path_loss_db(model.pathloss, r);
    out.push_back({r, mean, mean + sigma * rng.next_normal()});
  }
  return out;
}

/// Worker-partitioned variant: sample counts are split across `workers`
/// substreams of the master seed and concatenated in worker order, so the
/// output is a pure function of (model, seed, n_s, workers).
inline std::vector<LsfSample> simulate_lsf_samples(const ChannelModel& model,
                                                   std::uint64_t seed,
                                                   std::size_t n_s,
                                                   unsigned workers) {
  if (workers == 0) throw std::invalid_argument("need at least one worker");
  std::vector<std::vector<LsfSample>> parts(workers);
  const auto run = [&](unsigned w) {
    const std::size_t base = n_s / workers;
    const std::size_t count = base + (w < n_s % workers ? 1 : 0);
    RngStream rng = RngStream::substream(seed, w);
    parts[w] = simulate_lsf_samples(model, rng, count);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (std::thread& t : threads) t.join();
  }
  std::vector<LsfSample> out;
  out.reserve(n_s);
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

/// Equal-width density histogram: densities[j] = count_j / (n_samples * width).
struct Histogram {
  std::vector<double> edges;      // n_bins + 1 increasing values, dB
  std::vector<double> densities;  // per-bin density estimate, 1/dB
  std::size_t n_samples = 0;
  double bin_width = 0.0;
};

/// Bins samples over [lo, hi]. Samples landing exactly on an interior edge
/// go to the right bin; the value hi goes to the last bin; samples outside
/// the range are not counted (they still divide the densities).
inline Histogram histogram_estimate(const std::vector<double>& samples,
                                    std::size_t n_bins, double lo, double hi) {
  if (samples.empty()) throw std::invalid_argument("no samples to bin");
  if (n_bins < 1) throw std::invalid_argument("need at least one bin");
  if (!(hi > lo)) throw std::invalid_argument("histogram range is empty");
  Histogram h;
  h.n_samples = samples.size();
  h.bin_width = (hi - lo) / static_cast<double>(n_bins);
  h.edges.resize(n_bins + 1);
  for (std::size_t j = 0; j <= n_bins; ++j)
    h.edges[j] = lo + h.bin_width * static_cast<double>(j);
  std::vector<std::size_t> counts(n_bins, 0);
  for (double v : samples) {
    if (v < lo || v > hi) continue;
    auto j = static_cast<std::size_t>((v - lo) / h.bin_width);
    if (j >= n_bins) j = n_bins - 1;  // v == hi
    ++counts[j];
  }
  h.densities.resize(n_bins);
  for (std::size_t j = 0; j < n_bins; ++j)
    h.densities[j] = static_cast<double>(counts[j]) /
                     (static_cast<double>(h.n_samples) * h.bin_width);
  return h;
}

/// Default range [min sample, max sample]; a degenerate all-equal batch
/// falls back to a unit-wide window around the common value.
inline Histogram histogram_estimate(const std::vector<double>& samples,
                                    std::size_t n_bins) {
  if (samples.empty()) throw std::invalid_argument("no samples to bin");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return histogram_estimate(samples, n_bins, lo, hi);
}

/// Recursive CDF estimate from binned densities:
/// cdf_1 = pdf_1 * width, cdf_j = cdf_{j-1} + pdf_j * width.
inline std::vector<double> empirical_cdf(const Histogram& hist) {
  std::vector<double> cdf(hist.densities.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < hist.densities.size(); ++j) {
    acc += hist.densities[j] * hist.bin_width;
    cdf[j] = acc;
  }
  return cdf;
}

/// Fraction of samples whose shadowing excursion stays within three sigma
/// of their mean path loss; about 0.9973 under the Gaussian model.
inline double ci_coverage(const std::vector<LsfSample>& samples,
                          double sigma_psi_db) {
  if (!(sigma_psi_db > 0.0))
    throw std::domain_error("coverage requires positive shadowing sigma");
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::size_t inside = 0;
  for (const LsfSample& s : samples)
    if (std::fabs(s.lsf_db - s.mean_pl_db) <= 3.0 * sigma_psi_db) ++inside;
  return static_cast<double>(inside) / static_cast<double>(samples.size());
}

/// Kolmogorov-Smirnov distance between the raw empirical CDF of `sorted`
/// (ascending) and the model CDF.
template <class Cdf>
double ks_statistic(const std::vector<double>& sorted, Cdf&& cdf) {
  if (sorted.empty()) throw std::invalid_argument("no samples");
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

/// Large-sample 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) {
  return 1.63 / std::sqrt(static_cast<double>(n));
}

struct ValidationReport {
  // inputs
  double cell_radius_m = 0.0;
  double close_in_m = 0.0;
  double alpha_db = 0.0;
  double beta_db = 0.0;
  double sigma_psi_db = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_bins = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  // outputs
  double ks_distance = 0.0;
  double ks_critical = 0.0;
  double coverage = 0.0;
  Histogram histogram;
  std::vector<double> histogram_cdf;
  // raw pipeline data, kept for scatter emission; not serialized
  std::vector<LsfSample> samples;

  bool ks_pass() const { return ks_distance < ks_critical; }
};

/// Runs the full pipeline and packages everything a goodness-of-fit report
/// needs. Deterministic in (model, seed, n_s, n_bins, workers).
inline ValidationReport validate(const ChannelModel& model, std::uint64_t seed,
                                 std::size_t n_s, std::size_t n_bins,
                                 unsigned workers = 1) {
  if (n_s < 1) throw std::invalid_argument("need at least one sample");
  ValidationReport rep;
  rep.cell_radius_m = model.geometry.cell_radius();
  rep.close_in_m = model.geometry.close_in();
  rep.alpha_db = model.pathloss.alpha_db;
  rep.beta_db = model.pathloss.beta_db;
  rep.sigma_psi_db = model.shadowing.sigma_psi_db;
  rep.n_samples = n_s;
  rep.n_bins = n_bins;
  rep.seed = seed;
  rep.workers = workers;

  rep.samples = simulate_lsf_samples(model, seed, n_s, workers);
  std::vector<double> lsf;
  lsf.reserve(n_s);
  for (const LsfSample& s : rep.samples) lsf.push_back(s.lsf_db);

  const LsfDensity density(model);
  std::vector<double> sorted = lsf;
  std::sort(sorted.begin(), sorted.end());
  const LsfCdfTable cdf(density);
  rep.ks_distance = ks_statistic(sorted, cdf);
  rep.coverage = model.shadowing.sigma_psi_db > 0.0
                     ? ci_coverage(rep.samples, model.shadowing.sigma_psi_db)
                     : 1.0;  // degenerate: every sample sits on its mean
  rep.ks_critical = ks_critical_1pct(n_s);
  rep.histogram = histogram_estimate(lsf, n_bins);
  rep.histogram_cdf = empirical_cdf(rep.histogram);
  return rep;
}

/// JSON document with all inputs echoed and the fit outputs attached.
inline nlohmann::json to_json(const ValidationReport& rep) {
  return nlohmann::json{
      {"inputs",
       {{"cell_radius_m", rep.cell_radius_m},
        {"close_in_m", rep.close_in_m},
        {"alpha_db", rep.alpha_db},
        {"beta_db", rep.beta_db},
        {"sigma_psi_db", rep.sigma_psi_db},
        {"n_samples", rep.n_samples},
        {"n_bins", rep.n_bins},
        {"seed", rep.seed},
        {"workers", rep.workers}}},
      {"outputs",
       {{"ks_distance", rep.ks_distance},
        {"ks_critical_1pct", rep.ks_critical},
        {"ks_pass", rep.ks_pass()},
        {"ci_coverage", rep.coverage},
        {"histogram",
         {{"bin_edges", rep.histogram.edges},
          {"densities", rep.histogram.densities},
          {"cdf", rep.histogram_cdf},
          {"bin_width", rep.histogram.bin_width},
          {"n_samples", rep.histogram.n_samples}}}}}};
}

}  // namespace hexfade
