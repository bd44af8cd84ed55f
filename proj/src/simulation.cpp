#include "edcp/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <cmath>
#include <random>
#include <string>

#include "edcp/errors.hpp"

namespace edcp {

std::string to_string(Family family) {
  switch (family) {
    case Family::normal: return "normal";
    case Family::skew_normal: return "skew_normal";
    case Family::exponential: return "exponential";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "normal" || name == "N") return Family::normal;
  if (name == "skew_normal" || name == "SN") return Family::skew_normal;
  if (name == "exponential" || name == "Exp") return Family::exponential;
  throw ParameterError("unknown distribution family '" + name + "'");
}

Distribution Distribution::normal(double mean, double variance) {
  if (!(variance > 0.0)) throw ParameterError("normal variance must be positive");
  return {Family::normal, mean, std::sqrt(variance), 0.0};
}

Distribution Distribution::skew_normal(double location, double scale_sq, double shape) {
  if (!(scale_sq > 0.0)) throw ParameterError("skew-normal scale must be positive");
  return {Family::skew_normal, location, std::sqrt(scale_sq), shape};
}

Distribution Distribution::exponential(double rate) {
  if (!(rate > 0.0)) throw ParameterError("exponential rate must be positive");
  return {Family::exponential, 0.0, 1.0 / rate, 0.0};
}

void validate(const Distribution& dist) {
  if (!std::isfinite(dist.location) || !std::isfinite(dist.shape) || !std::isfinite(dist.scale) ||
      !(dist.scale > 0.0)) {
    throw ParameterError("invalid " + to_string(dist.family) + " parameters");
  }
}

double Distribution::sample(Rng& rng) const {
  switch (family) {
    case Family::normal: {
      std::normal_distribution<double> z;
      return location + scale * z(rng);
    }
    case Family::skew_normal: {
      std::normal_distribution<double> z;
      const double delta = shape / std::sqrt(1.0 + shape * shape);
      const double z1 = z(rng);
      const double z2 = z(rng);
      return location + scale * (delta * std::abs(z1) + std::sqrt(1.0 - delta * delta) * z2);
    }
    case Family::exponential: {
      std::exponential_distribution<double> e(1.0);
      return location + scale * e(rng);
    }
  }
  return 0.0;
}

Distribution post_change(const Distribution& base, const Change& change) {
  Distribution out = base;
  out.location += change.mean_shift;
  if (change.variance) {
    if (!(*change.variance > 0.0)) throw ParameterError("post-change variance must be positive");
    out.scale = std::sqrt(*change.variance);
  }
  if (change.shape) {
    if (base.family != Family::skew_normal) {
      throw ParameterError("a shape change applies to the skew-normal family only");
    }
    out.shape = *change.shape;
  }
  validate(out);
  return out;
}

std::size_t Scenario::change_index() const {
  if (!change) return 0;
  return static_cast<std::size_t>(
      std::floor(change->location_fraction * static_cast<double>(n) + 1e-9));
}

std::uint64_t replicate_data_seed(const Scenario& scenario, std::size_t r) {
  return derive_seed(scenario.seed, r, 0);
}

std::uint64_t replicate_detector_seed(const Scenario& scenario, std::size_t r) {
  return derive_seed(scenario.seed, r, 1);
}

Series generate(const Scenario& scenario, std::uint64_t replicate_seed) {
  validate(scenario.base);
  if (scenario.change && !(scenario.change->location_fraction >= 0.0 &&
                           scenario.change->location_fraction <= 1.0)) {
    throw ParameterError("change location fraction must lie in [0, 1]");
  }
  const Distribution after = scenario.change ? post_change(scenario.base, *scenario.change) : scenario.base;
  const std::size_t k_star = scenario.change ? scenario.change_index() : scenario.n;

  Rng rng(replicate_seed);
  std::vector<double> x(scenario.n);
  for (std::size_t i = 0; i < scenario.n; ++i) {
    x[i] = (i < k_star ? scenario.base : after).sample(rng);
  }
  return Series::scalar(std::move(x));
}

namespace {

struct ReplicateOutcome {
  bool reject = false;
  std::size_t k_scan = 0;
};

enum class Mode { detect, scan_only };

std::vector<ReplicateOutcome> run_replicates(const Scenario& scenario, Mode mode) {
  if (scenario.replications < 1) throw ParameterError("at least one replication is required");
  validate(scenario.detector);
  std::vector<ReplicateOutcome> out(scenario.replications);
  const auto total = static_cast<std::ptrdiff_t>(scenario.replications);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < total; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    try {
      const Series x = generate(scenario, replicate_data_seed(scenario, idx));
      if (mode == Mode::scan_only) {
        out[idx].k_scan = scan(x, scenario.detector.eta, scenario.detector.omega).k_hat;
        continue;
      }
      DetectorConfig det = scenario.detector;
      det.seed = replicate_detector_seed(scenario, idx);
      const Detection d = detect(x, det);
      out[idx].reject = d.decision.reject;
      out[idx].k_scan = d.scan.k_hat;
    } catch (...) {
#pragma omp critical(edcp_simulation_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void fill_rejections(SimulationSummary& s, const std::vector<ReplicateOutcome>& reps) {
  const auto rejections = static_cast<std::size_t>(
      std::count_if(reps.begin(), reps.end(), [](const auto& r) { return r.reject; }));
  const double p = static_cast<double>(rejections) / static_cast<double>(reps.size());
  s.rejections = rejections;
  s.rejection_rate = p;
  s.monte_carlo_se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps.size()));
}

void fill_localization(SimulationSummary& s, const Scenario& scenario,
                       const std::vector<ReplicateOutcome>& reps, bool conditional) {
  const std::size_t k_star = scenario.change_index();
  const double n = static_cast<double>(scenario.n);
  double sum = 0.0, sum_sq = 0.0;
  std::size_t used = 0;
  for (const auto& r : reps) {
    if (conditional && !r.reject) continue;
    const double err = std::abs(static_cast<double>(r.k_scan) - static_cast<double>(k_star)) / n;
    sum += err;
    sum_sq += err * err;
    ++used;
  }
  s.localized = used;
  s.conditional_localization = conditional;
  if (used == 0) return;
  const double mean = sum / static_cast<double>(used);
  s.mean_localization_error = mean;
  const double var = used > 1 ? (sum_sq - static_cast<double>(used) * mean * mean) / static_cast<double>(used - 1) : 0.0;
  s.localization_se = std::sqrt(std::max(0.0, var) / static_cast<double>(used));
}

SimulationSummary start_summary(const Scenario& scenario) {
  SimulationSummary s;
  s.scenario = scenario.name;
  s.n = scenario.n;
  s.replications = scenario.replications;
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SimulationSummary run_size(const Scenario& scenario) {
  if (scenario.change) throw ParameterError("size runs take a scenario without a change");
  const auto t0 = std::chrono::steady_clock::now();
  auto s = start_summary(scenario);
  fill_rejections(s, run_replicates(scenario, Mode::detect));
  s.seconds = seconds_since(t0);
  return s;
}

SimulationSummary run_power(const Scenario& scenario) {
  if (!scenario.change) throw ParameterError("power runs need a scenario with a change");
  const auto t0 = std::chrono::steady_clock::now();
  auto s = start_summary(scenario);
  const auto reps = run_replicates(scenario, Mode::detect);
  fill_rejections(s, reps);
  fill_localization(s, scenario, reps, false);
  s.seconds = seconds_since(t0);
  return s;
}

SimulationSummary run_localization(const Scenario& scenario, bool conditional) {
  if (!scenario.change) throw ParameterError("localization runs need a scenario with a change");
  const auto t0 = std::chrono::steady_clock::now();
  auto s = start_summary(scenario);
  const auto reps = run_replicates(scenario, conditional ? Mode::detect : Mode::scan_only);
  if (conditional) fill_rejections(s, reps);
  fill_localization(s, scenario, reps, conditional);
  s.seconds = seconds_since(t0);
  return s;
}

namespace {

/// sum_{i<j} |s_i - s_j| for sorted s.
double sorted_pair_sum(std::span<const double> s) {
  const auto n = static_cast<double>(s.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += s[i] * (2.0 * static_cast<double>(i) - n + 1.0);
  return acc;
}

}  // namespace

double energy_statistic_1d(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) throw SizeError("energy statistic needs two points per sample");
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::vector<double> all;
  all.reserve(xs.size() + ys.size());
  std::merge(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(all));

  const double wx = sorted_pair_sum(xs);
  const double wy = sorted_pair_sum(ys);
  const double cross = sorted_pair_sum(all) - wx - wy;
  const auto n = static_cast<double>(xs.size());
  const auto m = static_cast<double>(ys.size());
  return 2.0 * cross / (n * m) - 2.0 * wx / (n * (n - 1.0)) - 2.0 * wy / (m * (m - 1.0));
}

MixtureEstimate mixture_energy_oracle(const Distribution& f1, const Distribution& f2, double a,
                                      double b, std::size_t sample_size, std::size_t replicates,
                                      std::uint64_t seed) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
    throw ParameterError("mixture weights must lie in [0, 1]");
  }
  if (replicates < 2) throw ParameterError("need at least two replicate estimates for an SE");
  validate(f1);
  validate(f2);

  std::vector<double> est(replicates);
  const auto total = static_cast<std::ptrdiff_t>(replicates);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < total; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::bernoulli_distribution pick_a(a), pick_b(b);
    std::vector<double> x(sample_size), y(sample_size);
    for (double& v : x) v = pick_a(rng) ? f1.sample(rng) : f2.sample(rng);
    for (double& v : y) v = pick_b(rng) ? f1.sample(rng) : f2.sample(rng);
    est[static_cast<std::size_t>(r)] = energy_statistic_1d(x, y);
  }

  double mean = 0.0;
  for (double e : est) mean += e;
  mean /= static_cast<double>(replicates);
  double ss = 0.0;
  for (double e : est) ss += (e - mean) * (e - mean);
  const double var = ss / static_cast<double>(replicates - 1);
  return {mean, std::sqrt(var / static_cast<double>(replicates)), replicates};
}

double drift_curve(double gamma, double tau_star) {
  if (!(gamma > 0.0 && gamma < 1.0 && tau_star > 0.0 && tau_star < 1.0)) {
    throw ParameterError("gamma and tau* must lie in (0, 1)");
  }
  if (gamma <= tau_star) return (1.0 - tau_star) * (1.0 - tau_star) * gamma / (1.0 - gamma);
  return tau_star * tau_star * (1.0 - gamma) / gamma;
}

}  // namespace edcp
