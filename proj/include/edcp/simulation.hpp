#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edcp/calibration.hpp"
#include "edcp/rng.hpp"
#include "edcp/series.hpp"

namespace edcp {

enum class Family { normal, skew_normal, exponential };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// A univariate location-scale(-shape) law.
///   normal:      location + scale * Z
///   skew_normal: location + scale * (delta |Z1| + sqrt(1 - delta^2) Z2),
///                delta = shape / sqrt(1 + shape^2)
///   exponential: location + scale * E, E ~ Exp(1)
struct Distribution {
  Family family = Family::normal;
  double location = 0.0;
  double scale = 1.0;
  double shape = 0.0;

  static Distribution normal(double mean = 0.0, double variance = 1.0);
  static Distribution skew_normal(double location = 0.0, double scale_sq = 1.0, double shape = 1.0);
  static Distribution exponential(double rate = 1.0);

  double sample(Rng& rng) const;
};

/// Throws ParameterError on scale <= 0 or non-finite parameters.
void validate(const Distribution& dist);

/// Post-change law: additive mean shift, optionally a new variance
/// (scale^2 for normal and skew-normal, rate = 1/sqrt(variance) for
/// exponential) and a new skew-normal shape.
struct Change {
  double location_fraction = 0.5;
  double mean_shift = 0.0;
  std::optional<double> variance;
  std::optional<double> shape;
};

Distribution post_change(const Distribution& base, const Change& change);

struct Scenario {
  std::string name;
  Distribution base{};
  std::optional<Change> change;
  std::size_t n = 100;
  std::size_t replications = 1000;
  DetectorConfig detector{};
  std::uint64_t seed = 0;

  /// floor(location_fraction * n); 0 without a change.
  std::size_t change_index() const;
};

struct SimulationSummary {
  std::string scenario;
  std::size_t n = 0;
  std::size_t replications = 0;
  std::optional<std::size_t> rejections;
  std::optional<double> rejection_rate;
  std::optional<double> monte_carlo_se;
  std::optional<double> mean_localization_error;
  std::optional<double> localization_se;
  std::size_t localized = 0;  // replicates entering the localization mean
  bool conditional_localization = false;
  double seconds = 0.0;
};

/// First floor(k* n) points from the base law, the rest post-change. The
/// stream is fully determined by `replicate_seed`.
Series generate(const Scenario& scenario, std::uint64_t replicate_seed);

/// Replicate r uses data seed derive_seed(seed, r, 0) and detector seed
/// derive_seed(seed, r, 1).
std::uint64_t replicate_data_seed(const Scenario& scenario, std::size_t r);
std::uint64_t replicate_detector_seed(const Scenario& scenario, std::size_t r);

/// Empirical size; the scenario must carry no change.
SimulationSummary run_size(const Scenario& scenario);

/// Empirical power plus unconditional localization of the scan's argmax.
SimulationSummary run_power(const Scenario& scenario);

/// Mean |k_hat - k*| / n. Unconditional (scan only, every replicate) by
/// default; `conditional` runs the full test and averages over rejections.
SimulationSummary run_localization(const Scenario& scenario, bool conditional = false);

/// Two-sample energy statistic 2U_xy - U_xx - U_yy for scalar samples in
/// O((n + m) log(n + m)).
double energy_statistic_1d(std::span<const double> x, std::span<const double> y);

struct MixtureEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t replicates = 0;
};

/// Monte Carlo energy distance between P_a = a F1 + (1-a) F2 and
/// P_b = b F1 + (1-b) F2: mean and SE over `replicates` independent
/// estimates, each from N draws per side.
MixtureEstimate mixture_energy_oracle(const Distribution& f1, const Distribution& f2, double a,
                                      double b, std::size_t sample_size, std::size_t replicates,
                                      std::uint64_t seed);

/// Limit drift of E[S_{n, floor(n gamma)} / n] / Delta for a change at tau*.
double drift_curve(double gamma, double tau_star);

}  // namespace edcp
