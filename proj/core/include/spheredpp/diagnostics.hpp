#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spheredpp/models.hpp"
#include "spheredpp/sphere.hpp"
#include "spheredpp/spectra.hpp"

namespace spheredpp {

/// det[C0(s(x_i, x_j))]; tiny negative determinants (> -1e-10) are reported as 0.
double joint_intensity(const PointPattern& points, const std::function<double(double)>& c0);

/// g0(s) = 1 - R0(s)^2.
double pair_correlation(const std::function<double(double)>& r0, double s);

struct PcfPoint {
  double s;
  double g0;
};

/// g0 on `grid` equally spaced distances from 0 to s_max inclusive.
std::vector<PcfPoint> pcf_curve(const std::function<double(double)>& r0, int grid,
                                double s_max = 3.141592653589793);

/// Correlation function R0 of the model's kernel: psi itself for psi-based
/// families in kernel mode, the normalized spectral series otherwise.
std::function<double(double)> model_correlation(const IsotropicModel& model);

/// Var(#X) = sum_l m_l lambda_l (1 - lambda_l).
double count_variance(const MercerSpectrum& kernel);

/// I(g0) = (1/eta)(1 - Var(#X)/eta).
double global_repulsiveness(const MercerSpectrum& kernel);

struct LocalRepulsiveness {
  /// True when sum l^2 beta_l was shown to converge; slope is then 0.
  bool available = false;
  double slope = 0.0;
  bool slope_infinite = false;
  /// g0''(0); meaningful only when available.
  double curvature = 0.0;
  /// Bound on the part of the curvature sum beyond the stored levels.
  double remainder = 0.0;
  std::string note;
};

/// Slope and curvature of g0 at 0 from the d-Schoenberg coefficients of R0.
LocalRepulsiveness local_repulsiveness(const DSchoenbergSeq& beta);

/// Model-aware version: knows the Matern slopes, where the series test
/// cannot succeed.
LocalRepulsiveness local_repulsiveness(const IsotropicModel& model);

struct RepulsivenessReport {
  double eta = 0.0;
  double global = 0.0;
  double count_variance = 0.0;
  LocalRepulsiveness local;
};

RepulsivenessReport repulsiveness_report(const IsotropicModel& model);

struct MonteCarloReport {
  int replicates = 0;
  double mean_count = 0.0;
  double var_count = 0.0;
  double theory_eta = 0.0;
  double theory_var = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;
  double z_mean = 0.0;
  double z_var = 0.0;
  bool pass = false;
  std::vector<std::size_t> counts;
};

/// Simulates N replicates (replicate i uses the stream "replicate:i" of the
/// root seed) and compares the count mean and variance with theory at 3
/// standard errors. Replicates run on `threads` threads; the result does not
/// depend on the thread count.
MonteCarloReport montecarlo_validate(const MercerSpectrum& kernel, int replicates,
                                     std::uint64_t root_seed, int threads = 1);

MonteCarloReport montecarlo_validate(const IsotropicModel& model, int replicates,
                                     std::uint64_t root_seed, int threads = 1);

} // namespace spheredpp
