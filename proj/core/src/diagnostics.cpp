#include "spheredpp/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "spheredpp/errors.hpp"
#include "spheredpp/harmonics.hpp"
#include "spheredpp/sampler.hpp"

namespace spheredpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCurvatureTail = 1e-13;

// Bound on sum_{l > L} w_l from the last stored terms, or +inf when neither a
// geometric nor a power-law majorant fits.
double fitted_remainder(const std::vector<double>& w) {
  const int L = static_cast<int>(w.size()) - 1;
  if (L < 8) return kInf;
  const int lo = std::max(1, L / 2);
  // geometric: largest ratio over the window
  double rmax = 0.0;
  bool positive = true;
  for (int l = lo; l < L; ++l) {
    if (!(w[l] > 0.0) || !(w[l + 1] > 0.0)) {
      positive = false;
      break;
    }
    rmax = std::max(rmax, w[l + 1] / w[l]);
  }
  if (!positive) return kInf;
  double best = kInf;
  if (rmax < 1.0) best = w[L] * rmax / (1.0 - rmax);
  // power law w_l <= C l^{-a}: smallest local log-log slope over the window
  double amin = kInf;
  for (int l = lo; l < L; ++l)
    amin = std::min(amin, -std::log(w[l + 1] / w[l]) / std::log((l + 1.0) / l));
  if (amin > 1.0) best = std::min(best, w[L] * L / (amin - 1.0));
  return best;
}

double sample_variance(const std::vector<std::size_t>& c, double mean) {
  if (c.size() < 2) return 0.0;
  double s = 0.0;
  for (auto x : c) s += (x - mean) * (x - mean);
  return s / (c.size() - 1.0);
}

} // namespace

double joint_intensity(const PointPattern& points, const std::function<double(double)>& c0) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = c0(0.0);
    for (Eigen::Index j = 0; j < i; ++j)
      K(i, j) = K(j, i) = c0(geodesic_distance(points[i], points[j]));
  }
  const double det = K.fullPivLu().determinant();
  if (det < 0.0 && det > -1e-10) return 0.0;
  return det;
}

double pair_correlation(const std::function<double(double)>& r0, double s) {
  const double r = r0(s);
  return 1.0 - r * r;
}

std::vector<PcfPoint> pcf_curve(const std::function<double(double)>& r0, int grid, double s_max) {
  if (grid < 2) throw DomainError("pcf grid needs at least 2 points");
  std::vector<PcfPoint> out;
  out.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    const double s = s_max * i / (grid - 1.0);
    out.push_back({s, pair_correlation(r0, s)});
  }
  return out;
}

std::function<double(double)> model_correlation(const IsotropicModel& model) {
  if (has_psi(model.family) && model.mode == Mode::Kernel) return psi_function(model.family);
  const auto shape = shape_of(kernel_spectrum(model));
  const double at0 = eval_psi_series(shape, 0.0);
  return [shape, at0](double s) { return eval_psi_series(shape, s) / at0; };
}

double count_variance(const MercerSpectrum& kernel) {
  if (kernel.kind() != SpectrumKind::Kernel) throw DomainError("expected a kernel spectrum");
  double v = 0.0;
  for (int l = 0; l <= kernel.max_level(); ++l) {
    const double lam = kernel[l];
    if (lam > 0.0 && lam < 1.0) v += multiplicity_real(l, kernel.dim()) * lam * (1.0 - lam);
  }
  return v;
}

double global_repulsiveness(const MercerSpectrum& kernel) {
  const double eta = kernel.eta();
  if (!(eta > 0.0)) throw DomainError("global repulsiveness needs eta > 0");
  return (1.0 - count_variance(kernel) / eta) / eta;
}

LocalRepulsiveness local_repulsiveness(const DSchoenbergSeq& beta) {
  LocalRepulsiveness r;
  const int d = beta.dim().value();
  std::vector<double> w(beta.size());
  double sum = 0.0;
  for (std::size_t l = 0; l < beta.size(); ++l) {
    w[l] = static_cast<double>(l) * (l + d - 1.0) * beta[l];
    sum += w[l];
  }
  // tail_bound 0 means the stored levels are the whole sequence
  double rem = 0.0;
  if (beta.tail_bound() > 0.0) {
    std::size_t last = w.size();
    while (last > 0 && beta[last - 1] == 0.0) --last;
    w.resize(last);
    rem = fitted_remainder(w);
  }
  r.remainder = rem;
  if (rem <= 1e-8 * std::max(1.0, sum)) {
    r.available = true;
    r.slope = 0.0;
    r.curvature = 2.0 / d * sum;
  } else {
    r.note = "variance condition not established: sum l^2 beta_l may diverge";
  }
  return r;
}

LocalRepulsiveness local_repulsiveness(const IsotropicModel& model) {
  if (const auto* m = std::get_if<Matern>(&model.family); m && model.mode == Mode::Kernel) {
    LocalRepulsiveness r;
    r.available = false;
    if (m->nu == 0.5) {
      r.slope = 2.0 / m->c;
    } else {
      r.slope = kInf;
      r.slope_infinite = true;
    }
    r.note = "Matern: g0 is not differentiable at 0 with zero slope";
    return r;
  }
  // the curvature weights grow like l^2, so cut the coefficients much deeper
  IsotropicModel deep = model;
  deep.trunc.rel_tail = std::min(model.trunc.rel_tail, kCurvatureTail);
  if (has_psi(model.family) && model.mode == Mode::Kernel)
    return local_repulsiveness(model_dschoenberg(deep.family, deep.dim, deep.trunc));
  return local_repulsiveness(shape_of(kernel_spectrum(deep)));
}

RepulsivenessReport repulsiveness_report(const IsotropicModel& model) {
  RepulsivenessReport rep;
  const auto spec = kernel_spectrum(model);
  rep.eta = spec.eta();
  rep.count_variance = count_variance(spec);
  rep.global = global_repulsiveness(spec);
  rep.local = local_repulsiveness(model);
  return rep;
}

MonteCarloReport montecarlo_validate(const MercerSpectrum& kernel, int replicates,
                                     std::uint64_t root_seed, int threads) {
  if (replicates < 2) throw DomainError("montecarlo_validate needs at least 2 replicates");
  if (kernel.kind() != SpectrumKind::Kernel) throw DomainError("expected a kernel spectrum");
  MonteCarloReport rep;
  rep.replicates = replicates;
  rep.counts.assign(replicates, 0);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= replicates) return;
      try {
        const auto seed = derive_seed(root_seed, "replicate:" + std::to_string(i));
        rep.counts[i] = sample_dpp(kernel, seed).pattern.size();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(replicates);
        return;
      }
    }
  };
  const int nt = std::max(1, std::min(threads, replicates));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  double s = 0.0;
  for (auto c : rep.counts) s += static_cast<double>(c);
  const double N = replicates;
  rep.mean_count = s / N;
  rep.var_count = sample_variance(rep.counts, rep.mean_count);
  rep.theory_eta = kernel.eta();
  rep.theory_var = count_variance(kernel);

  // count = sum of independent Bernoulli(lambda_l) with multiplicity m_l
  double k2 = 0.0, k4 = 0.0;
  for (int l = 0; l <= kernel.max_level(); ++l) {
    const double p = kernel[l];
    if (!(p > 0.0 && p < 1.0)) continue;
    const double m = multiplicity_real(l, kernel.dim());
    const double q = p * (1.0 - p);
    k2 += m * q;
    k4 += m * q * (1.0 - 6.0 * q);
  }
  const double mu4 = k4 + 3.0 * k2 * k2;
  rep.se_mean = std::sqrt(k2 / N);
  rep.se_var = std::sqrt(std::max(0.0, (mu4 - k2 * k2 * (N - 3.0) / (N - 1.0)) / N));

  const double dm = rep.mean_count - rep.theory_eta;
  const double dv = rep.var_count - rep.theory_var;
  if (rep.se_mean > 0.0) {
    rep.z_mean = dm / rep.se_mean;
    rep.z_var = rep.se_var > 0.0 ? dv / rep.se_var : (std::fabs(dv) < 1e-9 ? 0.0 : kInf);
    rep.pass = std::fabs(rep.z_mean) <= 3.0 && std::fabs(rep.z_var) <= 3.0;
  } else {
    // deterministic count (projection kernel)
    rep.z_mean = std::fabs(dm) < 1e-9 ? 0.0 : kInf;
    rep.z_var = std::fabs(dv) < 1e-9 ? 0.0 : kInf;
    rep.pass = std::fabs(dm) < 1e-9 && std::fabs(dv) < 1e-9;
  }
  return rep;
}

MonteCarloReport montecarlo_validate(const IsotropicModel& model, int replicates,
                                     std::uint64_t root_seed, int threads) {
  return montecarlo_validate(kernel_spectrum(model), replicates, root_seed, threads);
}

} // namespace spheredpp
