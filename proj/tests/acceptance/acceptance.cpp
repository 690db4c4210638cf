// Acceptance checks: one PASS/FAIL line per criterion.
// Exit status is the number of failing criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheredpp/diagnostics.hpp"
#include "spheredpp/errors.hpp"
#include "spheredpp/harmonics.hpp"
#include "spheredpp/likelihood.hpp"
#include "spheredpp/models.hpp"
#include "spheredpp/quadrature.hpp"
#include "spheredpp/rng.hpp"
#include "spheredpp/sampler.hpp"
#include "spheredpp/spectra.hpp"

using namespace spheredpp;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240601;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("CRITERION %2d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1: quadrature inversion reproduces delta^l (1 - delta), l <= 50
void criterion1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double delta : {0.3, 0.6, 0.9}) {
    const auto beta = d_schoenberg_from_psi(
        [delta](double s) { return multiquadric_psi(0.5, delta, s); }, Dimension(2), 50);
    for (int l = 0; l <= 50; ++l)
      worst = std::max(worst, std::fabs(beta[l] - std::pow(delta, l) * (1.0 - delta)));
  }
  const double t = seconds_since(t0);
  report(1, worst <= 1e-8 && t < 10.0,
         "max |quad - closed| = " + fmt("%.3e", worst) + ", runtime " + fmt("%.2f s", t));
}

// 2: beta_{0,2} closed form against quadrature
void criterion2() {
  double worst = 0.0;
  for (double tau : {0.5, 1.0, 2.0})
    for (double delta : {0.2, 0.74}) {
      const double q = d_schoenberg_integrals(
          [&](double s) { return multiquadric_psi(tau, delta, s); }, Dimension(2), 0)[0];
      worst = std::max(worst, std::fabs(q - multiquadric_beta02(tau, delta)));
    }
  const double q10 = d_schoenberg_integrals(
      [](double s) { return multiquadric_psi(10.0, 0.74, s); }, Dimension(2), 0)[0];
  // reference from 50-digit quadrature, computed offline
  const double ref10 = 0.00253753753753753424;
  const double e10 = std::fabs(q10 - ref10);
  report(2, worst <= 1e-8 && e10 <= 1e-8,
         "max |closed - quad| = " + fmt("%.3e", worst) + "; tau=10 delta=0.74 quad beta0 = " +
             fmt("%.15g", q10) + " (err " + fmt("%.1e", e10) + ")");
}

// 3: Schoenberg-to-d conversion vs direct inversion of cos^k
void criterion3() {
  double worst = 0.0;
  for (int k = 0; k <= 8; ++k) {
    std::vector<double> b(k + 1, 0.0);
    b[k] = 1.0;
    const SchoenbergSeq seq(b);
    for (int d = 1; d <= 3; ++d) {
      const auto conv = schoenberg_to_d(seq, Dimension(d), k + 4);
      const auto quad = d_schoenberg_integrals(
          [k](double s) { return std::pow(std::cos(s), k); }, Dimension(d), k + 4);
      for (int l = 0; l <= k + 4; ++l) worst = std::max(worst, std::fabs(conv[l] - quad[l]));
    }
  }
  report(3, worst <= 1e-10, "max |conversion - quadrature| = " + fmt("%.3e", worst));
}

// 4: projection DPPs have a constant number of points
void criterion4() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (auto [eta, d] : {std::pair{9, 2}, std::pair{5, 1}}) {
    const auto spec = most_repulsive_spectrum(eta, Dimension(d));
    std::size_t lo = 1u << 30, hi = 0;
    for (int i = 0; i < 200; ++i) {
      const auto n = sample_dpp(spec, derive_seed(kSeed, "c4:" + std::to_string(i))).pattern.size();
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    ok = ok && lo == static_cast<std::size_t>(eta) && hi == static_cast<std::size_t>(eta);
    detail += "d=" + std::to_string(d) + " eta=" + std::to_string(eta) + ": counts in [" +
              std::to_string(lo) + "," + std::to_string(hi) + "]; ";
  }
  const double t = seconds_since(t0);
  report(4, ok && t < 60.0, detail + "runtime " + fmt("%.2f s", t));
}

// 5: Monte Carlo count mean and variance
void criterion5() {
  const Dimension d2(2);
  const auto mq = mercer_from_d(multiquadric_coeffs(0.5, 0.5, d2).dschoenberg, 1.5);
  const auto r1 = montecarlo_validate(mq, 2000, derive_seed(kSeed, "c5:mq"), 1);

  const double alpha = spectral_alpha_for_eta(1.0, 2.0, d2, 50.0);
  const auto sp = spectral_model_spectrum(alpha, 1.0, 2.0, d2);
  const auto r2 = montecarlo_validate(sp, 300, derive_seed(kSeed, "c5:spectral"), 1);

  auto line = [](const char* name, const MonteCarloReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: mean %.4f vs %.4f (z=%.2f), var %.4f vs %.4f (z=%.2f); ",
                  name, r.mean_count, r.theory_eta, r.z_mean, r.var_count, r.theory_var, r.z_var);
    return std::string(buf);
  };
  report(5, r1.pass && r2.pass,
         line("multiquadric eta=1.5 N=2000", r1) + line("spectral kappa=2 eta=50 N=300", r2) +
             "alpha=" + fmt("%.6g", alpha));
}

// 6: curvature formulas
void criterion6() {
  double worst_proj = 0.0;
  for (int n = 0; n <= 10; ++n) {
    // d=1: eta = 2n+1, d=2: eta = (n+1)^2
    const double want1 = 2.0 / 3.0 * n * n + 2.0 / 3.0 * n;
    const double want2 = 0.5 * n * n + n;
    const auto c1 = local_repulsiveness(shape_of(most_repulsive_spectrum(2.0 * n + 1, Dimension(1))));
    const auto c2 =
        local_repulsiveness(shape_of(most_repulsive_spectrum((n + 1.0) * (n + 1.0), Dimension(2))));
    worst_proj = std::max(worst_proj, std::fabs(c1.curvature - want1) / std::max(1.0, want1));
    worst_proj = std::max(worst_proj, std::fabs(c2.curvature - want2) / std::max(1.0, want2));
  }

  // series pcf g0 is even in s, so (g0(h) - 2 g0(0) + g0(-h)) / h^2 = 2 g0(h) / h^2
  double worst_fd = 0.0;
  for (int d : {2, 3}) {
    const double tau = 0.5 * (d - 1);
    for (double delta : {0.3, 0.5}) {
      const auto beta =
          multiquadric_coeffs(tau, delta, Dimension(d), TruncationPolicy{4000, 1e-13}).dschoenberg;
      const auto loc = local_repulsiveness(beta);
      if (!loc.available) throw std::runtime_error("curvature series not certified: " + loc.note);
      const double h = 1e-3;
      const double r = eval_psi_series(beta, h) / eval_psi_series(beta, 0.0);
      const double g0h = (1.0 - r) * (1.0 + r);
      const double second = 2.0 * g0h / (h * h);
      worst_fd = std::max(worst_fd, std::fabs(second - loc.curvature) / loc.curvature);
    }
  }
  report(6, worst_proj <= 1e-12 && worst_fd <= 1e-3,
         "most repulsive n<=10 max rel err " + fmt("%.2e", worst_proj) +
             "; multiquadric tau=(d-1)/2 second difference max rel err " + fmt("%.2e", worst_fd));
}

// 7: eta * I = 1 for projections, <= 1 otherwise
void criterion7() {
  double worst_proj = 0.0;
  for (int n = 0; n <= 12; ++n) {
    for (int d : {1, 2}) {
      const double eta = d == 1 ? 2.0 * n + 1 : (n + 1.0) * (n + 1.0);
      const auto spec = most_repulsive_spectrum(eta, Dimension(d));
      worst_proj = std::max(worst_proj, std::fabs(eta * global_repulsiveness(spec) - 1.0));
    }
  }
  Rng rng(derive_seed(kSeed, "c7"));
  double max_ratio = -1.0;
  for (int i = 0; i < 500; ++i) {
    const int d = 1 + static_cast<int>(rng.uniform() * 2.0);
    const int L = 1 + static_cast<int>(rng.uniform() * 30.0);
    std::vector<double> lam(L + 1);
    for (auto& v : lam) v = rng.uniform() < 0.2 ? 1.0 : rng.uniform();
    const MercerSpectrum spec(Dimension(d), SpectrumKind::Kernel, lam);
    if (!(spec.eta() > 0.0)) continue;
    max_ratio = std::max(max_ratio, spec.eta() * global_repulsiveness(spec));
  }
  report(7, worst_proj <= 4.0 * std::numeric_limits<double>::epsilon() && max_ratio <= 1.0,
         "projection max |eta I - 1| = " + fmt("%.2e", worst_proj) +
             "; 500 random spectra max eta I = " + fmt("%.15g", max_ratio));
}

// 8: level 0 carries the largest eigenvalue for nonnegative mixtures of cos^l
void criterion8() {
  Rng rng(derive_seed(kSeed, "c8"));
  double worst_gap = std::numeric_limits<double>::infinity();
  int rejected = 0;
  for (int i = 0; i < 20;) {
    const int L = 1 + static_cast<int>(rng.uniform() * 12.0);
    std::vector<double> w(L + 1);
    double tot = 0.0;
    for (auto& v : w) tot += (v = rng.uniform());
    for (auto& v : w) v /= tot;
    auto psi = [w](double s) {
      const double c = std::cos(s);
      double acc = 0.0;
      for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * c + *it;
      return acc;
    };
    // the claim is about nonnegative-valued psi; odd powers can make psi < 0 near pi
    bool nonneg = true;
    for (int j = 0; j <= 2000 && nonneg; ++j) nonneg = psi(kPi * j / 2000.0) >= 0.0;
    if (!nonneg) {
      ++rejected;
      continue;
    }
    ++i;
    for (int d : {2, 3}) {
      const auto b = d_schoenberg_integrals(psi, Dimension(d), 30);
      const double a0 = b[0];
      for (int l = 1; l <= 30; ++l)
        worst_gap = std::min(worst_gap, a0 - b[l] / multiplicity_real(l, Dimension(d)));
    }
  }
  report(8, worst_gap > 0.0,
         "min over 20 mixtures of alpha_0 - alpha_l = " + fmt("%.3e", worst_gap) + " (" +
             std::to_string(rejected) + " sign-changing draws skipped)");
}

// 9: maximum likelihood
void criterion9() {
  // single level l0 = 2 on S^2: score n - m a chi / (1 + a chi) = 0
  const Dimension d2(2);
  ScaledFitSpec single;
  single.dim = d2;
  const double a = 0.37;
  single.alpha = {0.0, 0.0, a};
  single.psi = [](double s) {
    const double x = std::cos(s);
    return 0.5 * (3.0 * x * x - 1.0);
  };
  Rng prng(derive_seed(kSeed, "c9:points"));
  PointPattern three(d2);
  for (int i = 0; i < 3; ++i) three.add(sample_uniform(d2, prng));
  const double chi_star = 3.0 / (a * (5.0 - 3.0));
  const auto fit1 = newton_mle(three, single);
  const double err1 = std::fabs(fit1.chi - chi_star) / chi_star;

  // simulated data from the density-kernel model chi * psi
  IsotropicModel model{Multiquadric{1.0, 0.5}, d2, Mode::Density, 20.0};
  const auto spec = scaled_fit_spec(model.family, d2);
  int max_it = 0;
  double max_score = 0.0, min_info = std::numeric_limits<double>::infinity();
  double fd_worst = 0.0;
  bool all_converged = true;
  for (int r = 0; r < 10; ++r) {
    const auto sim = sample_dpp(model, derive_seed(kSeed, "c9:sim:" + std::to_string(r)));
    if (sim.pattern.size() < 2) continue;
    MleResult fit;
    try {
      fit = newton_mle(sim.pattern, spec);
    } catch (const ConvergenceError&) {
      all_converged = false;
      continue;
    }
    max_it = std::max(max_it, fit.iterations);
    max_score = std::max(max_score, std::fabs(fit.score));
    min_info = std::min(min_info, fit.information);

    // finite differences at a point away from the optimum
    const double logdet = log_det_psi(sim.pattern, spec.psi);
    const std::size_t n = sim.pattern.size();
    const double z = fit.zeta + 0.7, h = 1e-4;
    const auto c = loglik_score_info(n, logdet, spec, z);
    const auto p = loglik_score_info(n, logdet, spec, z + h);
    const auto m = loglik_score_info(n, logdet, spec, z - h);
    const double fd_score = (p.loglik - m.loglik) / (2.0 * h);
    const double fd_info = -(p.score - m.score) / (2.0 * h);
    fd_worst = std::max(fd_worst, std::fabs(fd_score - c.score) / std::max(1.0, std::fabs(c.score)));
    fd_worst = std::max(fd_worst, std::fabs(fd_info - c.information) / c.information);
  }
  const bool ok = err1 <= 1e-10 && all_converged && max_it <= 30 && max_score < 1e-10 &&
                  min_info > 0.0 && fd_worst <= 1e-6;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "single-level rel err %.2e; simulated fits: max iterations %d, max |score| %.1e, "
                "min information %.3g, finite-difference rel err %.2e",
                err1, max_it, max_score, min_info, fd_worst);
  report(9, ok, buf);
}

// 10: addition formula, orthonormality, and the printed per-order bound
void criterion10() {
  Rng rng(derive_seed(kSeed, "c10"));
  const Dimension d1(1), d2(2);
  // addition formula: sum_k Y_lk(x) conj(Y_lk(y)) = (2l+1)/(4 pi) P_l(x.y)
  double add_err = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto x = sample_uniform(d2, rng), y = sample_uniform(d2, rng);
    const auto ux = x.unit_vector(), uy = y.unit_vector();
    const double dot = std::clamp(ux[0] * uy[0] + ux[1] * uy[1] + ux[2] * uy[2], -1.0, 1.0);
    for (int l = 0; l <= 20; ++l) {
      std::complex<double> s = 0.0;
      for (int k : index_set(l, d2))
        s += spherical_harmonic(d2, {l, k}, x) * std::conj(spherical_harmonic(d2, {l, k}, y));
      const double want = (2.0 * l + 1.0) / (4.0 * kPi) * std::legendre(l, dot);
      add_err = std::max(add_err, std::abs(s - want));
    }
  }
  // orthonormality on S^2: Gauss-Legendre in cos(theta), trapezoid in phi
  double orth_err = 0.0;
  const int L = 8, nt = 24, np = 2 * L + 2;
  const auto gl = gauss_legendre(nt);
  std::vector<HarmonicIndex> idx;
  for (int l = 0; l <= L; ++l)
    for (int k : index_set(l, d2)) idx.push_back({l, k});
  std::vector<std::complex<double>> gram(idx.size() * idx.size());
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j) {
      const auto p = SpherePoint::on_sphere(std::acos(gl->nodes[i]), 2.0 * kPi * j / np);
      const double w = gl->weights[i] * 2.0 * kPi / np;
      std::vector<std::complex<double>> v(idx.size());
      for (std::size_t a = 0; a < idx.size(); ++a) v[a] = spherical_harmonic(d2, idx[a], p);
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
          gram[a * idx.size() + b] += w * v[a] * std::conj(v[b]);
    }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      orth_err = std::max(orth_err, std::abs(gram[a * idx.size() + b] - (a == b ? 1.0 : 0.0)));
  // orthonormality on S^1
  for (int l1 = 0; l1 <= 6; ++l1)
    for (int k1 : index_set(l1, d1))
      for (int l2 = 0; l2 <= 6; ++l2)
        for (int k2 : index_set(l2, d1)) {
          std::complex<double> s = 0.0;
          const int n = 32;
          for (int j = 0; j < n; ++j) {
            const auto p = SpherePoint::on_circle(2.0 * kPi * j / n);
            s += spherical_harmonic(d1, {l1, k1}, p) * std::conj(spherical_harmonic(d1, {l2, k2}, p));
          }
          s *= 2.0 * kPi / n;
          const bool same = l1 == l2 && k1 == k2;
          orth_err = std::max(orth_err, std::abs(s - (same ? 1.0 : 0.0)));
        }

  // printed bound |Y_lk|^2 <= (2l+1)/(4 pi) (l-|k|)!/(l+|k|)!
  long violations = 0;
  double worst_ratio = 0.0;
  for (int t = 0; t < 100000; ++t) {
    const int l = static_cast<int>(rng.uniform() * 21.0);
    const int k = -l + static_cast<int>(rng.uniform() * (2.0 * l + 1.0));
    const auto x = sample_uniform(d2, rng);
    const double y2 = std::norm(spherical_harmonic(d2, {l, k}, x));
    const double bound = scaled_harmonic_sq_bound({l, k});
    if (y2 > bound * (1.0 + 1e-12)) ++violations;
    worst_ratio = std::max(worst_ratio, y2 / bound);
  }
  const bool ok = add_err <= 1e-12 && orth_err <= 1e-12 && violations == 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "addition formula err %.1e, orthonormality err %.1e; per-order bound violated in "
                "%ld of 100000 evaluations (max |Y|^2/bound = %.3g)",
                add_err, orth_err, violations, worst_ratio);
  report(10, ok, buf);
}

// 11: pcf curves for the multiquadric at eta_max = 400
void criterion11() {
  const auto t0 = Clock::now();
  const double d1 = multiquadric_delta_for_eta_max(1.0, 400.0);
  const double d10 = multiquadric_delta_for_eta_max(10.0, 400.0);
  auto g = [](double tau, double delta, double s) {
    const double r = multiquadric_psi(tau, delta, s);
    return 1.0 - r * r;
  };
  bool monotone = true, zero = true;
  for (auto [tau, delta] : {std::pair{1.0, d1}, std::pair{10.0, d10}}) {
    zero = zero && std::fabs(g(tau, delta, 0.0)) <= 1e-12;
    double prev = -1.0;
    for (int i = 0; i <= 4000; ++i) {
      const double v = g(tau, delta, kPi / 8.0 * i / 4000.0);
      if (v < prev - 1e-14) monotone = false;
      prev = v;
    }
  }
  int below = 0;
  double worst = 0.0, worst_s = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double s = 0.1 * i / 1000.0;
    const double diff = g(10.0, d10, s) - g(1.0, d1, s);
    if (diff < 0.0) ++below;
    if (diff < worst) {
      worst = diff;
      worst_s = s;
    }
  }
  const double t = seconds_since(t0);
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "delta(tau=1)=%.6f delta(tau=10)=%.6f; monotone on [0,pi/8]: %s; g0(0)=0: %s; "
                "tau=10 above tau=1 on (0,0.1]: %s (below at %d of 1000 grid points, largest gap "
                "%.4f at s=%.3f); runtime %.2f s",
                d1, d10, monotone ? "yes" : "no", zero ? "yes" : "no", below == 0 ? "yes" : "no",
                below, -worst, worst_s, t);
  report(11, monotone && zero && below == 0 && t < 60.0, buf);
}

} // namespace

int main() {
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7, criterion8,
                                               criterion9, criterion10, criterion11};
  for (std::size_t i = 0; i < all.size(); ++i) {
    try {
      all[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, all.size());
  return failures;
}
