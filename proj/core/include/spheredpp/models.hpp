#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "spheredpp/spectra.hpp"

namespace spheredpp {

/// psi(s) = (1-delta)^{2tau} / (1 + delta^2 - 2 delta cos s)^tau.
struct Multiquadric {
  double tau;
  double delta;
};

/// lambda_l = 1 / (1 + beta exp((l/alpha)^kappa)).
struct SpectralModel {
  double alpha;
  double beta;
  double kappa;
};

/// Eigenvalues filled to 1 level by level until the mean count is eta.
struct MostRepulsive {
  double eta;
};

/// Matern correlation in geodesic distance, nu in (0, 1/2].
struct Matern {
  double nu;
  double c;
};

/// lambda_l = sigma^2 / (alpha^2 + l^2)^{nu + 1/2}, circle only.
struct CircularMatern {
  double sigma;
  double nu;
  double alpha;
};

/// (1 - s/c)_+^3.
struct Askey {
  double c;
};

/// (1 - s/c)_+^4 (4 s/c + 1).
struct C2Wendland {
  double c;
};

/// (1/3) (1 - s/c)_+^6 (35 (s/c)^2 + 18 s/c + 3).
struct C4Wendland {
  double c;
};

/// (1 + s/(2c)) (1 - s/c)_+^2.
struct SphericalModel {
  double c;
};

using Family = std::variant<Multiquadric, SpectralModel, MostRepulsive, Matern, CircularMatern,
                            Askey, C2Wendland, C4Wendland, SphericalModel>;

std::string family_name(const Family& f);

/// Throws DomainError when a parameter is outside its range.
void validate(const Family& f);

/// True for families defined through a correlation function psi (as opposed
/// to a spectrum given directly).
bool has_psi(const Family& f);

/// Closed-form psi for the psi-based families.
std::function<double(double)> psi_function(const Family& f);

/// Kernel mode: C_0 = rho psi, parameterized by eta = sigma_d rho.
/// Density mode: the density kernel is chi psi.
enum class Mode { Kernel, Density };

struct IsotropicModel {
  Family family;
  Dimension dim{2};
  Mode mode = Mode::Kernel;
  /// eta in kernel mode, chi in density mode. Unused by the spectral,
  /// most-repulsive and circular Matern families.
  double scale = 1.0;
  TruncationPolicy trunc{};
};

// multiquadric

double multiquadric_psi(double tau, double delta, double s);

/// Negative binomial parameter p = 2 delta / (1 + delta^2).
double multiquadric_p(double delta);

/// Closed form of the level-0 coefficient on S^2.
double multiquadric_beta02(double tau, double delta);

struct MultiquadricCoeffs {
  SchoenbergSeq schoenberg;
  DSchoenbergSeq dschoenberg;
};

/// Negative binomial Schoenberg weights cut where the survival is below
/// trunc.rel_tail, and the d-Schoenberg coefficients: exact when
/// tau = (d-1)/2, through the gamma conversion otherwise. On S^2 the level-0
/// coefficient is replaced by the closed form.
MultiquadricCoeffs multiquadric_coeffs(double tau, double delta, Dimension dim,
                                       const TruncationPolicy& trunc = {});

/// delta in (0,1) such that the S^2 eta_max equals the target (> 1).
double multiquadric_delta_for_eta_max(double tau, double eta_max);

// spectral families

MercerSpectrum spectral_model_spectrum(double alpha, double beta, double kappa, Dimension dim,
                                       const TruncationPolicy& trunc = {});

/// alpha giving expected count eta at fixed beta and kappa.
double spectral_alpha_for_eta(double beta, double kappa, Dimension dim, double eta,
                              const TruncationPolicy& trunc = {});

/// Level n where the spectrum of the most repulsive DPP with mean eta is cut.
int most_repulsive_level(double eta, Dimension dim);

MercerSpectrum most_repulsive_spectrum(double eta, Dimension dim);

std::function<double(double)> matern_psi(double nu, double c);

/// Closed-form 1-Schoenberg coefficients of exp(-s/c) on the circle.
DSchoenbergSeq exponential_circle_coeffs(double c, int n_max);

MercerSpectrum circular_matern_spectrum(double sigma, double nu, double alpha,
                                        const TruncationPolicy& trunc = {});

// compactly supported families on the circle

enum class CompactFamily { Askey, C2Wendland, C4Wendland, Spherical };

std::function<double(double)> compact_support_psi(CompactFamily variant, double c);

/// 1-Schoenberg coefficients 0..n_max. Askey and Wendland use the closed
/// forms (moment series for c l < 5) when c <= pi and quadrature otherwise;
/// Spherical always uses quadrature.
DSchoenbergSeq compact_support_coeffs(CompactFamily variant, double c, int n_max);

// resolution of a model to spectra

/// d-Schoenberg coefficients of psi for the psi-based families.
DSchoenbergSeq model_dschoenberg(const Family& f, Dimension dim,
                                 const TruncationPolicy& trunc = {});

/// Kernel spectrum of the DPP described by the model (existence checked).
MercerSpectrum kernel_spectrum(const IsotropicModel& model);

/// Largest admissible eta for a psi-based family.
RhoMax model_eta_max(const Family& f, Dimension dim, const TruncationPolicy& trunc = {});

} // namespace spheredpp
