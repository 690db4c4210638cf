#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "spheredpp/quadrature.hpp"
#include "spheredpp/sphere.hpp"

namespace spheredpp {

/// Weights beta_l of psi(s) = sum_l beta_l cos^l s, valid on every sphere.
/// Entries past the stored prefix carry total mass at most tail_bound.
class SchoenbergSeq {
public:
  SchoenbergSeq() = default;
  explicit SchoenbergSeq(std::vector<double> beta, double tail_bound = 0.0);

  const std::vector<double>& beta() const noexcept { return beta_; }
  double operator[](std::size_t l) const { return l < beta_.size() ? beta_[l] : 0.0; }
  std::size_t size() const noexcept { return beta_.size(); }
  double tail_bound() const noexcept { return tail_; }
  /// Sum of the stored prefix.
  double mass() const;

private:
  std::vector<double> beta_;
  double tail_ = 0.0;
};

/// d-Schoenberg coefficients: psi(s) = sum_l beta_{l,d} C_l(cos s)/C_l(1)
/// with C_l the Gegenbauer polynomial of parameter (d-1)/2.
class DSchoenbergSeq {
public:
  DSchoenbergSeq(Dimension dim, std::vector<double> beta, double tail_bound = 0.0);

  Dimension dim() const noexcept { return dim_; }
  const std::vector<double>& beta() const noexcept { return beta_; }
  double operator[](std::size_t l) const { return l < beta_.size() ? beta_[l] : 0.0; }
  std::size_t size() const noexcept { return beta_.size(); }
  /// Highest stored level, -1 when empty.
  int max_level() const noexcept { return static_cast<int>(beta_.size()) - 1; }
  double tail_bound() const noexcept { return tail_; }
  double mass() const;

private:
  Dimension dim_;
  std::vector<double> beta_;
  double tail_ = 0.0;
};

enum class SpectrumKind { Correlation, Kernel, DensityKernel };

std::string_view to_string(SpectrumKind kind);
SpectrumKind spectrum_kind_from_string(std::string_view s);

/// Per-level Mercer eigenvalues; level l has multiplicity m_{l,d}.
///
/// tail_bound bounds sum_{l > L} m_{l,d} v_l for the levels that were cut off.
class MercerSpectrum {
public:
  MercerSpectrum(Dimension dim, SpectrumKind kind, std::vector<double> values,
                 double tail_bound = 0.0);

  Dimension dim() const noexcept { return dim_; }
  SpectrumKind kind() const noexcept { return kind_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t l) const { return l < values_.size() ? values_[l] : 0.0; }
  std::size_t size() const noexcept { return values_.size(); }
  int max_level() const noexcept { return static_cast<int>(values_.size()) - 1; }
  double tail_bound() const noexcept { return tail_; }

  /// sum_l m_{l,d} v_l over stored levels. For a kernel this is the expected
  /// number of points of the truncated process.
  double trace() const;
  /// Same as trace() for kind Kernel; throws for other kinds.
  double eta() const;

private:
  Dimension dim_;
  SpectrumKind kind_;
  std::vector<double> values_;
  double tail_ = 0.0;
};

/// Where to cut infinite sequences.
struct TruncationPolicy {
  int max_level = 4000;
  /// Relative mass allowed beyond the cut.
  double rel_tail = 1e-6;
};

/// Converts Schoenberg weights to d-Schoenberg coefficients for levels
/// 0..n_max. A finite input gives exact finite sums; the output tail is the
/// input tail plus the mass pushed above n_max.
DSchoenbergSeq schoenberg_to_d(const SchoenbergSeq& beta, Dimension dim, int n_max);

/// gamma^{(d)}_{n,l}: weight of level n in the expansion of cos^l s on S^d.
/// Zero unless l >= n and l - n is even.
double schoenberg_gamma(int n, int l, Dimension dim);

/// Numerical inversion of psi into d-Schoenberg coefficients 0..n_max.
/// psi must be a correlation function (psi(0) = 1). Coefficients in
/// [-1e-8, 0) are treated as roundoff and set to 0; anything more negative
/// means psi is not positive definite on S^d and raises DomainError.
DSchoenbergSeq d_schoenberg_from_psi(const std::function<double(double)>& psi, Dimension dim,
                                     int n_max, const QuadSpec& quad = {});

/// Same integrals without the sign check or normalization; used to cross
/// check and for diagnostics.
std::vector<double> d_schoenberg_integrals(const std::function<double(double)>& psi,
                                           Dimension dim, int n_max, const QuadSpec& quad = {});

/// Kernel spectrum lambda_l = eta beta_{l,d} / m_{l,d}. Throws ExistenceError
/// when some lambda exceeds 1.
MercerSpectrum mercer_from_d(const DSchoenbergSeq& beta, double eta);

/// Correlation spectrum alpha_l = sigma_d beta_{l,d} / m_{l,d}.
MercerSpectrum correlation_spectrum(const DSchoenbergSeq& beta);

struct RhoMax {
  double value;
  /// True when the infimum was only taken over the stored levels.
  bool prefix_infimum;
};

/// Largest intensity rho for which rho * psi gives an existing DPP.
/// With psi_nonnegative the level-0 term is the infimum and the result is exact.
RhoMax rho_max(const DSchoenbergSeq& beta, bool psi_nonnegative = false);

/// sigma_d * rho_max: the largest admissible expected number of points.
RhoMax eta_max(const DSchoenbergSeq& beta, bool psi_nonnegative = false);

/// lambda -> lambda / (1 - lambda). Throws ExistenceError if some lambda = 1.
MercerSpectrum to_density_kernel(const MercerSpectrum& kernel);

/// lambda~ -> lambda~ / (1 + lambda~).
MercerSpectrum to_kernel(const MercerSpectrum& density_kernel);

/// sum_l w_l C_l(cos s)/C_l(1) with C_l the Gegenbauer polynomial of parameter (d-1)/2.
double eval_gegenbauer_series(Dimension dim, std::span<const double> weights, double s);

/// psi(s) reconstructed from the stored coefficients.
double eval_psi_series(const DSchoenbergSeq& beta, double s);

/// Radial part C_0(s) = sum_l v_l m_{l,d}/sigma_d C_l(cos s)/C_l(1) of the
/// kernel with the given spectrum (any kind).
double eval_radial(const MercerSpectrum& spec, double s);

/// d-Schoenberg coefficients m_l v_l / (trace + tail): the correlation shape
/// of the kernel, with the cut-off mass carried as the tail bound.
DSchoenbergSeq shape_of(const MercerSpectrum& spec);

} // namespace spheredpp
