#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "spheredpp/sphere.hpp"

namespace spheredpp {

/// Gegenbauer polynomial C_l^{(lam)}(x) by the three-term recurrence.
/// lam = 0 follows the convention C_l^{(0)}(x) = cos(l arccos x).
double gegenbauer(int l, double lam, double x);

/// C_0 .. C_L at x in one pass.
std::vector<double> gegenbauer_levels(int L, double lam, double x);

/// C_l^{(lam)}(1) = Gamma(l + 2 lam) / (l! Gamma(2 lam)); 1 when lam = 0.
double gegenbauer_at_one(int l, double lam);

/// C_l(x) / C_l(1) for l = 0..L. Uses the recurrence written for the
/// normalized polynomials, so nothing overflows for large l or lam.
std::vector<double> gegenbauer_normalized_levels(int L, double lam, double x);

/// Associated Legendre function P_l^{(m)}(x) with the Condon-Shortley phase.
/// Negative m uses P_l^{(-m)} = (-1)^m (l-m)!/(l+m)! P_l^{(m)}.
double assoc_legendre(int l, int m, double x);

/// Fully normalized sqrt((2l+1)/(4pi) (l-m)!/(l+m)!) P_l^{(m)}(x) for all
/// 0 <= m <= l <= L, stored at index l(l+1)/2 + m.
std::vector<double> normalized_legendre_table(int L, double x);

inline std::size_t legendre_table_index(int l, int m) {
  return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
}

/// (l, k) with k in the index set K_{l,d}.
struct HarmonicIndex {
  int level = 0;
  int order = 0;
  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;
};

/// Orders k available at level l: d = 1 gives {0} or {-1, 1}; d = 2 gives -l..l.
std::vector<int> index_set(int l, Dimension dim);

bool is_valid_index(const HarmonicIndex& idx, Dimension dim);

/// Complex eigenfunction Y_{l,k,d}. d = 1: exp(i k l theta)/sqrt(2pi).
/// Throws DimensionError for d >= 3.
std::complex<double> spherical_harmonic(Dimension dim, const HarmonicIndex& idx,
                                        const SpherePoint& x);

/// Number of linearly independent harmonics of degree l on S^d.
std::uint64_t multiplicity(int l, Dimension dim);

/// Same value as a double; works where the integer would overflow.
double multiplicity_real(int l, Dimension dim);

/// log((l-k)!/(l+k)!) for 0 <= k <= l.
double log_factorial_ratio(int l, int k);

/// (l-k)!/(l+k)!; exact product for l <= 30, log space above.
double factorial_ratio(int l, int k);

/// Upper bound on |Y_{l,k,d}|^2 over the sphere.
/// d = 1: 1/(2pi). d = 2: (2l+1)/(4pi), which also bounds the sum over the
/// whole level by the addition formula.
double harmonic_sq_bound(Dimension dim, const HarmonicIndex& idx);

/// The factorial-scaled form (2l+1)/(4pi) (l-|k|)!/(l+|k|)! for d = 2.
/// Kept for comparison only: it is exceeded for k != 0 (for example
/// l = 2, k = 1 near colatitude pi/4) and must not be used as an envelope.
double scaled_harmonic_sq_bound(const HarmonicIndex& idx);

} // namespace spheredpp
