#pragma once

#include <cstdint>
#include <vector>

#include "spheredpp/harmonics.hpp"
#include "spheredpp/models.hpp"
#include "spheredpp/rng.hpp"
#include "spheredpp/sphere.hpp"
#include "spheredpp/spectra.hpp"

namespace spheredpp {

/// Eigenfunctions kept by the Bernoulli step, with sup bounds on |Y|^2.
struct ProjectionBasis {
  Dimension dim{2};
  std::vector<HarmonicIndex> indices;
  std::vector<double> bounds;

  std::size_t size() const noexcept { return indices.size(); }
};

/// Keeps each (l, k) independently with probability lambda_l.
ProjectionBasis draw_bernoulli_basis(const MercerSpectrum& kernel, Rng& rng);

/// Basis from an explicit index list.
ProjectionBasis make_basis(Dimension dim, std::vector<HarmonicIndex> indices);

/// Envelope for the rejection step: sum over levels of
/// min(selected count * per-index bound, bound on the whole level).
double envelope_constant(const ProjectionBasis& basis);

struct SamplingStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  /// Smallest conditional density seen before clamping.
  double min_density = 0.0;
  double acceptance_rate() const {
    return proposals == 0 ? 1.0 : static_cast<double>(accepted) / proposals;
  }
};

/// Exact sample of the projection DPP onto span(basis): exactly basis.size()
/// points, drawn one at a time by rejection from the uniform law.
PointPattern sample_projection(const ProjectionBasis& basis, Rng& rng,
                               SamplingStats* stats = nullptr);

struct SampleResult {
  PointPattern pattern{Dimension(2)};
  std::uint64_t seed = 0;
  int truncation_level = 0;
  std::size_t basis_size = 0;
  double acceptance_rate = 1.0;
  double eta = 0.0;
};

/// Bernoulli step on stream "basis", projection step on stream "points".
SampleResult sample_dpp(const MercerSpectrum& kernel, std::uint64_t root_seed);

SampleResult sample_dpp(const IsotropicModel& model, std::uint64_t root_seed);

} // namespace spheredpp
