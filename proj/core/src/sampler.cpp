#include "spheredpp/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>

#include "spheredpp/errors.hpp"

namespace spheredpp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kMaxProposalsPerPoint = 10'000'000;

double level_cap(Dimension dim, int l) {
  if (dim.value() == 1) return (l == 0 ? 1.0 : 2.0) / (2.0 * kPi);
  return (2.0 * l + 1.0) / (4.0 * kPi);
}

// Fills v with Y_i(x) for every basis function.
class Evaluator {
public:
  explicit Evaluator(const ProjectionBasis& b) : basis_(b) {
    for (const auto& i : b.indices) max_level_ = std::max(max_level_, i.level);
  }

  void operator()(const SpherePoint& x, Eigen::VectorXcd& v) const {
    const auto& idx = basis_.indices;
    if (basis_.dim.value() == 1) {
      const double c = 1.0 / std::sqrt(2.0 * kPi);
      for (std::size_t i = 0; i < idx.size(); ++i)
        v[i] = std::polar(c, static_cast<double>(idx[i].order) * idx[i].level * x.theta());
      return;
    }
    const auto table = normalized_legendre_table(max_level_, std::cos(x.theta()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const int k = std::abs(idx[i].order);
      std::complex<double> y =
          table[legendre_table_index(idx[i].level, k)] * std::polar(1.0, k * x.phi());
      if (idx[i].order < 0) y = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
      v[i] = y;
    }
  }

private:
  const ProjectionBasis& basis_;
  int max_level_ = 0;
};

} // namespace

ProjectionBasis make_basis(Dimension dim, std::vector<HarmonicIndex> indices) {
  if (!dim.has_points()) throw DimensionError("sampling is implemented for d in {1,2}");
  ProjectionBasis b;
  b.dim = dim;
  b.bounds.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (!is_valid_index(indices[i], dim)) throw DomainError("invalid harmonic index in basis");
    for (std::size_t j = 0; j < i; ++j)
      if (indices[j] == indices[i]) throw DomainError("repeated harmonic index in basis");
    b.bounds.push_back(harmonic_sq_bound(dim, indices[i]));
  }
  b.indices = std::move(indices);
  return b;
}

ProjectionBasis draw_bernoulli_basis(const MercerSpectrum& kernel, Rng& rng) {
  if (kernel.kind() != SpectrumKind::Kernel) throw DomainError("expected a kernel spectrum");
  const Dimension dim = kernel.dim();
  if (!dim.has_points()) throw DimensionError("sampling is implemented for d in {1,2}");
  std::vector<HarmonicIndex> chosen;
  for (int l = 0; l <= kernel.max_level(); ++l) {
    const double lam = std::min(1.0, kernel[l]);
    if (lam <= 0.0) continue;
    for (int k : index_set(l, dim))
      if (rng.bernoulli(lam)) chosen.push_back({l, k});
  }
  return make_basis(dim, std::move(chosen));
}

double envelope_constant(const ProjectionBasis& basis) {
  std::map<int, double> per_level;
  for (std::size_t i = 0; i < basis.size(); ++i) per_level[basis.indices[i].level] += basis.bounds[i];
  double m = 0.0;
  for (const auto& [l, s] : per_level) m += std::min(s, level_cap(basis.dim, l));
  return m;
}

PointPattern sample_projection(const ProjectionBasis& basis, Rng& rng, SamplingStats* stats) {
  const Dimension dim = basis.dim;
  if (!dim.has_points()) throw DimensionError("sampling is implemented for d in {1,2}");
  PointPattern out(dim);
  const auto n = static_cast<Eigen::Index>(basis.size());
  SamplingStats local;
  SamplingStats& st = stats ? *stats : local;
  if (n == 0) return out;

  const Evaluator eval(basis);
  const double M = envelope_constant(basis);
  Eigen::MatrixXcd E(n, n);
  Eigen::VectorXcd v(n), w(n);

  for (Eigen::Index j = 0; j < n; ++j) {
    std::uint64_t tries = 0;
    for (;;) {
      if (++tries > kMaxProposalsPerPoint)
        throw SamplingError("rejection cap exceeded while placing point " + std::to_string(j));
      ++st.proposals;
      const SpherePoint x = sample_uniform(dim, rng);
      const double u = rng.uniform();
      eval(x, v);
      const double norm2 = v.squaredNorm();
      if (norm2 > M * (1.0 + 1e-12))
        throw SamplingError("envelope violated: |v|^2 = " + std::to_string(norm2) +
                            " > M = " + std::to_string(M));
      if (u * M > norm2) continue;
      double q = norm2;
      if (j > 0) {
        const auto Ej = E.leftCols(j);
        q = norm2 - (Ej.adjoint() * v).squaredNorm();
      }
      st.min_density = std::min(st.min_density, q);
      if (q < -1e-9) throw SamplingError("negative conditional density " + std::to_string(q));
      if (u * M > q) continue;

      // new direction: residual of v, orthogonalized twice
      w = v;
      if (j > 0) {
        const auto Ej = E.leftCols(j);
        w -= Ej * (Ej.adjoint() * w);
        w -= Ej * (Ej.adjoint() * w);
      }
      const double nw = w.norm();
      if (!(nw > 0.0)) continue;
      E.col(j) = w / nw;
      out.add(x);
      ++st.accepted;
      break;
    }
  }
  return out;
}

SampleResult sample_dpp(const MercerSpectrum& kernel, std::uint64_t root_seed) {
  Rng basis_rng = Rng::stream(root_seed, "basis");
  Rng point_rng = Rng::stream(root_seed, "points");
  const auto basis = draw_bernoulli_basis(kernel, basis_rng);
  SamplingStats st;
  SampleResult r;
  r.pattern = sample_projection(basis, point_rng, &st);
  r.seed = root_seed;
  r.truncation_level = kernel.max_level();
  r.basis_size = basis.size();
  r.acceptance_rate = st.acceptance_rate();
  r.eta = kernel.eta();
  return r;
}

SampleResult sample_dpp(const IsotropicModel& model, std::uint64_t root_seed) {
  if (!model.dim.has_points()) throw DimensionError("sampling is implemented for d in {1,2}");
  return sample_dpp(kernel_spectrum(model), root_seed);
}

} // namespace spheredpp
