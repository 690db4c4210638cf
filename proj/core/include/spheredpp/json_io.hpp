#pragma once

#include <nlohmann/json.hpp>

#include "spheredpp/diagnostics.hpp"
#include "spheredpp/likelihood.hpp"
#include "spheredpp/models.hpp"
#include "spheredpp/sampler.hpp"
#include "spheredpp/spectra.hpp"

namespace spheredpp {

using json = nlohmann::json;

/// Sequences carry `kind`, `dim` (null for Schoenberg), `values`, `tail_bound`.
json to_json(const SchoenbergSeq& s);
json to_json(const DSchoenbergSeq& s);
json to_json(const MercerSpectrum& s);

SchoenbergSeq schoenberg_from_json(const json& j);
DSchoenbergSeq dschoenberg_from_json(const json& j);
MercerSpectrum spectrum_from_json(const json& j);

/// Model files:
/// {"schema": 1, "family": "...", "params": {...}, "mode": "kernel"|"density",
///  "rho"|"eta"|"chi": ..., "dim": 1|2, "truncation": {"max_level", "rel_tail"}}.
/// In kernel mode "rho" is converted to eta = sigma_d rho.
IsotropicModel model_from_json(const json& j);
json model_to_json(const IsotropicModel& m);

/// Sets one scalar parameter by name: a key of "params", or rho/eta/chi/dim.
void set_model_param(IsotropicModel& m, const std::string& key, double value);

json to_json(const LocalRepulsiveness& r);
json to_json(const RepulsivenessReport& r);
json to_json(const MonteCarloReport& r);
json to_json(const MleResult& r);

} // namespace spheredpp
