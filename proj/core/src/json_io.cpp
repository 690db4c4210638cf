#include "spheredpp/json_io.hpp"

#include <cmath>
#include <string>

#include "spheredpp/errors.hpp"

namespace spheredpp {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

double get_num(const json& p, const char* key) {
  if (!p.contains(key) || !p.at(key).is_number())
    throw DomainError(std::string("model params: missing numeric '") + key + "'");
  return p.at(key).get<double>();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Family family_from(const std::string& name, const json& p) {
  if (name == "multiquadric") return Multiquadric{get_num(p, "tau"), get_num(p, "delta")};
  if (name == "spectral")
    return SpectralModel{get_num(p, "alpha"), get_num(p, "beta"), get_num(p, "kappa")};
  if (name == "most_repulsive") return MostRepulsive{get_num(p, "eta")};
  if (name == "matern") return Matern{get_num(p, "nu"), get_num(p, "c")};
  if (name == "circular_matern")
    return CircularMatern{get_num(p, "sigma"), get_num(p, "nu"), get_num(p, "alpha")};
  if (name == "askey") return Askey{get_num(p, "c")};
  if (name == "c2_wendland") return C2Wendland{get_num(p, "c")};
  if (name == "c4_wendland") return C4Wendland{get_num(p, "c")};
  if (name == "spherical") return SphericalModel{get_num(p, "c")};
  throw DomainError("unknown model family '" + name + "'");
}

json params_of(const Family& f) {
  return std::visit(overloaded{
                        [](const Multiquadric& m) { return json{{"tau", m.tau}, {"delta", m.delta}}; },
                        [](const SpectralModel& m) {
                          return json{{"alpha", m.alpha}, {"beta", m.beta}, {"kappa", m.kappa}};
                        },
                        [](const MostRepulsive& m) { return json{{"eta", m.eta}}; },
                        [](const Matern& m) { return json{{"nu", m.nu}, {"c", m.c}}; },
                        [](const CircularMatern& m) {
                          return json{{"sigma", m.sigma}, {"nu", m.nu}, {"alpha", m.alpha}};
                        },
                        [](const Askey& m) { return json{{"c", m.c}}; },
                        [](const C2Wendland& m) { return json{{"c", m.c}}; },
                        [](const C4Wendland& m) { return json{{"c", m.c}}; },
                        [](const SphericalModel& m) { return json{{"c", m.c}}; },
                    },
                    f);
}

std::vector<double> values_of(const json& j) {
  if (!j.contains("values") || !j.at("values").is_array())
    throw DomainError("sequence JSON needs a 'values' array");
  return j.at("values").get<std::vector<double>>();
}

double tail_of(const json& j) { return j.value("tail_bound", 0.0); }

} // namespace

json to_json(const SchoenbergSeq& s) {
  return {{"kind", "schoenberg"}, {"dim", nullptr}, {"values", s.beta()},
          {"tail_bound", s.tail_bound()}};
}

json to_json(const DSchoenbergSeq& s) {
  return {{"kind", "d_schoenberg"}, {"dim", s.dim().value()}, {"values", s.beta()},
          {"tail_bound", s.tail_bound()}};
}

json to_json(const MercerSpectrum& s) {
  std::vector<std::uint64_t> mult;
  for (int l = 0; l <= s.max_level(); ++l) mult.push_back(multiplicity(l, s.dim()));
  json j{{"kind", std::string(to_string(s.kind()))},
         {"dim", s.dim().value()},
         {"values", s.values()},
         {"multiplicities", mult},
         {"tail_bound", s.tail_bound()},
         {"trace", s.trace()}};
  return j;
}

SchoenbergSeq schoenberg_from_json(const json& j) {
  if (j.value("kind", "") != "schoenberg") throw DomainError("expected kind 'schoenberg'");
  return SchoenbergSeq(values_of(j), tail_of(j));
}

DSchoenbergSeq dschoenberg_from_json(const json& j) {
  if (j.value("kind", "") != "d_schoenberg") throw DomainError("expected kind 'd_schoenberg'");
  return DSchoenbergSeq(Dimension(j.at("dim").get<int>()), values_of(j), tail_of(j));
}

MercerSpectrum spectrum_from_json(const json& j) {
  const auto kind = spectrum_kind_from_string(j.at("kind").get<std::string>());
  return MercerSpectrum(Dimension(j.at("dim").get<int>()), kind, values_of(j), tail_of(j));
}

IsotropicModel model_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("model JSON must be an object");
  if (j.contains("schema") && j.at("schema") != 1)
    throw DomainError("unsupported model schema " + j.at("schema").dump());
  if (!j.contains("family")) throw DomainError("model JSON needs 'family'");
  IsotropicModel m{family_from(j.at("family").get<std::string>(), j.value("params", json::object())),
                   Dimension(j.value("dim", 2))};
  const std::string mode = j.value("mode", "kernel");
  if (mode == "kernel") m.mode = Mode::Kernel;
  else if (mode == "density") m.mode = Mode::Density;
  else throw DomainError("mode must be 'kernel' or 'density'");

  if (has_psi(m.family)) {
    if (m.mode == Mode::Kernel) {
      if (j.contains("eta")) m.scale = j.at("eta").get<double>();
      else if (j.contains("rho")) m.scale = j.at("rho").get<double>() * surface_measure(m.dim);
      else throw DomainError("kernel mode needs 'rho' or 'eta'");
    } else {
      if (!j.contains("chi")) throw DomainError("density mode needs 'chi'");
      m.scale = j.at("chi").get<double>();
    }
  }
  if (j.contains("truncation")) {
    const auto& t = j.at("truncation");
    m.trunc.max_level = t.value("max_level", m.trunc.max_level);
    m.trunc.rel_tail = t.value("rel_tail", m.trunc.rel_tail);
    if (m.trunc.max_level < 0 || !(m.trunc.rel_tail > 0.0))
      throw DomainError("truncation needs max_level >= 0 and rel_tail > 0");
  }
  validate(m.family);
  return m;
}

json model_to_json(const IsotropicModel& m) {
  json j{{"schema", 1},
         {"family", family_name(m.family)},
         {"params", params_of(m.family)},
         {"mode", m.mode == Mode::Kernel ? "kernel" : "density"},
         {"dim", m.dim.value()},
         {"truncation", {{"max_level", m.trunc.max_level}, {"rel_tail", m.trunc.rel_tail}}}};
  if (has_psi(m.family)) j[m.mode == Mode::Kernel ? "eta" : "chi"] = m.scale;
  return j;
}

void set_model_param(IsotropicModel& m, const std::string& key, double value) {
  if (key == "eta" || key == "chi") {
    m.scale = value;
    return;
  }
  if (key == "rho") {
    m.scale = value * surface_measure(m.dim);
    return;
  }
  if (key == "dim") {
    m.dim = Dimension(static_cast<int>(value));
    return;
  }
  json p = params_of(m.family);
  if (!p.contains(key))
    throw DomainError("model " + family_name(m.family) + " has no parameter '" + key + "'");
  p[key] = value;
  m.family = family_from(family_name(m.family), p);
}

json to_json(const LocalRepulsiveness& r) {
  json j{{"available", r.available},
         {"slope", finite_or_null(r.slope)},
         {"slope_infinite", r.slope_infinite}};
  j["curvature"] = r.available ? json(r.curvature) : json(nullptr);
  j["remainder_bound"] = finite_or_null(r.remainder);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const RepulsivenessReport& r) {
  return {{"eta", r.eta},
          {"global_repulsiveness", r.global},
          {"count_variance", r.count_variance},
          {"local", to_json(r.local)}};
}

json to_json(const MonteCarloReport& r) {
  return {{"replicates", r.replicates}, {"mean_count", r.mean_count},
          {"var_count", r.var_count},   {"theory_eta", r.theory_eta},
          {"theory_var", r.theory_var}, {"se_mean", r.se_mean},
          {"se_var", r.se_var},         {"z_mean", finite_or_null(r.z_mean)},
          {"z_var", finite_or_null(r.z_var)}, {"pass", r.pass}};
}

json to_json(const MleResult& r) {
  return {{"chi", r.chi},
          {"zeta", r.zeta},
          {"loglik", finite_or_null(r.loglik)},
          {"score", r.score},
          {"information", r.information},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

} // namespace spheredpp
