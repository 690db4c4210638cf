#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spheredpp/diagnostics.hpp"
#include "spheredpp/errors.hpp"
#include "spheredpp/harmonics.hpp"
#include "spheredpp/json_io.hpp"
#include "spheredpp/likelihood.hpp"
#include "spheredpp/sampler.hpp"
#include "spheredpp/sphere.hpp"

namespace spheredpp::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model_path;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::string what = "kernel";
  int grid = 512;
  double s_max = 3.141592653589793;
  std::string points_path;
  std::optional<double> chi;
  std::optional<double> zeta0;
  double tol = 1e-10;
  int max_iter = 100;
  int reps = 100;
  int threads = 0;
  std::string hemisphere = "north";
};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int default_threads() {
  if (const char* env = std::getenv("SPHEREDPP_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

IsotropicModel load_model(const Options& o) {
  std::ifstream in(o.model_path);
  if (!in) throw std::runtime_error("cannot open model file '" + o.model_path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("model file '" + o.model_path + "': " + e.what());
  }
  IsotropicModel m = model_from_json(j);
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
    } catch (const std::exception&) {
      throw UsageError("--param value is not a number: '" + kv + "'");
    }
    set_model_param(m, kv.substr(0, eq), v);
  }
  validate(m.family);
  return m;
}

PointPattern load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern file '" + path + "'");
  return read_pattern_csv(in);
}

// Writes to --out when given, else to the command's stdout stream.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + o.out + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + o.out + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string sidecar_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".meta.json");
  return p.string();
}

void cmd_coeffs(const Options& o, std::ostream& out) {
  const auto model = load_model(o);
  MercerSpectrum spec = kernel_spectrum(model);
  if (o.what == "density_kernel") spec = to_density_kernel(spec);

  if (o.what == "d_schoenberg") {
    const DSchoenbergSeq beta = has_psi(model.family) && model.mode == Mode::Kernel
                                    ? model_dschoenberg(model.family, model.dim, model.trunc)
                                    : shape_of(spec);
    if (o.format == "csv") {
      std::string s = "l,value\n";
      for (std::size_t l = 0; l < beta.size(); ++l)
        s += std::to_string(l) + "," + fmt17(beta[l]) + "\n";
      emit(o, out, s);
    } else {
      emit(o, out, dump(to_json(beta)));
    }
    return;
  }

  if (o.format == "csv") {
    std::string s = "l,multiplicity,value\n";
    for (int l = 0; l <= spec.max_level(); ++l)
      s += std::to_string(l) + "," + std::to_string(multiplicity(l, spec.dim())) + "," +
           fmt17(spec[l]) + "\n";
    emit(o, out, s);
    return;
  }
  json j = to_json(spec);
  if (spec.kind() == SpectrumKind::Kernel) j["eta"] = spec.eta();
  emit(o, out, dump(j));
}

void cmd_simulate(const Options& o) {
  const auto model = load_model(o);
  if (!model.dim.has_points()) throw DimensionError("simulation needs d in {1,2}");
  const auto res = sample_dpp(model, o.seed);
  std::ostringstream csv;
  write_pattern_csv(csv, res.pattern);
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + o.out + "'");
  f << csv.str();

  json meta{{"seed", o.seed},
            {"model", model_to_json(model)},
            {"points", res.pattern.size()},
            {"basis_size", res.basis_size},
            {"truncation_level", res.truncation_level},
            {"acceptance_rate", res.acceptance_rate},
            {"eta", res.eta}};
  std::ofstream m(sidecar_path(o.out), std::ios::binary);
  if (!m) throw std::runtime_error("cannot write sidecar for '" + o.out + "'");
  m << dump(meta);
}

void cmd_pcf(const Options& o, std::ostream& out) {
  const auto model = load_model(o);
  const auto r0 = model_correlation(model);
  std::string s = "s,g0\n";
  for (const auto& p : pcf_curve(r0, o.grid, o.s_max)) s += fmt17(p.s) + "," + fmt17(p.g0) + "\n";
  emit(o, out, s);
}

void cmd_repulsiveness(const Options& o, std::ostream& out) {
  const auto model = load_model(o);
  emit(o, out, dump(to_json(repulsiveness_report(model))));
}

ScaledFitSpec fit_spec(const IsotropicModel& model) {
  if (!has_psi(model.family))
    throw DomainError("fitting needs a family given by a correlation function, not '" +
                      family_name(model.family) + "'");
  return scaled_fit_spec(model.family, model.dim, model.trunc);
}

void cmd_loglik(const Options& o, std::ostream& out) {
  const auto model = load_model(o);
  const auto pattern = load_points(o.points_path);
  double chi = 0.0;
  if (o.chi) chi = *o.chi;
  else if (model.mode == Mode::Density) chi = model.scale;
  else throw UsageError("loglik needs --chi or a density-mode model");
  if (!(chi > 0.0)) throw DomainError("chi must be > 0");
  const auto spec = fit_spec(model);
  const auto v = loglik_score_info(pattern, spec, std::log(chi));
  json j{{"n", pattern.size()},
         {"chi", chi},
         {"zeta", std::log(chi)},
         {"loglik", std::isfinite(v.loglik) ? json(v.loglik) : json(nullptr)},
         {"score", v.score},
         {"information", v.information}};
  emit(o, out, dump(j));
}

void cmd_mle(const Options& o, std::ostream& out) {
  const auto model = load_model(o);
  const auto pattern = load_points(o.points_path);
  MleOptions opt;
  opt.tol = o.tol;
  opt.max_iter = o.max_iter;
  opt.zeta0 = o.zeta0;
  const auto r = newton_mle(pattern, fit_spec(model), opt);
  json j = to_json(r);
  j["n"] = pattern.size();
  emit(o, out, dump(j));
}

void cmd_validate(const Options& o, std::ostream& out) {
  const auto model = load_model(o);
  const int threads = o.threads > 0 ? o.threads : default_threads();
  const auto rep = montecarlo_validate(model, o.reps, o.seed, threads);
  json j = to_json(rep);
  j["seed"] = o.seed;
  emit(o, out, dump(j));
}

void cmd_render(const Options& o, std::ostream& out) {
  const auto pattern = load_points(o.points_path);
  if (pattern.dim().value() != 2) throw DimensionError("render needs a pattern on S^2");
  const bool north = o.hemisphere == "north";
  const double kHalfPi = 1.5707963267948966;
  const double scale = 1.0 / std::sqrt(2.0);  // 2 sin(pi/4) maps to 1
  std::string s = "u,v,hemisphere\n";
  for (const auto& p : pattern) {
    if (north ? p.theta() > kHalfPi : p.theta() < kHalfPi) continue;
    const auto q = equal_area_project(p, north ? Hemisphere::North : Hemisphere::South);
    s += fmt17(q.u * scale) + "," + fmt17(q.v * scale) + "," + o.hemisphere + "\n";
  }
  emit(o, out, s);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isotropic determinantal point processes on the circle and the sphere"};
  app.name("spheredpp");
  app.require_subcommand(1);
  Options o;

  auto model_opts = [&](CLI::App* sub) {
    sub->add_option("--model", o.model_path, "model JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--param", o.params, "override a scalar parameter, key=value")
        ->allow_extra_args(false);
  };

  auto* coeffs = app.add_subcommand("coeffs", "spectrum or d-Schoenberg coefficients");
  model_opts(coeffs);
  coeffs->add_option("--what", o.what, "kernel | density_kernel | d_schoenberg")
      ->check(CLI::IsMember({"kernel", "density_kernel", "d_schoenberg"}));
  coeffs->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  coeffs->add_option("--out", o.out, "output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "exact simulation; CSV plus <stem>.meta.json");
  model_opts(simulate);
  simulate->add_option("--seed", o.seed, "root seed");
  simulate->add_option("--out", o.out, "pattern CSV")->required();

  auto* pcf = app.add_subcommand("pcf", "pair correlation curve as CSV (s,g0)");
  model_opts(pcf);
  pcf->add_option("--grid", o.grid, "number of distances")->check(CLI::Range(2, 10000000));
  pcf->add_option("--smax", o.s_max, "largest distance")->check(CLI::Range(1e-12, 3.141592653589793));
  pcf->add_option("--out", o.out, "output file (default stdout)");

  auto* rep = app.add_subcommand("repulsiveness", "global and local repulsiveness report (JSON)");
  model_opts(rep);
  rep->add_option("--out", o.out, "output file (default stdout)");

  auto* loglik = app.add_subcommand("loglik", "log-likelihood, score and information at chi");
  model_opts(loglik);
  loglik->add_option("--points", o.points_path, "pattern CSV")->required()->check(CLI::ExistingFile);
  loglik->add_option("--chi", o.chi, "density-kernel scale (default: model chi)");
  loglik->add_option("--out", o.out, "output file (default stdout)");

  auto* mle = app.add_subcommand("mle", "maximum likelihood estimate of chi (JSON)");
  model_opts(mle);
  mle->add_option("--points", o.points_path, "pattern CSV")->required()->check(CLI::ExistingFile);
  mle->add_option("--zeta0", o.zeta0, "starting log chi");
  mle->add_option("--tol", o.tol, "score tolerance")->check(CLI::PositiveNumber);
  mle->add_option("--max-iter", o.max_iter, "Newton iteration cap")->check(CLI::Range(1, 100000));
  mle->add_option("--out", o.out, "output file (default stdout)");

  auto* validate = app.add_subcommand("validate", "Monte Carlo check of count mean and variance");
  model_opts(validate);
  validate->add_option("--seed", o.seed, "root seed");
  validate->add_option("--reps", o.reps, "replicates")->check(CLI::Range(2, 100000000));
  validate->add_option("--threads", o.threads, "worker threads (default $SPHEREDPP_THREADS or 1)")
      ->check(CLI::Range(1, 1024));
  validate->add_option("--out", o.out, "output file (default stdout)");

  auto* render = app.add_subcommand("render", "equal-area projection plot data (u,v,hemisphere)");
  render->add_option("--points", o.points_path, "pattern CSV on S^2")->required()->check(CLI::ExistingFile);
  render->add_option("--hemisphere", o.hemisphere, "north | south")
      ->check(CLI::IsMember({"north", "south"}));
  render->add_option("--out", o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*coeffs) cmd_coeffs(o, out);
    else if (*simulate) cmd_simulate(o);
    else if (*pcf) cmd_pcf(o, out);
    else if (*rep) cmd_repulsiveness(o, out);
    else if (*loglik) cmd_loglik(o, out);
    else if (*mle) cmd_mle(o, out);
    else if (*validate) cmd_validate(o, out);
    else if (*render) cmd_render(o, out);
  } catch (const UsageError& e) {
    err << "spheredpp: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "spheredpp: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

} // namespace spheredpp::cli
