#include <cmath>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "slidekit/constants.hpp"
#include "slidekit/error.hpp"
#include "slidekit/experiment.hpp"
#include "slidekit/harnack.hpp"
#include "slidekit/io.hpp"
#include "slidekit/paraboloid.hpp"

namespace slidekit {

using nlohmann::json;

namespace {

double get(const std::map<std::string, double>& m, const std::string& k, double fallback) {
  auto it = m.find(k);
  return it == m.end() ? fallback : it->second;
}

template <class T>
void read_field(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::string strip_kind(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

CheckReport flatness_report(const Generated& gen, const OperatorSpec& F, const FlatnessConfig& fc,
                            const std::map<std::string, double>& prm) {
  const int stride = static_cast<int>(get(prm, "stride", 1));
  const SingularSet s = classify_singular_set(gen.u, gen.f, F, fc, stride);
  CheckReport r;
  r.check = "flatness";
  r.hypotheses["examined_nonempty"] = s.examined > 0;
  r.lhs = s.measure;
  r.rhs = get(prm, "max_measure", std::numeric_limits<double>::infinity());
  r.extras["examined"] = static_cast<double>(s.examined);
  r.extras["undetermined"] = static_cast<double>(s.mask.count());
  r.extras["cauchy_C"] = s.cauchy_C;
  r.extras["stride"] = stride;
  if (!r.hypotheses_hold())
    r.verdict = Verdict::vacuous;
  else
    r.verdict = r.lhs <= r.rhs ? Verdict::pass : Verdict::fail;
  return r;
}

CheckReport pucci_class_report(const Generated& gen, const EllipticityParams& p, const std::map<std::string, double>& prm) {
  const int side = static_cast<int>(get(prm, "side", 0));
  require(side >= 0 && side <= 2, ErrorKind::precondition, "pucci_class side must be 0 (super), 1 (sub) or 2 (star)");
  const double a = get(prm, "a", 1.0);
  const PucciClassReport pr =
      pucci_class_test(gen.u, p, gen.f, static_cast<ClassSide>(side), {a}, get(prm, "c_tol", 10.0));
  CheckReport r;
  r.check = "pucci_class";
  r.lhs = static_cast<double>(pr.violations.size());
  r.rhs = 0;
  r.tolerance = pr.tolerance;
  std::size_t examined = 0;
  for (auto e : pr.examined) examined += e;
  r.extras["examined"] = static_cast<double>(examined);
  r.extras["opening"] = a;
  for (const auto& v : pr.violations)
    r.series.push_back({{"node", static_cast<double>(v.node)}, {"value", v.value}, {"bound", v.bound}});
  r.verdict = pr.passed() ? Verdict::pass : Verdict::fail;
  return r;
}

CheckReport contact_hessian_report(const Generated& gen, const DerivedConstants& dc,
                                   const std::map<std::string, double>& prm) {
  const double a = get(prm, "a", 1.0);
  const Mask V = Mask::ball(gen.u.grid(), Point{get(prm, "v_center_x", 0), get(prm, "v_center_y", 0),
                                                 get(prm, "v_center_z", 0)},
                            get(prm, "v_radius", 0.25));
  const ContactSet cs = contact_set(gen.u, a, V);
  const ContactHessianReport hr = contact_hessian_check(cs, gen.u, a, dc.Gamma, get(prm, "c_tol", 10.0));
  CheckReport r;
  r.check = "contact_hessian";
  r.hypotheses["contacts_interior"] = hr.examined > 0;
  r.lhs = static_cast<double>(hr.lower.size() + hr.upper.size());
  r.rhs = 0;
  r.tolerance = hr.tolerance;
  r.extras["examined"] = static_cast<double>(hr.examined);
  r.extras["worst_min_eig"] = hr.worst_min_eig;
  r.extras["worst_max_eig"] = hr.worst_max_eig;
  if (!r.hypotheses_hold())
    r.verdict = Verdict::vacuous;
  else
    r.verdict = hr.passed() ? Verdict::pass : Verdict::fail;
  return r;
}

// A constant `f_declared` replaces the generator's right-hand side.
GridFunction declared_f(const Generated& gen, const std::map<std::string, double>& prm) {
  auto it = prm.find("f_declared");
  return it == prm.end() ? gen.f : GridFunction(gen.f.grid(), it->second);
}

CheckReport run_check(const CheckSpec& c, const Generated& gen, const OperatorSpec& F, const ExperimentConfig& cfg,
                      const DerivedConstants& dc) {
  const auto& prm = c.params;
  const EllipticityParams& p = cfg.ellipticity;
  const Grid& g = gen.u.grid();
  if (c.name == "measure_lemma") {
    const Mask V = Mask::ball(g, Point{get(prm, "v_center_x", 0), get(prm, "v_center_y", 0), get(prm, "v_center_z", 0)},
                              get(prm, "v_radius", 0.25));
    return verify_measure_lemma(gen.u, get(prm, "a", 1.0), V, dc, p, declared_f(gen, prm),
                                get(prm, "tol_factor", 10.0));
  }
  if (c.name == "density") return verify_density(gen.u, dc, p, declared_f(gen, prm), get(prm, "tol_factor", 10.0));
  if (c.name == "decay_iteration") return decay_iteration(gen.u, dc, p, gen.f, static_cast<int>(get(prm, "kmax", 3)));
  if (c.name == "weak_Leps") return weak_Leps(gen.u, dc, p);
  if (c.name == "weak_harnack") return weak_harnack(gen.u, gen.f, dc, p);
  if (c.name == "holder_decay") return holder_decay(gen.u, dc, p, gen.f);
  if (c.name == "barrier")
    return barrier_check(Point{}, get(prm, "r", 1.0), get(prm, "a", 1.0), dc, p,
                         static_cast<int>(get(prm, "samples", 10000)));
  if (c.name == "flatness") return flatness_report(gen, F, cfg.flatness, prm);
  if (c.name == "interpolation")
    return interpolation_check(gen.u, get(prm, "R", 1.0), get(prm, "eps", 0.5), get(prm, "C", 1.0));
  if (c.name == "pucci_class") return pucci_class_report(gen, p, prm);
  if (c.name == "contact_hessian") return contact_hessian_report(gen, dc, prm);
  fail(ErrorKind::unknown_name, "unknown check '" + c.name + "'");
}

}  // namespace

std::vector<std::string> check_names() {
  return {"measure_lemma", "density", "decay_iteration", "weak_Leps",   "weak_harnack",   "holder_decay",
          "barrier",       "flatness", "interpolation",  "pucci_class", "contact_hessian"};
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::config_parse, std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) fail(ErrorKind::config_parse, "config must be a JSON object");
    if (j.contains("grid")) {
      const json& gj = j.at("grid");
      read_field(gj, "dim", cfg.dim);
      read_field(gj, "N", cfg.resolution);
    }
    read_field(j, "seed", cfg.seed);
    if (!j.contains("generator")) fail(ErrorKind::config_parse, "config needs a 'generator' entry");
    const json& gen = j.at("generator");
    cfg.generator = gen.at("name").get<std::string>();
    if (gen.contains("params")) {
      for (const auto& [k, v] : gen.at("params").items()) {
        if (v.is_string())
          cfg.generator_strings[k] = v.get<std::string>();
        else
          cfg.generator_params[k] = v.get<double>();
      }
    }
    read_field(j, "operator", cfg.op);
    if (j.contains("ellipticity")) {
      const json& e = j.at("ellipticity");
      read_field(e, "lambda", cfg.ellipticity.lambda);
      read_field(e, "Lambda", cfg.ellipticity.Lambda);
      read_field(e, "b0", cfg.ellipticity.b0);
      read_field(e, "c0", cfg.ellipticity.c0);
      read_field(e, "rho", cfg.ellipticity.rho);
    }
    if (j.contains("flatness")) {
      const json& fj = j.at("flatness");
      FlatnessConfig& f = cfg.flatness;
      read_field(fj, "alpha", f.alpha);
      read_field(fj, "eta", f.eta);
      read_field(fj, "r0", f.r0);
      read_field(fj, "delta", f.delta);
      read_field(fj, "kmax", f.kmax);
      read_field(fj, "fit_tol", f.fit_tol);
      read_field(fj, "cauchy_C", f.cauchy_C);
      read_field(fj, "gate_radius", f.gate_radius);
    }
    if (j.contains("checks")) {
      for (const json& c : j.at("checks")) {
        CheckSpec cs;
        if (c.is_string()) {
          cs.name = c.get<std::string>();
        } else {
          cs.name = c.at("name").get<std::string>();
          for (const auto& [k, v] : c.items())
            if (k != "name") cs.params[k] = v.get<double>();
        }
        cfg.checks.push_back(std::move(cs));
      }
    }
    if (j.contains("output")) {
      read_field(j.at("output"), "dir", cfg.out_dir);
      read_field(j.at("output"), "prefix", cfg.prefix);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::config_parse, std::string("config field error: ") + e.what());
  }
  const auto names = check_names();
  for (const auto& c : cfg.checks)
    if (std::find(names.begin(), names.end(), c.name) == names.end())
      fail(ErrorKind::unknown_name, "unknown check '" + c.name + "'");
  return cfg;
}

RunResult run(const ExperimentConfig& cfg) {
  auto stage = [](const std::string& name, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      fail(e.kind(), "stage '" + name + "': " + strip_kind(e));
    }
  };

  const Grid g = stage("grid", [&] { return Grid(cfg.dim, cfg.resolution); });
  stage("config", [&] {
    cfg.ellipticity.validate();
    cfg.flatness.validate();
    return 0;
  });
  const Generated gen = stage("generator", [&] {
    return generate(cfg.generator, cfg.generator_params, g, cfg.op, cfg.ellipticity, cfg.generator_strings);
  });
  const OperatorSpec F = stage("operator", [&] { return make_operator(gen.op, g.dim(), cfg.ellipticity); });
  const DerivedConstants dc = stage("constants", [&] { return derive_constants(g.dim(), cfg.ellipticity); });

  RunResult out;
  json summary;
  summary["schema_version"] = kReportSchemaVersion;
  summary["generator"] = gen.metadata;
  summary["grid"] = {{"dim", g.dim()}, {"N", g.resolution()}};
  summary["seed"] = cfg.seed;
  summary["checks"] = json::array();
  const std::filesystem::path dir(cfg.out_dir);
  for (const CheckSpec& c : cfg.checks) {
    CheckReport r = stage("check:" + c.name, [&] { return run_check(c, gen, F, cfg, dc); });
    const std::string base = (dir / (cfg.prefix + "_" + c.name)).string();
    stage("write:" + c.name, [&] {
      write_text_file(base + ".json", to_json(r));
      out.files.push_back(base + ".json");
      const std::string csv = series_csv(r);
      if (!csv.empty()) {
        write_text_file(base + ".csv", csv);
        out.files.push_back(base + ".csv");
      }
      return 0;
    });
    summary["checks"].push_back({{"check", c.name}, {"verdict", to_string(r.verdict)}});
    if (r.verdict == Verdict::fail) out.exit_code = 1;
    out.reports.push_back(std::move(r));
  }
  summary["exit_code"] = out.exit_code;
  const std::string spath = (dir / (cfg.prefix + "_summary.json")).string();
  stage("write:summary", [&] {
    write_text_file(spath, summary.dump(2) + "\n");
    return 0;
  });
  out.files.push_back(spath);
  return out;
}

}  // namespace slidekit
