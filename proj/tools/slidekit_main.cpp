// slidekit command-line driver. See FORMATS.md for file layouts.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slidekit/constants.hpp"
#include "slidekit/envelope.hpp"
#include "slidekit/error.hpp"
#include "slidekit/experiment.hpp"
#include "slidekit/flatness.hpp"
#include "slidekit/harnack.hpp"
#include "slidekit/io.hpp"
#include "slidekit/paraboloid.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slidekit;

namespace {

struct Globals {
  int grid = 129;
  int dim = 2;
  std::uint64_t seed = 0;
  std::string out = "out";
};

EllipticityParams load_params(const std::string& path, EllipticityParams p);

struct ParamOpts {
  double lambda = 1, Lambda = 1, b0 = 0, c0 = 0, rho = 1;
  std::string file;
  void add(CLI::App* app) {
    app->add_option("--params", file, "JSON file with lambda, Lambda, b0, c0, rho");
    app->add_option("--lambda", lambda, "lower ellipticity");
    app->add_option("--Lambda", Lambda, "upper ellipticity");
    app->add_option("--b0", b0, "gradient Lipschitz constant");
    app->add_option("--c0", c0, "zeroth-order Lipschitz constant");
    app->add_option("--rho", rho, "ellipticity range");
  }
  EllipticityParams get() const { return load_params(file, {lambda, Lambda, b0, c0, rho}); }
};

std::string out_path(const Globals& g, const std::string& name) { return (fs::path(g.out) / name).string(); }

// --out may name a .json file directly; otherwise it is a directory.
std::string report_path(const Globals& g, const std::string& fallback) {
  return fs::path(g.out).extension() == ".json" ? g.out : out_path(g, fallback);
}

EllipticityParams load_params(const std::string& path, EllipticityParams p) {
  if (path.empty()) return p;
  try {
    const json j = json::parse(read_text_file(path));
    if (j.contains("lambda")) p.lambda = j.at("lambda").get<double>();
    if (j.contains("Lambda")) p.Lambda = j.at("Lambda").get<double>();
    if (j.contains("b0")) p.b0 = j.at("b0").get<double>();
    if (j.contains("c0")) p.c0 = j.at("c0").get<double>();
    if (j.contains("rho")) p.rho = j.at("rho").get<double>();
  } catch (const json::exception& e) {
    fail(ErrorKind::config_parse, "params file " + path + ": " + e.what());
  }
  return p;
}

json quadratic_json(const Quadratic& q) {
  json C = json::array();
  for (int a = 0; a < q.dim(); ++a) {
    json row = json::array();
    for (int b = 0; b < q.dim(); ++b) row.push_back(q.C()(a, b));
    C.push_back(row);
  }
  json b = json::array();
  for (int a = 0; a < q.dim(); ++a) b.push_back(q.b()[a]);
  return {{"a0", q.a0()}, {"b", b}, {"C", C}};
}

void print_report(const CheckReport& r) { std::cout << to_json(r); }

// "k=v" pairs; non-numeric values become string parameters.
void split_params(const std::vector<std::string>& raw, std::map<std::string, double>& nums,
                  std::map<std::string, std::string>& strs) {
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) fail(ErrorKind::config_parse, "parameter '" + kv + "' is not key=value");
    const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used == v.size()) {
        nums[k] = d;
        continue;
      }
    } catch (const std::exception&) {
    }
    strs[k] = v;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slidekit: sliding-paraboloid estimates on uniform grids"};
  Globals G;
  app.add_option("--grid", G.grid, "nodes per axis (odd, >= 9)");
  app.add_option("--dim", G.dim, "dimension (1-3)");
  app.add_option("--seed", G.seed, "random seed");
  app.add_option("--out", G.out, "output directory");
  app.require_subcommand(1);

  // constants
  auto* c_constants = app.add_subcommand("constants", "print the derived constant cascade");
  ParamOpts p_constants;
  p_constants.add(c_constants);

  // envelope
  auto* c_env = app.add_subcommand("envelope", "lower Jensen envelope of a grid function");
  std::string env_in;
  double env_eps = 0.5;
  c_env->add_option("input", env_in, "grid function header")->required();
  c_env->add_option("--eps", env_eps, "envelope parameter");

  // contact
  auto* c_contact = app.add_subcommand("contact", "contact set T_a(V) of sliding paraboloids");
  std::string contact_in, contact_mask;
  double contact_a = 1.0, contact_r = 0.25;
  c_contact->add_option("--input", contact_in, "grid function header")->required();
  c_contact->add_option("--opening,--a", contact_a, "opening");
  c_contact->add_option("--v-radius", contact_r, "radius of V = B_r(0) when no mask is given");
  c_contact->add_option("--centers,--mask", contact_mask, "mask file for V");

  // harnack
  auto* c_harn = app.add_subcommand("harnack", "measure-decay and Harnack-type checks");
  std::string harn_in, harn_f, harn_check = "measure", harn_E, harn_F;
  double harn_a = 1.0, harn_r = 0.25, harn_mu = 0.1;
  int harn_samples = 10000, harn_kmax = 3;
  ParamOpts p_harn;
  p_harn.add(c_harn);
  c_harn->add_option("--check", harn_check, "measure|density|covering|decay|weak-leps|weak-harnack|holder|barrier");
  c_harn->add_option("--input", harn_in, "grid function header (not needed for barrier, covering)");
  c_harn->add_option("--rhs,--f", harn_f, "right-hand side header (default 0)");
  c_harn->add_option("--E", harn_E, "mask file E (covering)");
  c_harn->add_option("--F", harn_F, "mask file F (covering)");
  c_harn->add_option("--mu", harn_mu, "density threshold (covering)");
  c_harn->add_option("--a", harn_a, "opening");
  c_harn->add_option("--v-radius", harn_r, "radius of V");
  c_harn->add_option("--samples", harn_samples, "barrier samples");
  c_harn->add_option("--kmax", harn_kmax, "decay iterations");

  // flatness
  auto* c_flat = app.add_subcommand("flatness", "classify nodes by the improvement-of-flatness iteration");
  std::string flat_in, flat_f, flat_op = "trace";
  int flat_stride = 1;
  FlatnessConfig fc;
  ParamOpts p_flat;
  p_flat.add(c_flat);
  c_flat->add_option("--input", flat_in, "grid function header")->required();
  c_flat->add_option("--rhs,--f", flat_f, "right-hand side header (default 0)");
  c_flat->add_option("--operator", flat_op, "operator name");
  c_flat->add_option("--stride", flat_stride, "classify every stride-th node");
  c_flat->add_option("--alpha", fc.alpha);
  c_flat->add_option("--eta", fc.eta);
  c_flat->add_option("--r0", fc.r0);
  c_flat->add_option("--delta", fc.delta);
  c_flat->add_option("--cauchy-C", fc.cauchy_C);

  // generate
  auto* c_gen = app.add_subcommand("generate", "write a fixture (u, f)");
  std::string gen_name, gen_op;
  std::vector<std::string> gen_params;
  ParamOpts p_gen;
  p_gen.add(c_gen);
  c_gen->add_option("name", gen_name, "generator name")->required();
  c_gen->add_option("--param", gen_params, "key=value, repeatable");
  c_gen->add_option("--operator", gen_op, "override the generator's operator");

  // solve
  auto* c_solve = app.add_subcommand("solve", "pseudo-time relaxation solve");
  std::string solve_bnd, solve_f, solve_op = "trace";
  SolveOptions sopt;
  ParamOpts p_solve;
  p_solve.add(c_solve);
  c_solve->add_option("boundary", solve_bnd, "boundary data header")->required();
  c_solve->add_option("--f", solve_f, "right-hand side header (default 0)");
  c_solve->add_option("--operator", solve_op, "operator name");
  c_solve->add_option("--tol", sopt.tol);
  c_solve->add_option("--max-iter", sopt.max_iter);

  // run
  auto* c_run = app.add_subcommand("run", "run an experiment config");
  std::string run_cfg;
  c_run->add_option("config", run_cfg, "JSON config")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto load_f = [](const std::string& path, const GridFunction& like) {
      return path.empty() ? GridFunction(like.grid(), 0.0) : read_grid_function(path);
    };

    if (*c_constants) {
      const DerivedConstants dc = derive_constants(G.dim, p_constants.get());
      json j = {{"n", dc.n},     {"Gamma", dc.Gamma}, {"rho0", dc.rho0}, {"p", dc.p},         {"C0", dc.C0},
                {"M", dc.M},     {"mu", dc.mu},       {"theta", dc.theta}, {"eps", dc.eps}, {"eps0", dc.eps0},
                {"sigma", dc.sigma}, {"sigma_empirical", dc.sigma_empirical}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*c_env) {
      const GridFunction u = read_grid_function(env_in);
      const GridFunction e = jensen_envelope(u, env_eps);
      const std::string path = out_path(G, "envelope.json");
      write_grid_function(path, e);
      std::cout << path << "\n";
      return 0;
    }
    if (*c_contact) {
      const GridFunction u = read_grid_function(contact_in);
      const Mask V = contact_mask.empty() ? Mask::ball(u.grid(), Point{}, contact_r) : read_mask(contact_mask, u.grid());
      const ContactSet cs = contact_set(u, contact_a, V);
      json touch = json::array(), pairs = json::array();
      for (std::size_t i : cs.touch.indices()) touch.push_back(i);
      for (const auto& pr : cs.pairs) pairs.push_back({pr.center, pr.touch, pr.value});
      json j = {{"opening", contact_a},
                {"centers", V.count()},
                {"touch_nodes", touch},
                {"pairs", pairs},
                {"interior_touch_count", cs.interior.count()},
                {"boundary_touch_count", cs.boundary_touch_count()},
                {"touch_measure", cs.touch.measure()},
                {"interior_measure", cs.interior.measure()},
                {"center_measure", V.measure()}};
      const std::string path = report_path(G, "contact.json");
      write_text_file(path, j.dump(2) + "\n");
      std::cout << path << "\n";
      return 0;
    }
    if (*c_harn) {
      const EllipticityParams p = p_harn.get();
      CheckReport r;
      std::string check = harn_check;
      std::replace(check.begin(), check.end(), '_', '-');
      if (check == "barrier") {
        r = barrier_check(Point{}, 1.0, harn_a, derive_constants(G.dim, p), p, harn_samples);
      } else if (check == "covering") {
        if (harn_E.empty() || harn_F.empty()) fail(ErrorKind::precondition, "covering needs --E and --F");
        const Grid g(G.dim, G.grid);
        r = covering_step(read_mask(harn_E, g), read_mask(harn_F, g), harn_mu, dyadic_ball_family(g));
      } else {
        if (harn_in.empty()) fail(ErrorKind::precondition, "--input is required for " + harn_check);
        const GridFunction u = read_grid_function(harn_in);
        const GridFunction f = load_f(harn_f, u);
        const DerivedConstants dc = derive_constants(u.grid().dim(), p);
        if (check == "measure" || check == "measure-lemma")
          r = verify_measure_lemma(u, harn_a, Mask::ball(u.grid(), Point{}, harn_r), dc, p, f);
        else if (check == "density")
          r = verify_density(u, dc, p, f);
        else if (check == "decay" || check == "decay-iteration")
          r = decay_iteration(u, dc, p, f, harn_kmax);
        else if (check == "weak-leps")
          r = weak_Leps(u, dc, p);
        else if (check == "weak-harnack")
          r = weak_harnack(u, f, dc, p);
        else if (check == "holder" || check == "holder-decay")
          r = holder_decay(u, dc, p, f);
        else
          fail(ErrorKind::unknown_name, "unknown check '" + harn_check + "'");
      }
      const std::string path = report_path(G, "harnack_" + check + ".json");
      write_text_file(path, to_json(r));
      std::cout << r.check << ": " << to_string(r.verdict) << "\n";
      return r.verdict == Verdict::fail ? 1 : 0;
    }
    if (*c_flat) {
      const GridFunction u = read_grid_function(flat_in);
      const GridFunction f = load_f(flat_f, u);
      const OperatorSpec F = make_operator(flat_op, u.grid().dim(), p_flat.get());
      const SingularSet s = classify_singular_set(u, f, F, fc, flat_stride, Exec::parallel, true);
      json points = json::array();
      for (const auto& pc : s.points) {
        points.push_back({{"index", pc.index},
                          {"verdict", pc.verdict == PointClassification::Verdict::regular ? "regular" : "undetermined"},
                          {"deepest_k", pc.deepest_k},
                          {"scales", pc.scales},
                          {"residual_ratios", pc.residual_ratios},
                          {"cauchy_ratios", pc.cauchy_ratios},
                          {"twice_differentiable", pc.twice_differentiable},
                          {"r_witness", pc.r_witness},
                          {"limit", quadratic_json(pc.limit)},
                          {"note", pc.note}});
      }
      json j = {{"schema_version", kReportSchemaVersion},
                {"operator", flat_op},
                {"config",
                 {{"alpha", fc.alpha}, {"eta", fc.eta}, {"r0", fc.r0}, {"delta", fc.delta}, {"kmax", fc.kmax}}},
                {"examined", s.examined},
                {"undetermined", s.mask.count()},
                {"measure", s.measure},
                {"stride", s.stride},
                {"cauchy_C", s.cauchy_C},
                {"points", points}};
      const std::string path = report_path(G, "class.json");
      write_text_file(path, j.dump(2) + "\n");
      std::cout << "examined " << s.examined << ", undetermined " << s.mask.count() << ", measure " << s.measure
                << "\n";
      return 0;
    }
    if (*c_gen) {
      std::map<std::string, double> nums;
      std::map<std::string, std::string> strs;
      split_params(gen_params, nums, strs);
      const Grid g(G.dim, G.grid);
      const Generated gen = generate(gen_name, nums, g, gen_op, p_gen.get(), strs);
      write_grid_function(out_path(G, "u.json"), gen.u);
      write_grid_function(out_path(G, "f.json"), gen.f);
      json meta = gen.metadata;
      write_text_file(out_path(G, "metadata.json"), meta.dump(2) + "\n");
      std::cout << meta.dump(2) << "\n";
      return 0;
    }
    if (*c_solve) {
      const GridFunction b = read_grid_function(solve_bnd);
      const GridFunction f = load_f(solve_f, b);
      const OperatorSpec F = make_operator(solve_op, b.grid().dim(), p_solve.get());
      const SolveResult r = relax_solve(F, f, b, sopt);
      write_grid_function(out_path(G, "solution.json"), r.u);
      json j = {{"converged", r.converged}, {"iterations", r.iterations}, {"residual", r.residual}};
      std::cout << j.dump(2) << "\n";
      return r.converged ? 0 : 1;
    }
    if (*c_run) {
      ExperimentConfig cfg = parse_config(read_text_file(run_cfg));
      if (app.get_option("--out")->count() > 0) cfg.out_dir = G.out;
      const RunResult r = run(cfg);
      for (std::size_t i = 0; i < r.reports.size(); ++i)
        std::cout << r.reports[i].check << ": " << to_string(r.reports[i].verdict) << "\n";
      return r.exit_code;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
