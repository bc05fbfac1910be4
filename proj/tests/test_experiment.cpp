#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>

#include <json.hpp>

#include "slidekit/error.hpp"
#include "slidekit/experiment.hpp"
#include "slidekit/io.hpp"

using namespace slidekit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("slidekit_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(SLIDEKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

GridFunction boundary_from(const Grid& g, auto&& fn) { return GridFunction::sample(g, fn); }

}  // namespace

TEST(Generators, RadialSigmaK) {
  const Grid g(3, 17);
  const Generated gen = generate("radial-sigma-k", {{"k", 2}, {"t", 0.1}}, g);
  EXPECT_EQ(gen.op, "sigma-k:2");
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(gen.f[i], 0.03, 1e-15);
    EXPECT_NEAR(gen.u[i], 0.05 * dot(g.point(i), g.point(i)), 1e-15);
  }
  EXPECT_EQ(std::stod(gen.metadata.at("f_value")), 3 * 0.1 * 0.1);
}

TEST(Generators, SmallPerturbationAndCrease) {
  const Grid g(2, 33);
  const Generated sp = generate("small-perturbation", {{"delta", 1e-3}}, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(sp.f[i], 0.0);
  const Generated cr = generate("c11-crease", {{"delta", 1e-2}}, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0];
    EXPECT_NEAR(cr.u[i], 1e-2 * x * std::abs(x), 1e-17);
    EXPECT_EQ(cr.f[i], 2e-2 * ((x > 0) - (x < 0)));
  }
  EXPECT_THROW(generate("no-such-thing", {}, g), Error);
  EXPECT_THROW(generate("small-perturbation", {}, g, "", {}, {{"w", "x9"}}), Error);
}

TEST(Generators, DiscreteResidualOnQuadraticFixtures) {
  const Grid g(2, 65);
  EllipticityParams p;
  p.lambda = 0.5;
  p.Lambda = 2.0;
  struct Case {
    std::string name;
    std::map<std::string, double> prm;
    std::string op;
    std::map<std::string, std::string> strs;
  };
  const std::vector<Case> cases = {
      {"radial-sigma-k", {{"k", 2}, {"t", 0.3}}, "", {}},
      {"radial-sigma-k", {{"k", 1}, {"t", 0.7}}, "", {}},
      {"paraboloid-family", {{"b", 1.5}, {"center_x", 0.2}, {"c", -0.1}}, "pucci-minus", {}},
      {"small-perturbation", {{"delta", 0.01}}, "pucci-plus", {{"w", "x1^2-x2^2"}}},
      {"small-perturbation", {{"delta", 0.01}}, "trace", {{"w", "x1x2"}}},
      {"constant", {{"c", 0.4}}, "", {}},
  };
  for (const Case& c : cases) {
    const Generated gen = generate(c.name, c.prm, g, c.op, p, c.strs);
    const OperatorSpec F = make_operator(gen.op, 2, p);
    double worst = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.boundary_margin(i) < kStencilMargin) continue;
      worst = std::max(worst, std::abs(F(hessian_at(gen.u, i), gradient_at(gen.u, i), gen.u[i], g.point(i)) - gen.f[i]));
    }
    EXPECT_LE(worst, 1e-9) << c.name << " " << gen.op;
  }
}

TEST(Generators, ClosedFormRightHandSides) {
  const Grid g(2, 65);
  const double gam = 1.5;
  const Generated pr = generate("power-radial", {{"gamma", gam}}, g);
  const Generated hc = generate("small-perturbation", {{"delta", 0.2}}, g, "", {}, {{"w", "harmonic-cubic"}});
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = norm(g.point(i));
    if (r > 0) {
      EXPECT_NEAR(pr.f[i], gam * gam * std::pow(r, gam - 2), 1e-9 * (1 + std::pow(r, gam - 2)));
    }
    EXPECT_NEAR(hc.f[i], 0.0, 1e-12);
  }
}

TEST(Solver, ZeroDataStaysZero) {
  const Grid g(2, 33);
  const SolveResult s = relax_solve(make_operator("trace", 2), GridFunction(g, 0.0), GridFunction(g, 0.0));
  EXPECT_TRUE(s.converged);
  for (double v : s.u.values()) EXPECT_EQ(v, 0.0);
}

TEST(Solver, HarmonicQuadraticAccuracy) {
  for (int N : {33, 65}) {
    const Grid g(2, N);
    const auto exact = [](const Point& x) { return x[0] * x[0] - x[1] * x[1]; };
    const SolveResult s =
        relax_solve(make_operator("trace", 2), GridFunction(g, 0.0), boundary_from(g, exact), SolveOptions{1e-11});
    ASSERT_TRUE(s.converged);
    const Mask bnd = solver_boundary(g);
    double err = 0;
    for (std::size_t i : s.u.domain().indices())
      if (!bnd[i]) err = std::max(err, std::abs(s.u[i] - exact(g.point(i))));
    EXPECT_LE(err, 5 * g.spacing() * g.spacing()) << N;
  }
}

TEST(Solver, PucciWithEqualConstantsMatchesTrace) {
  const Grid g(2, 33);
  const auto b = boundary_from(g, [](const Point& x) { return std::sin(x[0]) + x[1] * x[1]; });
  const GridFunction f(g, 0.3);
  const SolveResult a = relax_solve(make_operator("trace", 2), f, b);
  const SolveResult c = relax_solve(make_operator("pucci-minus", 2), f, b);
  EXPECT_EQ(a.iterations, c.iterations);
  EXPECT_EQ(a.u.values(), c.u.values());
}

TEST(Solver, ComparisonPrinciple) {
  const Grid g(2, 33);
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> U(-1, 1), V(0, 0.5);
  const OperatorSpec F = make_operator("pucci-minus", 2, EllipticityParams{0.5, 1.5, 0, 0, 1});
  const Mask bnd = solver_boundary(g);
  for (int pair = 0; pair < 20; ++pair) {
    const double a = U(rng), b = U(rng), c = U(rng);
    GridFunction lo = boundary_from(g, [&](const Point& x) { return a * x[0] + b * x[0] * x[1] + c * x[1] * x[1]; });
    GridFunction hi = lo;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (bnd[i]) hi[i] += V(rng);
    const GridFunction f(g, 0.1 * U(rng));
    const SolveResult sl = relax_solve(F, f, lo, SolveOptions{1e-9});
    const SolveResult sh = relax_solve(F, f, hi, SolveOptions{1e-9});
    ASSERT_TRUE(sl.converged && sh.converged);
    for (std::size_t i : sl.u.domain().indices()) EXPECT_GE(sh.u[i], sl.u[i] - 1e-9) << pair;
  }
}

TEST(Solver, NonConvergenceAndDivergence) {
  const Grid g(2, 33);
  const auto b = boundary_from(g, [](const Point& x) { return x[0] * x[1]; });
  SolveOptions few;
  few.max_iter = 3;
  few.nested = false;
  const SolveResult s = relax_solve(make_operator("trace", 2), GridFunction(g, 1.0), b, few);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.iterations, 3);

  OperatorSpec anti = make_operator("trace", 2);
  anti.eval = [](const SymMatrix& m, const Point&, double, const Point&) { return -m.trace(); };
  try {
    relax_solve(anti, GridFunction(g, 1.0), b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::divergence);
  }
}

TEST(Config, ParseAndErrors) {
  const ExperimentConfig c = parse_config(R"({
    "grid": {"dim": 2, "N": 65}, "seed": 7,
    "generator": {"name": "small-perturbation", "params": {"delta": 0.01, "w": "x1x2"}},
    "operator": "trace",
    "ellipticity": {"lambda": 0.5, "Lambda": 2, "rho": 30},
    "flatness": {"alpha": 0.4, "r0": 0.25},
    "checks": ["density", {"name": "measure_lemma", "a": 1, "v_radius": 0.25}],
    "output": {"dir": "x", "prefix": "p"}
  })");
  EXPECT_EQ(c.resolution, 65);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.generator_strings.at("w"), "x1x2");
  EXPECT_EQ(c.generator_params.at("delta"), 0.01);
  EXPECT_EQ(c.ellipticity.Lambda, 2.0);
  EXPECT_EQ(c.flatness.alpha, 0.4);
  ASSERT_EQ(c.checks.size(), 2u);
  EXPECT_EQ(c.checks[1].params.at("v_radius"), 0.25);
  EXPECT_EQ(c.prefix, "p");

  auto kind_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::io;
  };
  EXPECT_EQ(kind_of("{ not json"), ErrorKind::config_parse);
  EXPECT_EQ(kind_of("[]"), ErrorKind::config_parse);
  EXPECT_EQ(kind_of(R"({"grid": {"N": 65}})"), ErrorKind::config_parse);
  EXPECT_EQ(kind_of(R"({"generator": {"name": "constant"}, "grid": {"N": "big"}})"), ErrorKind::config_parse);
  EXPECT_EQ(kind_of(R"({"generator": {"name": "constant"}, "checks": ["nope"]})"), ErrorKind::unknown_name);
}

TEST(Run, MeasureLemmaFixturePasses) {
  ExperimentConfig c;
  c.generator = "paraboloid-family";
  c.generator_params = {{"b", 2.0}};
  c.resolution = 129;
  c.ellipticity.rho = 4.0;
  c.checks = {{"measure_lemma", {{"a", 1.0}, {"v_radius", 0.25}, {"f_declared", 0.0}}},
              {"contact_hessian", {{"a", 1.0}}}};
  c.out_dir = scratch("measure").string();
  const RunResult r = run(c);
  ASSERT_EQ(r.reports.size(), 2u);
  EXPECT_EQ(r.reports[0].verdict, Verdict::pass);
  EXPECT_EQ(r.reports[1].verdict, Verdict::pass);
  EXPECT_EQ(r.exit_code, 0);
  for (const auto& f : r.files) EXPECT_TRUE(fs::exists(f)) << f;
  EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "run_summary.json"));
}

TEST(Run, DensityGateIsVacuousAndExitsZero) {
  ExperimentConfig c;
  c.generator = "constant";
  c.generator_params = {{"c", 1.5}};
  c.resolution = 33;
  c.ellipticity.rho = 30.0;
  c.checks = {{"density", {}}};
  c.out_dir = scratch("density").string();
  const RunResult r = run(c);
  EXPECT_EQ(r.reports.at(0).verdict, Verdict::vacuous);
  EXPECT_FALSE(r.reports.at(0).hypotheses.at("inf_quarter_ball_at_most_1"));
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Run, FailingCheckSetsExitCode) {
  ExperimentConfig c;
  c.generator = "c11-crease";
  c.resolution = 65;
  c.checks = {{"flatness", {{"max_measure", 0.0}}}};
  c.out_dir = scratch("fail").string();
  EXPECT_EQ(run(c).exit_code, 1);
}

TEST(Run, DeterministicPayloads) {
  ExperimentConfig c;
  c.generator = "power-radial";
  c.generator_params = {{"gamma", 1.0}};
  c.resolution = 65;
  c.ellipticity.rho = 1e4;
  c.seed = 3;
  c.checks = {{"holder_decay", {}}, {"weak_Leps", {}}, {"interpolation", {{"R", 0.5}}}};
  c.out_dir = scratch("det_a").string();
  const RunResult a = run(c);
  c.out_dir = scratch("det_b").string();
  const RunResult b = run(c);
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    EXPECT_EQ(fs::path(a.files[i]).filename(), fs::path(b.files[i]).filename());
    EXPECT_EQ(read_text_file(a.files[i]), read_text_file(b.files[i]));
  }
}

TEST(Run, StageIsNamedInErrors) {
  ExperimentConfig c;
  c.generator = "nope";
  c.out_dir = scratch("stage").string();
  try {
    run(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_name);
    EXPECT_NE(std::string(e.what()).find("stage 'generator'"), std::string::npos);
  }
}

TEST(Cli, VerbsRoundTrip) {
  const fs::path dir = scratch("cli");
  const std::string d = dir.string();
  EXPECT_EQ(cli("--dim 2 constants"), 0);
  EXPECT_EQ(cli("--grid 65 --out " + d + " generate paraboloid-family --param b=2"), 0);
  ASSERT_TRUE(fs::exists(dir / "u.json"));
  ASSERT_TRUE(fs::exists(dir / "f.json"));
  const GridFunction u = read_grid_function((dir / "u.json").string());
  EXPECT_EQ(u.grid().resolution(), 65);

  EXPECT_EQ(cli("--out " + d + " envelope " + (dir / "u.json").string() + " --eps 0.5"), 0);
  EXPECT_TRUE(fs::exists(dir / "envelope.json"));
  EXPECT_EQ(cli("--out " + d + " contact --input " + (dir / "u.json").string() + " --a 1 --v-radius 0.25"), 0);
  const auto cj = nlohmann::json::parse(read_text_file((dir / "contact.json").string()));
  EXPECT_GT(cj.at("pairs").size(), 0u);
  EXPECT_EQ(cli("--out " + d + " harnack --check measure --input " + (dir / "u.json").string() + " --rho 4"), 0);
  EXPECT_TRUE(fs::exists(dir / "harnack_measure.json"));
  EXPECT_EQ(cli("--out " + d + " harnack --check barrier --samples 500"), 0);
  EXPECT_EQ(cli("--out " + d + " flatness --input " + (dir / "u.json").string() + " --rhs " +
                (dir / "f.json").string() + " --operator trace --stride 8"),
            0);
  const auto fj = nlohmann::json::parse(read_text_file((dir / "class.json").string()));
  EXPECT_GT(fj.at("points").size(), 0u);

  EXPECT_EQ(cli("--grid 33 --out " + d + " generate small-perturbation --param delta=0.01"), 0);
  EXPECT_EQ(cli("--out " + d + " solve " + (dir / "u.json").string() + " --operator trace"), 0);
  EXPECT_TRUE(fs::exists(dir / "solution.json"));
}

TEST(Cli, RunAndErrors) {
  const fs::path dir = scratch("cli_run");
  write_text_file((dir / "bad.json").string(), "{ broken");
  EXPECT_NE(cli("run " + (dir / "bad.json").string()), 0);
  write_text_file((dir / "ok.json").string(), R"({"grid": {"N": 33}, "generator": {"name": "constant", "params": {"c": 1.5}},
    "ellipticity": {"rho": 30}, "checks": ["density"]})");
  EXPECT_EQ(cli("--out " + (dir / "out").string() + " run " + (dir / "ok.json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "run_summary.json"));
  EXPECT_NE(cli("generate no-such-generator"), 0);
  EXPECT_NE(cli("envelope /nonexistent.json"), 0);
}
