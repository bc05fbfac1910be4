#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "slidekit/constants.hpp"
#include "slidekit/error.hpp"
#include "slidekit/paraboloid.hpp"

using namespace slidekit;

namespace {

GridFunction bowl(const Grid& g, double b, const Point& c = {}) {
  return GridFunction::sample(g, [&](const Point& x) { return 0.5 * b * dist2(x, c); });
}

GridFunction noise(const Grid& g, std::uint64_t seed, double amp = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-amp, amp);
  GridFunction u(g);
  for (auto& v : u.values()) v = U(rng);
  return u;
}

Mask random_mask(const Grid& g, std::uint64_t seed, double p) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Mask m(g);
  const Mask dom = Mask::unit_ball(g);
  for (std::size_t i = 0; i < g.size(); ++i) m.set(i, dom[i] && coin(rng));
  return m;
}

}  // namespace

TEST(Quadratic, NormProperties) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    auto rq = [&] {
      Point b{};
      SymMatrix C(n);
      for (int i = 0; i < n; ++i) {
        b[i] = U(rng);
        for (int j = i; j < n; ++j) C.set(i, j, U(rng));
      }
      return Quadratic(U(rng), b, C);
    };
    const Quadratic P = rq(), Q = rq();
    const double r = 0.1 + std::abs(U(rng)), s = 0.1 + std::abs(U(rng));
    EXPECT_GE(P.norm(r), 0.0);
    EXPECT_LE((P + Q).norm(r), P.norm(r) + Q.norm(r) + 1e-12);
    EXPECT_LE(P.norm(r), P.norm(r + s));
    EXPECT_NEAR(P.scaled(s).norm(r), P.norm(r * s), 1e-12 * (1 + P.norm(r * s)));
  }
  EXPECT_EQ(Quadratic::zero(2).norm(1.0), 0.0);
}

TEST(Quadratic, TaylorAndRecentering) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-1, 1);
  SymMatrix H(3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) H.set(i, j, U(rng));
  const Point x0{U(rng), U(rng), U(rng)}, g{U(rng), U(rng), U(rng)};
  const Quadratic T = Quadratic::taylor(x0, 0.4, g, H);
  EXPECT_NEAR(T(x0), 0.4, 1e-14);
  const Point gx = T.gradient(x0);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(gx[i], g[i], 1e-14);
  EXPECT_EQ(T.hessian(), 2.0 * T.C());
  const Quadratic R = T.recentered(x0);
  const Point y{U(rng), U(rng), U(rng)};
  EXPECT_NEAR(R(y), T(x0 + y), 1e-13);
  const Paraboloid P{2.0, Point{0.1, 0.2, 0}, 0.5};
  const Point y2{y[0], y[1], 0};
  EXPECT_NEAR(P.to_quadratic(2)(y2), P(y2), 1e-13);
}

TEST(SlideContact, BowlTouchesContractedCenter) {
  const Grid g(2, 129);
  const double a = 1.0, b = 2.0;
  const auto u = bowl(g, b);
  for (const Point& y : {Point{0.3, -0.2, 0}, Point{-0.71, 0.05, 0}, Point{0.0, 0.9, 0}}) {
    const SlideResult r = slide_contact(u, a, y);
    ASSERT_EQ(r.touches.size(), 1u);
    const Point target = (a / (a + b)) * y;
    EXPECT_EQ(r.touches[0], g.flat(g.nearest(target)));
  }
}

TEST(SlideContact, LinearAndZero) {
  const Grid g(2, 65);
  const double a = 2.0;
  const Point l{0.4, -0.3, 0};
  const auto u = GridFunction::sample(g, [&](const Point& x) { return dot(l, x); });
  const Point y{0.13, 0.27, 0};
  const SlideResult r = slide_contact(u, a, y);
  ASSERT_EQ(r.touches.size(), 1u);
  EXPECT_EQ(r.touches[0], g.flat(g.nearest(y - (1.0 / a) * l)));

  const SlideResult z = slide_contact(GridFunction(g, 0.0), a, y);
  EXPECT_EQ(z.touches[0], g.flat(g.nearest(y)));
  EXPECT_EQ(z.value, 0.5 * a * dist2(g.point(z.touches[0]), y));
}

TEST(SlideContact, ReturnsAllTies) {
  const Grid g(1, 9);
  const SlideResult r = slide_contact(GridFunction(g, 0.0), 1.0, Point{0.125, 0, 0});
  ASSERT_EQ(r.touches.size(), 2u);
  EXPECT_EQ(r.touches[0], 4u);
  EXPECT_EQ(r.touches[1], 5u);
}

TEST(ContactSet, MatchesBruteForceNodeForNode) {
  for (int n = 1; n <= 3; ++n) {
    const Grid g(n, n == 3 ? 17 : 65);
    for (int trial = 0; trial < 4; ++trial) {
      const GridFunction u = trial % 2 ? noise(g, 100 + trial) : bowl(g, 0.5 + trial, Point{0.1, -0.1, 0.05});
      const Mask V = random_mask(g, 200 + trial, 0.5);
      const double a = 0.5 + trial;
      const ContactSet fast = contact_set(u, a, V);
      const ContactSet slow = contact_set_bruteforce(u, a, V);
      EXPECT_EQ(fast.touch, slow.touch);
      EXPECT_EQ(fast.interior, slow.interior);
      ASSERT_EQ(fast.pairs.size(), slow.pairs.size());
      for (std::size_t k = 0; k < fast.pairs.size(); ++k) {
        EXPECT_EQ(fast.pairs[k].touch, slow.pairs[k].touch);
        EXPECT_EQ(fast.pairs[k].center, slow.pairs[k].center);
        EXPECT_EQ(fast.pairs[k].value, slow.pairs[k].value);
      }
    }
  }
}

TEST(ContactSet, SerialAndParallelAgree) {
  const Grid g(2, 129);
  const GridFunction u = noise(g, 3);
  const Mask V = Mask::unit_ball(g);
  const ContactSet a = contact_set(u, 1.5, V, Exec::serial);
  const ContactSet b = contact_set(u, 1.5, V, Exec::parallel);
  EXPECT_EQ(a.touch, b.touch);
  for (std::size_t k = 0; k < a.pairs.size(); ++k) EXPECT_EQ(a.pairs[k].touch, b.pairs[k].touch);
}

TEST(ContactSet, ZeroFunctionTouchesCenters) {
  const Grid g(2, 33);
  const Mask V = random_mask(g, 4, 0.3);
  const ContactSet cs = contact_set(GridFunction(g, 0.0), 1.0, V);
  EXPECT_EQ(cs.touch, V);
}

TEST(ContactSet, SurjectiveVertexMap) {
  const Grid g(2, 65);
  const GridFunction u = noise(g, 5);
  const Mask V = random_mask(g, 6, 0.4);
  const ContactSet cs = contact_set(u, 2.0, V);
  ASSERT_EQ(cs.pairs.size(), V.count());
  std::size_t served = 0;
  for (std::size_t t : cs.touch.indices()) served += cs.centers_of(t).size();
  EXPECT_EQ(served, V.count());
  for (const auto& p : cs.pairs) {
    EXPECT_TRUE(V[p.center]);
    EXPECT_TRUE(cs.touch[p.touch]);
    EXPECT_TRUE(cs.touch.subset_of(Mask::unit_ball(g)));
  }
}

TEST(ContactSet, UnionAndMonotone) {
  const Grid g(2, 65);
  const GridFunction u = noise(g, 7);
  const Mask V1 = random_mask(g, 8, 0.2), V2 = random_mask(g, 9, 0.2);
  const double a = 1.0;
  const Mask T1 = contact_set(u, a, V1).touch, T2 = contact_set(u, a, V2).touch;
  const Mask T12 = contact_set(u, a, V1 | V2).touch;
  EXPECT_EQ(T12, T1 | T2);
  EXPECT_TRUE(T1.subset_of(T12));
}

TEST(ContactSet, BowlMeasureRatio) {
  const double a = 1.0, b = 2.0, s = 0.5;
  double prev_err = 1.0;
  for (int N : {129, 257, 513}) {
    const Grid g(2, N);
    const Mask V = Mask::ball(g, Point{}, s);
    const ContactSet cs = contact_set(bowl(g, b), a, V);
    const double ratio = cs.touch.measure() / V.measure();
    const double err = std::abs(ratio - std::pow(a / (a + b), 2));
    EXPECT_LE(err, 20 * g.spacing());
    EXPECT_LE(err, prev_err * 1.05);
    prev_err = err;
  }
}

TEST(ContactSet, ScalingCovariance) {
  const Grid g(2, 65);
  const GridFunction u = noise(g, 10);
  const Mask V = Mask::unit_ball(g);
  for (double c : {0.25, 0.5, 2.0, 4.0}) {
    GridFunction cu = u;
    for (auto& v : cu.values()) v *= c;
    EXPECT_EQ(contact_set(cu, 1.0, V).touch, contact_set(u, 1.0 / c, V).touch) << c;
  }
}

TEST(ContactSet, TranslationEquivariance) {
  const Grid g(2, 65);
  const int shift = 6;
  const Point c0{-0.2, 0.1, 0}, c1{-0.2 + shift * g.spacing(), 0.1, 0};
  GridFunction u0 = bowl(g, 3.0, c0), u1 = bowl(g, 3.0, c1);
  u0.set_domain(Mask(g, true));
  u1.set_domain(Mask(g, true));
  const Mask V0 = Mask::ball(g, c0, 0.2);
  Mask V1(g);
  for (std::size_t i : V0.indices()) V1.set(i + shift * g.stride(0), true);
  const Mask T0 = contact_set(u0, 1.0, V0).touch, T1 = contact_set(u1, 1.0, V1).touch;
  ASSERT_EQ(T0.count(), T1.count());
  for (std::size_t i : T0.indices()) EXPECT_TRUE(T1[i + shift * g.stride(0)]);
}

TEST(VertexRecovery, ClosedForms) {
  const Grid g(2, 129);
  const double h = g.spacing();
  const double a = 1.0, b = 1.0;
  const auto u = bowl(g, b);
  const ContactSet cs = contact_set(u, a, Mask::ball(g, Point{}, 0.5));
  for (const auto& p : cs.pairs) {
    if (!cs.interior[p.touch]) continue;
    const Point y = vertex_recovery(u, a, p.touch);
    const Point x = g.point(p.touch);
    const Point expect = ((a + b) / a) * x;
    EXPECT_NEAR(y[0], expect[0], 1e-12);
    EXPECT_NEAR(y[1], expect[1], 1e-12);
    EXPECT_LE(std::sqrt(dist2(y, g.point(p.center))), (a + b) / a * h / 2 * std::sqrt(2.0) + 1e-12);
  }

  const Point l{0.3, 0.2, 0};
  const auto lin = GridFunction::sample(g, [&](const Point& x) { return dot(l, x); });
  const std::size_t i = g.flat({70, 50, 0});
  const Point y = vertex_recovery(lin, 2.0, i);
  EXPECT_NEAR(y[0], g.point(i)[0] + 0.15, 1e-12);
  EXPECT_NEAR(y[1], g.point(i)[1] + 0.1, 1e-12);
  const Point z = vertex_recovery(GridFunction(g, 0.0), 2.0, i);
  EXPECT_EQ(z, g.point(i));
  EXPECT_THROW(vertex_recovery(lin, 1.0, g.flat({0, 64, 0})), Error);
  EXPECT_THROW(vertex_recovery(lin, 1.0, g.flat({127, 64, 0})), Error);
}

TEST(ContactHessian, BowlInsideAndOutsideTheBand) {
  const Grid g(2, 129);
  const double a = 1.0, Gamma = 3.0;
  const Mask V = Mask::ball(g, Point{}, 0.5);
  const auto ok = bowl(g, Gamma * a);
  const ContactHessianReport r = contact_hessian_check(contact_set(ok, a, V), ok, a, Gamma);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.examined, 0u);
  const auto steep = bowl(g, Gamma * a + 1.0);
  const ContactSet cs = contact_set(steep, a, V);
  const ContactHessianReport s = contact_hessian_check(cs, steep, a, Gamma);
  EXPECT_EQ(s.upper.size(), cs.interior.count());
  EXPECT_TRUE(s.lower.empty());
}

TEST(ContactHessian, DirectionalLowerBoundHoldsForAnyData) {
  for (int n = 1; n <= 3; ++n) {
    const Grid g(n, n == 3 ? 17 : 65);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const GridFunction u = noise(g, 40 + seed, 0.05);
      for (double a : {0.5, 2.0, 8.0}) {
        const ContactSet cs = contact_set(u, a, Mask::unit_ball(g));
        const DirectionalBoundReport r = contact_directional_check(cs, u, a);
        EXPECT_EQ(r.violations, 0u) << n << " " << a;
        EXPECT_GE(r.worst_margin, -1e-9);
      }
    }
  }
}
