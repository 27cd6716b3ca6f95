#include "ssde/error.hpp"
#include "ssde/oracle.hpp"
#include "ssde/piecemeal.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ssde;
using test::exact_map;
using test::q;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::Parse;
}

}  // namespace

TEST_CASE("validate derives breakpoints") {
  const auto p = test::transition();
  REQUIRE(p.is_exact());
  const auto xb = p.exact_breakpoints();
  CHECK(std::vector<Rational>(xb.begin(), xb.end()) == std::vector<Rational>{q(0), q(1, 2), q(1)});

  const auto chart = test::chart_1_4();
  const auto cb = chart.exact_breakpoints();
  CHECK(std::vector<Rational>(cb.begin(), cb.end()) == std::vector<Rational>{q(1), q(2), q(4)});
  CHECK(chart.breakpoints()[1] == 2.0);
  CHECK(chart.width() == 3.0);
}

TEST_CASE("validate errors") {
  CHECK(code_of([] {
          validate(Number(q(0)), Number(q(1)), {exact_map(q(1, 2), q(1), q(0), q(0))});
        }) == Errc::Tiling);
  CHECK(code_of([] {
          validate(Number(q(0)), Number(q(1)),
                   {exact_map(q(1, 2), q(2), q(0), q(0)), exact_map(q(-1, 2), q(2), q(1, 2), q(0))});
        }) == Errc::ShiftMismatch);
  CHECK(code_of([] {
          validate(Number(q(0)), Number(q(1)),
                   {exact_map(q(0), q(2), q(0), q(0)), exact_map(q(1), q(2), q(0), q(0))});
        }) == Errc::DegenerateMap);
  CHECK(code_of([] { validate(Number(q(0)), Number(q(1)), {}); }) == Errc::Tiling);
}

TEST_CASE("float-mode validation tolerances") {
  const std::vector<AffineGraphMap> maps{{0.5, 2.0, 0.0, 0.0}, {-0.5, 2.0, 1.0 + 1e-11, 0.0}};
  const auto p = validate(Interval(0.0, 1.0), maps);
  CHECK_FALSE(p.is_exact());
  CHECK(p.breakpoints()[2] == 1.0);
  CHECK_THROWS_AS(validate(Interval(0.0, 1.0), {{0.5, 2.0, 0.0, 0.0}, {-0.5, 2.0, 1.0 + 1e-6, 0.0}}),
                  Error);
  CHECK_THROWS_AS(validate(Interval(0.0, 1.0), {{0.5, 2.0, 0.0, 0.0}, {-0.5 - 1e-10, 2.0, 1.0, 0.0}}),
                  Error);
}

TEST_CASE("image_interval") {
  const Interval unit(0.0, 1.0);
  auto r = image_interval({0.5, 1.0, 0.0, 0.0}, unit);
  CHECK(r.lo == 0.0);
  CHECK(r.hi == 0.5);
  r = image_interval({-0.5, 1.0, 1.0, 0.0}, unit);
  CHECK(r.lo == 0.5);
  CHECK(r.hi == 1.0);
  r = image_interval({1.0 / 3, 1.0, 2.0 / 3, 0.0}, Interval(1.0, 4.0));
  CHECK(r.lo == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.hi == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("apply") {
  const auto p = test::transition();
  const auto y = sample_on(p, [](double x) { return x; }, 64);

  const auto z = apply(p, y);
  double worst = 0.0;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k <= z.intervals(j); ++k) {
      const double x = z.node(j, k);
      worst = std::max(worst, std::abs(z.segment(j)[k] - (j == 0 ? 4 * x : 4 - 4 * x)));
    }
  CHECK(worst <= 1e-14);
  CHECK(z.segment(0).back() == doctest::Approx(2.0));
  CHECK(z.segment(1).front() == doctest::Approx(2.0));

  const auto zero = sample_on(p, [](double) { return 0.0; }, 16);
  CHECK(apply(p, zero).max_abs() == 0.0);

  const auto refl = test::reflection();
  const auto u = sample_on(refl, [](double x) { return x; }, 32);
  const auto r = apply(refl, u);
  for (std::size_t k = 0; k <= 32; ++k)
    CHECK(r.segment(0)[k] == doctest::Approx(1.0 - r.node(0, k)).epsilon(1e-15));
}

TEST_CASE("apply rejects a foreign domain") {
  const auto p = test::transition();
  const auto y = make_sampled([](double x) { return x; }, {0.0, 2.0}, 16);
  CHECK_THROWS_AS(apply(p, y), Error);
  const auto wrong_breaks = make_sampled([](double x) { return x; }, {0.0, 0.3, 1.0}, 16);
  CHECK_THROWS_AS(apply(p, wrong_breaks), Error);
  const std::vector<std::size_t> counts{8, 8};
  CHECK(apply(p, make_sampled([](double x) { return x; }, {0.0, 1.0}, 40), counts)
            .interval_counts() == counts);
}

TEST_CASE("property: stored breakpoints match reconstruction from the shifts") {
  oracle::Rng rng(test::announce_seed("piecemeal.breaks", 2101));
  for (int trial = 0; trial < 200; ++trial) {
    oracle::PiecemealingOptions opts;
    opts.force_reversing = trial % 2 == 0;
    const auto p = oracle::random_piecemealing(rng, opts);
    REQUIRE(p.is_exact());
    const auto xb = p.exact_breakpoints();
    const Rational lo = *p.lo().exact, hi = *p.hi().exact;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto& m = p.maps()[i];
      const Rational a = *m.a.exact, e = *m.e.exact;
      // Image endpoints of [lo, hi] under x -> a x + e.
      const Rational first = a * lo + e, second = a * hi + e;
      const Rational left = a.sign() > 0 ? first : second;
      const Rational right = a.sign() > 0 ? second : first;
      CHECK(left == xb[i]);
      CHECK(right == xb[i + 1]);
      CHECK(std::abs(p.breakpoints()[i] - xb[i].to_double()) <= 1e-12 * p.width());
    }
  }
}

TEST_CASE("property: partial integrals of P(y) follow the boundary bookkeeping") {
  oracle::Rng rng(test::announce_seed("piecemeal.partial", 2102));
  for (int trial = 0; trial < 60; ++trial) {
    oracle::PiecemealingOptions opts;
    opts.force_reversing = trial % 2 == 1;
    const auto p = oracle::random_piecemealing(rng, opts);
    const auto poly = oracle::random_polynomial(rng, p.domain());
    const auto y = sample_on(p, poly, 1024);
    const auto z = apply(p, y);
    const double iy = oracle::brute_integral(poly, p.domain()).value;
    double running_lhs = 0.0, running_rhs = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto& m = p.maps()[i];
      const double dx = p.breakpoints()[i + 1] - p.breakpoints()[i];
      const auto seg = z.segment(i);
      double t = 0.0;
      for (std::size_t k = 0; k < seg.size() - 1; ++k) t += 0.5 * (seg[k] + seg[k + 1]);
      running_lhs += t * z.spacing(i);
      running_rhs += std::abs(m.a.value) * m.d.value * iy + m.f.value * dx;
      CAPTURE(trial);
      CAPTURE(i);
      CHECK(std::abs(running_lhs - running_rhs) <= 1e-5 * (1 + std::abs(running_rhs)));
    }
  }
}

TEST_CASE("property: shifting y by a constant shifts P(y) by d_i c per segment") {
  oracle::Rng rng(test::announce_seed("piecemeal.affine", 2103));
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = oracle::random_piecemealing(rng);
    const double c = rng.uniform(-4, 4);
    const auto y = sample_on(p, oracle::random_polynomial(rng, p.domain()), 64);
    const auto yc = transform(y, [c](double, double v) { return v + c; });
    const auto diff = combine(apply(p, yc), apply(p, y), [](double a, double b) { return a - b; });
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double expect = p.maps()[i].d.value * c;
      for (const double v : diff.segment(i))
        CHECK(std::abs(v - expect) <= 1e-13 * (1 + std::abs(expect) + 16 * y.max_abs()));
    }
  }
}
