#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quadnet/bifurcation.hpp"
#include "quadnet/families.hpp"

using namespace quadnet;

namespace {

bool has_event(const std::vector<FixedPointRecord>& recs, BifurcationEvent ev, double p,
               double tol) {
  for (const FixedPointRecord& r : recs)
    if (r.event == ev && std::abs(r.p - p) <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("map formulas and derivatives", "[bifurcation]") {
  const RealMapFamily f4 = z3_batch4_family();
  // b=0 collapses the composition to constants: f1(0) = -1, then 3 -> 0 -> 0
  REQUIRE(f4.eval(0.0, 0.0) == 0.0);
  REQUIRE(f4.eval(0.0, 123.0) == 0.0);
  // b=-1 keeps the critical point fixed across the batch
  REQUIRE(f4.eval(-1.0, 0.0) == 0.0);

  const RealMapFamily fe = z2_even_family();
  REQUIRE(fe.eval(-1.0, 0.0) == -1.0);
  REQUIRE(fe.eval(-1.0, -1.0) == 0.0);  // superattracting 2-cycle {0,-1}
  REQUIRE(fe.eval(-2.0, 0.0) == 0.0);   // superattracting fixed point

  const RealMapFamily fl = z3_limit_family(0.5);
  REQUIRE(fl.eval(2.0, 1.0) == Catch::Approx((0.5 + 2.0) * (0.5 + 2.0) - 1.0));

  // derivatives against central differences
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pd(-2.2, 0.9), xd(-2.0, 2.0);
  for (const RealMapFamily& fam : {f4, fe, fl}) {
    for (int i = 0; i < 100; ++i) {
      const double p = pd(rng), x = xd(rng);
      const double h = 1e-6;
      const double num = (fam.eval(p, x + h) - fam.eval(p, x - h)) / (2.0 * h);
      const double ana = fam.deriv(p, x);
      const double scale = std::max({1.0, std::abs(num), std::abs(ana)});
      REQUIRE(std::abs(num - ana) / scale < 1e-5);
    }
  }
}

TEST_CASE("sweep: superattracting and escaping parameters", "[bifurcation]") {
  const BifurcationSweep sa = sweep(z2_even_family(), -1.0, -1.0 + 1e-9, 2, 200, 40, 0.0, 100.0);
  REQUIRE_FALSE(sa.entries[0].escaped);
  bool saw_zero = false, saw_minus1 = false;
  for (double v : sa.entries[0].attractor_samples) {
    if (std::abs(v) < 1e-6) saw_zero = true;
    if (std::abs(v + 1.0) < 1e-6) saw_minus1 = true;
    REQUIRE((std::abs(v) < 1e-6 || std::abs(v + 1.0) < 1e-6));
  }
  REQUIRE(saw_zero);
  REQUIRE(saw_minus1);

  const BifurcationSweep se = sweep(z2_even_family(), -2.1, -2.1 + 1e-9, 2, 1000, 10, 0.0, 100.0);
  REQUIRE(se.entries[0].escaped);
  REQUIRE(se.entries[0].attractor_samples.empty());

  const BifurcationSweep sb = sweep(z3_batch4_family(), 0.0, 0.0 + 1e-9, 2, 100, 10, 0.0, 100.0);
  REQUIRE_FALSE(sb.entries[0].escaped);
  for (double v : sb.entries[0].attractor_samples) REQUIRE(v == 0.0);
}

TEST_CASE("bounded_windows: z3_batch4 has the three desk-scale windows", "[bifurcation]") {
  const auto w = bounded_windows(z3_batch4_family(), -2.5, 1.0, 1200, 1e-6, 0.0, 4000, 100.0);
  REQUIRE(w.size() == 3);
  const double expect[3][2] = {{-2.016, -1.995}, {-1.028, -0.996}, {-0.34, 0.611}};
  for (int i = 0; i < 3; ++i) {
    REQUIRE(w[i].lo == Catch::Approx(expect[i][0]).margin(0.02));
    REQUIRE(w[i].hi == Catch::Approx(expect[i][1]).margin(0.02));
  }
}

TEST_CASE("bounded_windows: z2_even single window with fold left edge", "[bifurcation]") {
  const auto w = bounded_windows(z2_even_family(), -2.5, 1.0, 1200, 1e-6, 0.0, 4000, 100.0);
  REQUIRE(w.size() == 1);
  // left edge is the saddle-node of (x^2-1-a)^2-1 at the positive root of
  // 16 xi^3 + 16 xi^2 - 1
  REQUIRE(w[0].lo == Catch::Approx(-2.0561728852).margin(2e-4));
  REQUIRE(w[0].hi == Catch::Approx(0.6837716).margin(3e-3));
}

TEST_CASE("bounded_windows: empty when every orbit escapes", "[bifurcation]") {
  const auto w = bounded_windows(z2_even_family(), 2.0, 3.0, 200, 1e-6, 0.0, 2000, 100.0);
  REQUIRE(w.empty());
}

TEST_CASE("fixed_point_scan: z2_even events", "[bifurcation]") {
  const auto recs = fixed_point_scan(z2_even_family(), -2.5, 1.0, 1400, 1e-7);
  REQUIRE(has_event(recs, BifurcationEvent::PD, -1.7484727, 1e-3));
  REQUIRE(has_event(recs, BifurcationEvent::PD, -0.4096742, 1e-3));
  REQUIRE(has_event(recs, BifurcationEvent::PD, 0.1581469, 1e-3));
  REQUIRE(has_event(recs, BifurcationEvent::LP, -2.0561729, 1e-3));
  // every reported fixed point satisfies its equation
  const RealMapFamily fam = z2_even_family();
  for (const FixedPointRecord& r : recs)
    REQUIRE(std::abs(fam.eval(r.p, r.xi) - r.xi) <= 1e-10);
}

TEST_CASE("fixed_point_scan: z3_batch4 landmark events", "[bifurcation]") {
  const auto recs = fixed_point_scan(z3_batch4_family(), -2.2, 0.9, 1600, 1e-7, 6.0, 6001);
  // stable-equilibrium interval ends quoted to three decimals
  REQUIRE(has_event(recs, BifurcationEvent::LP, -1.995, 5e-3));
  REQUIRE(has_event(recs, BifurcationEvent::LP, -0.996, 5e-3));
  REQUIRE(has_event(recs, BifurcationEvent::LP, -0.34, 5e-3));
  REQUIRE(has_event(recs, BifurcationEvent::PD, -1.01, 5e-3));
  REQUIRE(has_event(recs, BifurcationEvent::PD, 0.568, 5e-3));
}

TEST_CASE("superattracting_check: node sequences", "[bifurcation]") {
  const PeriodicityReport p1 = superattracting_check(self_drive(-1, -1, {-1, 0}), 1);
  REQUIRE(p1.kind == PeriodicityReport::Kind::periodic);
  REQUIRE(p1.preperiod == 0);
  REQUIRE(p1.period == 4);

  const PeriodicityReport p2 = superattracting_check(self_drive(-0.5, 0.0, {-1, 0}), 1);
  REQUIRE(p2.kind == PeriodicityReport::Kind::preperiodic);
  REQUIRE(p2.preperiod > 0);

  const PeriodicityReport p3 = superattracting_check(self_drive(0.4, 0.4, {0, 0}), 2);
  REQUIRE(p3.kind == PeriodicityReport::Kind::periodic);
  REQUIRE(p3.period == 1);

  REQUIRE_THROWS_AS(superattracting_check(self_drive(0.4, 0.4, {0, 0.5}), 0),
                    std::invalid_argument);
}

TEST_CASE("superattracting_check: real map families", "[bifurcation]") {
  // z2_even at a=-1: critical orbit is the exact 2-cycle {0,-1}
  const PeriodicityReport r = superattracting_check(z2_even_family(), -1.0);
  REQUIRE(r.kind == PeriodicityReport::Kind::periodic);
  REQUIRE(r.period == 2);
  // far outside the window: escape means neither
  const PeriodicityReport e = superattracting_check(z2_even_family(), -2.5);
  REQUIRE(e.kind == PeriodicityReport::Kind::neither);
}

TEST_CASE("windows agree across parameter directions", "[bifurcation]") {
  // refining from either side must give the same fold edge
  const auto a = bounded_windows(z2_even_family(), -2.2, -1.9, 400, 1e-8, 0.0, 4000, 100.0);
  const auto b = bounded_windows(z2_even_family(), -2.0561729 - 0.05, -1.95, 150, 1e-8, 0.0,
                                 4000, 100.0);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  REQUIRE(a[0].lo == Catch::Approx(b[0].lo).margin(1e-5));
}
