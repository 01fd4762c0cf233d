#include <doctest.h>

#include <sstream>

#include "cloning/scan.hpp"
#include "cloning/scan_io.hpp"
#include "oracle.hpp"

using namespace cloning::scan;

TEST_SUITE("scan") {

TEST_CASE("interval endpoints against 50-digit bisection") {
  SweepSpec spec;
  spec.err_mode = ErrMode::thm2_direct;
  spec.c_mode = CMode::ideal_overlap;
  for (double v : {0.0, 0.005, 0.015}) {
    const auto r = violation_interval(v, spec);
    REQUIRE_FALSE(r.empty);
    CHECK_FALSE(r.anomaly);
    if (v == 0.0) {
      CHECK(r.c_lo == doctest::Approx(0.0));
      CHECK(r.c_hi == doctest::Approx(1.0));
      continue;
    }
    CHECK(std::abs(r.c_lo - oracle::bisect_gap(v, 0.0, 0.5)) <= 2 * kAbscissaTol);
    CHECK(std::abs(r.c_hi - oracle::bisect_gap(v, 1.0, 0.5)) <= 2 * kAbscissaTol);
  }
}

TEST_CASE("large noise leaves no violation") {
  SweepSpec spec;
  for (auto e : kAllErrModes) {
    spec.err_mode = e;
    CHECK(violation_interval(0.2, spec).empty);
  }
  spec.err_mode = ErrMode::appendix_err;
  CHECK(violation_interval(0.015, spec).empty);
}

TEST_CASE("critical noise sits on the interval boundary") {
  SweepSpec spec;
  const auto cn = critical_noise(0.5, spec);
  CHECK(cn.monotone);
  CHECK(violation_gap(cn.v_star - 1e-5, 0.5, spec.err_mode, spec.c_mode) > 0.0);
  CHECK(violation_gap(cn.v_star + 1e-5, 0.5, spec.err_mode, spec.c_mode) <= 0.0);
  const auto r = violation_interval(cn.v_star - 1e-5, spec);
  CHECK(r.contains(0.5));
}

TEST_CASE("gap profile serial equals parallel") {
  const auto cs = linspace(0.0, 1.0, 777);
  for (auto e : kAllErrModes) {
    for (auto m : kAllCModes) CHECK(serial::gap_profile(0.01, cs, e, m) == parallel::gap_profile(0.01, cs, e, m));
  }
}

TEST_CASE("mode ranking") {
  const auto ranked = rank_modes(0.015, 0.318, 0.718);
  REQUIRE(ranked.size() == 6);
  CHECK(ranked.front().err_mode == ErrMode::thm2_direct);
  CHECK(ranked.front().c_mode == CMode::ideal_overlap);
  CHECK(ranked.front().endpoint_error <= 0.002);
}

TEST_CASE("mode strings") {
  for (auto e : kAllErrModes) CHECK(err_mode_from_string(to_string(e)) == e);
  for (auto m : kAllCModes) CHECK(c_mode_from_string(to_string(m)) == m);
  CHECK_FALSE(err_mode_from_string("thm2").has_value());
}

TEST_CASE("curve round trips") {
  const auto curves = fidelity_curves(linspace(0.0, 1.0, 11));
  std::stringstream ss;
  write_csv(ss, curves.quantum);
  const auto back = curve_from_csv(ss, curves.quantum.label, curves.quantum.mode);
  CHECK(back.points == curves.quantum.points);
  const auto j = curve_from_json(to_json(curves.noncontextual));
  CHECK(j.points == curves.noncontextual.points);
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("region CSV leaves empty intervals blank") {
  SweepSpec spec;
  std::stringstream ss;
  write_csv(ss, {violation_interval(0.5, spec)});
  CHECK(ss.str() == "v,c_lo,c_hi\n0.5,,\n");
}

TEST_CASE("curve validation") {
  CurveSeries s{"x", "c", "y", "m", {{0.5, 1.0}, {0.4, 1.0}}};
  CHECK_THROWS(s.validate());
  CHECK_THROWS(linspace(0.0, 1.0, 1));
}

}
