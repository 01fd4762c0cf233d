#include <doctest.h>

#include <random>
#include <stdexcept>

#include "cloning/bounds.hpp"
#include "cloning/ontic.hpp"
#include "cloning/ontic_json.hpp"
#include "oracle.hpp"

using namespace cloning::ontic;

TEST_SUITE("ontic") {

TEST_CASE("grid and state validation") {
  CHECK_THROWS(LambdaGrid(3, 10));
  CHECK_THROWS(LambdaGrid(1, 2));
  const LambdaGrid g(1, 10);
  CHECK(g.cell_width() == doctest::Approx(0.2));
  CHECK_THROWS(EpistemicState(g, std::vector<double>(10, 1.0)));
  CHECK_NOTHROW(EpistemicState::uniform(g));
  std::vector<double> bad(10, 0.5);
  bad[0] = -0.5;
  bad[1] = 1.5;
  CHECK_THROWS(EpistemicState(g, bad));
  CHECK_THROWS(ResponseFunction(g, std::vector<double>(10, 1.2)));
}

TEST_CASE("stochastic map rows must sum to one") {
  const LambdaGrid g(1, 4);
  std::vector<double> rows(16, 0.25);
  CHECK_NOTHROW(StochasticMap::dense(g, g, rows));
  rows[0] = 0.5;
  CHECK_THROWS(StochasticMap::dense(g, g, rows));
}

TEST_CASE("saturating model across overlaps") {
  for (double c : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    const auto sat = build_saturating_model(c, 200);
    const auto& m = sat.model;
    CHECK(check_O1(m).ok());
    CHECK(check_O2(m).ok());
    CHECK(global_fidelity(m) == doctest::Approx(cloning::bounds::nc_bound_ideal(c, c * c)).epsilon(1e-12));
    CHECK(confusability(m.state(Prep::a), m.response(Test::b)) == doctest::Approx(c).epsilon(1e-12));
    for (const auto& p : m.pairs) CHECK(verify_sandwich_ideal(m, p).pass());
  }
}

TEST_CASE("overlap snapping warns") {
  const auto sat = build_saturating_model(0.333, 20);
  CHECK(sat.model.c_used == doctest::Approx(0.3));
  CHECK_FALSE(sat.model.warnings.empty());
  CHECK_THROWS(build_saturating_model(0.5, 21));
}

TEST_CASE("ideal sandwich refuses models without O2") {
  auto m = build_saturating_model(0.5, 40).model;
  m = mix_with_uniform(m, 0.1);
  CHECK_NOTHROW(verify_sandwich_ideal(build_saturating_model(0.5, 40).model, {Test::a, Test::b}));
  CHECK_THROWS_AS(verify_sandwich_ideal(m, {Test::a, Test::b}), std::logic_error);
}

TEST_CASE("serial and parallel quadrature agree") {
  std::mt19937_64 rng(7);
  const LambdaGrid g1(1, 64), g2(2, 64);
  for (int k = 0; k < 10; ++k) {
    const EpistemicState mu(g2, oracle::random_density(rng, g2));
    const EpistemicState nu(g2, oracle::random_density(rng, g2));
    CHECK(l1_distance(mu, nu) == doctest::Approx(serial::l1_distance(mu, nu)).epsilon(1e-13));
    const ResponseFunction xi(g2, std::vector<double>(g2.cells(), 0.3));
    CHECK(confusability(mu, xi) == doctest::Approx(serial::confusability(mu, xi)).epsilon(1e-13));
    const auto t = oracle::random_map(rng, g1, g2);
    const EpistemicState in(g1, oracle::random_density(rng, g1));
    const auto a = apply_map(t, in).density();
    const auto b = serial::apply_map(t, in).density();
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST_CASE("data processing inequality on random cases") {
  std::mt19937_64 rng(20240611);
  const LambdaGrid src(1, 16), dst(1, 24);
  for (int k = 0; k < 50; ++k) {
    const auto t = oracle::random_map(rng, src, dst);
    const EpistemicState mu(src, oracle::random_density(rng, src));
    const EpistemicState nu(src, oracle::random_density(rng, src));
    CHECK(dpi_check(t, mu, nu).holds);
  }
}

TEST_CASE("JSON round trip") {
  const auto sat = build_saturating_model(0.3, 20);
  const auto doc = to_json(sat.model, sat.overlap_cells);
  const auto back = model_from_json(nlohmann::json::parse(doc.dump()));
  CHECK(global_fidelity(back) == global_fidelity(sat.model));
  CHECK(to_json(back, sat.overlap_cells) == doc);

  const auto sparse_doc = to_json(sat.model);
  const auto back2 = model_from_json(sparse_doc);
  CHECK(global_fidelity(back2) == global_fidelity(sat.model));

  auto broken = doc;
  broken["format"] = "something-else";
  CHECK_THROWS(model_from_json(broken));
}

}
