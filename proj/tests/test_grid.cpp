#include <doctest.h>

#include <random>
#include <sstream>

#include "burgers/grid.hpp"

using namespace burgers;

TEST_SUITE("grid") {

TEST_CASE("grid spec nodes and invariants") {
  GridSpec g(0.0, 1.0, -1.0, 1.0, 5, 9);
  CHECK(g.t(0) == doctest::Approx(0.0));
  CHECK(g.t(4) == doctest::Approx(1.0));
  CHECK(g.x(4) == doctest::Approx(0.0));
  CHECK(g.dt() == doctest::Approx(0.25));
  CHECK(g.dx() == doctest::Approx(0.25));
  CHECK_THROWS_AS(GridSpec(1.0, 0.0, 0.0, 1.0, 4, 4), PreconditionError);
  CHECK_THROWS_AS(GridSpec(0.0, 1.0, 0.0, 1.0, 1, 4), PreconditionError);
}

TEST_CASE("square mass: atom containment") {
  DiscreteMeasure m;
  m.bounding = Rect{-1, 1, -1, 1};
  m.atoms.push_back({0.0, 0.0, 5.0});
  Square q({0.0, 0.0}, 0.5);
  CHECK(square_mass(m, q) == doctest::Approx(5.0));

  // atom exactly on the edge of the open square is excluded
  DiscreteMeasure edge;
  edge.bounding = m.bounding;
  edge.atoms.push_back({0.5, 0.0, 3.0});
  CHECK(square_mass(edge, q) == doctest::Approx(0.0));
}

TEST_CASE("square mass: clipped stationary line") {
  // density 2/3 through the center, r = 0.25 -> (2/3)*2r = 1/3
  DiscreteMeasure m;
  m.bounding = Rect{0, 1, -1, 1};
  m.segments.push_back({{0.0, 0.0}, {1.0, 0.0}, 2.0 / 3.0});
  CHECK(square_mass(m, Square({0.5, 0.0}, 0.25)) == doctest::Approx(1.0 / 3.0));
  // oblique segment leaving through a lateral side
  DiscreteMeasure s;
  s.bounding = Rect{0, 1, -1, 1};
  s.segments.push_back({{0.0, 0.0}, {1.0, 1.0}, 1.0});  // x = t
  // Q_{0.25}((0.5, 0.6)): t in (0.25,0.75) and x(t)=t in (0.35,0.85)
  CHECK(square_mass(s, Square({0.5, 0.6}, 0.25)) ==
        doctest::Approx(0.75 - 0.35));
}

TEST_CASE("positive part and total variation") {
  DiscreteMeasure m;
  m.bounding = Rect{0, 1, -1, 1};
  m.atoms.push_back({0.2, 0.0, 1.0});
  m.atoms.push_back({0.8, 0.0, -2.0});
  CHECK(total_variation(m) == doctest::Approx(3.0));
  DiscreteMeasure p = positive_part(m);
  REQUIRE(p.atoms.size() == 1);
  CHECK(p.atoms[0].weight == doctest::Approx(1.0));

  DiscreteMeasure neg;
  neg.bounding = m.bounding;
  neg.atoms.push_back({0.5, 0.5, -1.0});
  neg.segments.push_back({{0.0, 0.0}, {1.0, 0.0}, -2.0 / 3.0});
  DiscreteMeasure pn = positive_part(neg);
  CHECK(pn.atoms.empty());
  CHECK(pn.segments.empty());
  CHECK(total_variation(pn) == doctest::Approx(0.0));

  // stationary jump -1|+1 on t in (0,1): |density| = 2/3
  DiscreteMeasure j;
  j.bounding = Rect{0, 1, -1, 1};
  j.segments.push_back({{0.0, 0.0}, {1.0, 0.0}, 2.0 / 3.0});
  CHECK(total_variation(j) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("measure invariants under random inputs") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> pos(-0.8, 0.8), wgt(-2.0, 2.0),
      rad(0.05, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    DiscreteMeasure m;
    m.bounding = Rect{-1, 1, -1, 1};
    int na = 1 + trial % 7;
    for (int k = 0; k < na; ++k) m.atoms.push_back({pos(rng), pos(rng), wgt(rng)});
    if (trial % 3 == 0) {
      double t0 = -0.9, t1 = 0.9;
      m.segments.push_back({{t0, pos(rng)}, {t1, pos(rng)}, wgt(rng)});
    }
    Square q({pos(rng) * 0.4, pos(rng) * 0.4}, rad(rng));
    // positive part dominates on every square
    CHECK(square_mass(positive_part(m), q) >= square_mass(m, q) - 1e-14);
    // total variation dominates any square mass
    CHECK(total_variation(m) >= std::abs(square_mass(m, q)) - 1e-14);
  }
}

TEST_CASE("square mass additive over disjoint squares") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(-0.4, 0.4), wgt(-1.0, 1.0);
  DiscreteMeasure m;
  m.bounding = Rect{-1, 1, -1, 1};
  for (int k = 0; k < 25; ++k) m.atoms.push_back({pos(rng), pos(rng), wgt(rng)});
  // four open quadrant squares tile the big square; atoms on the shared
  // lines would count for neither, but generic data avoids them
  double sum_parts = 0.0;
  for (double ct : {-0.25, 0.25})
    for (double cx : {-0.25, 0.25})
      sum_parts += square_mass(m, Square({ct, cx}, 0.25));
  double whole = square_mass(m, Square({0.0, 0.0}, 0.5));
  CHECK(whole == doctest::Approx(sum_parts).epsilon(1e-12));
}

TEST_CASE("scalar field CSV round trip") {
  GridSpec g(0.0, 1.0, 0.0, 1.0, 3, 4);
  ScalarField f(g);
  for (std::size_t i = 0; i < g.nt; ++i)
    for (std::size_t j = 0; j < g.nx; ++j)
      f.at(i, j) = 0.1 * static_cast<double>(i) - 1.0 / 3.0 * static_cast<double>(j);
  std::stringstream ss;
  f.write_csv(ss);
  ScalarField back = ScalarField::read_csv(ss);
  REQUIRE(back.spec.nt == g.nt);
  REQUIRE(back.spec.nx == g.nx);
  for (std::size_t k = 0; k < f.values.size(); ++k)
    CHECK(back.values[k] == f.values[k]);  // 17 significant digits round-trip
}

TEST_CASE("measure JSON round trip") {
  DiscreteMeasure m;
  m.bounding = Rect{0, 1, -1, 1};
  m.atoms.push_back({0.25, -0.5, 1.5});
  m.segments.push_back({{0.0, 0.1}, {1.0, 0.9}, -2.0 / 3.0});
  DiscreteMeasure back = DiscreteMeasure::from_json(m.to_json());
  REQUIRE(back.atoms.size() == 1);
  REQUIRE(back.segments.size() == 1);
  CHECK(back.atoms[0].weight == m.atoms[0].weight);
  CHECK(back.segments[0].density == m.segments[0].density);
  CHECK(total_variation(back) == doctest::Approx(total_variation(m)));
}

}  // TEST_SUITE
