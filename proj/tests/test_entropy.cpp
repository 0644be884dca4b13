#include <cmath>

#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "oracles.hpp"
#include "walkgauge/entropy.hpp"

using namespace walkgauge;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("entropy of K2 is ln 2 at every beta") {
  const Spectrum s = eigendecompose(generate(FamilySpec::complete(2)));
  for (double beta : {1e-3, 1.0, 30.0}) CHECK_THAT(walk_entropy(s, beta).entropy, WithinAbs(std::log(2.0), 1e-14));
}

TEST_CASE("path on three vertices at reference betas") {
  // Reference values from 30-digit evaluation of cosh(β√2).
  struct Ref {
    double beta, entropy, deficit, sigma, normalized;
  };
  const Ref refs[] = {
      {0.5, 1.0972590184098172, 0.0013532702582924592, 0.0010714216765840608, 0.00030427883804715811},
      {1.0, 1.0868939331439245, 0.011718355524185161, 0.014397366968675931, 0.0026878977232814394},
      {2.0, 1.0574506919710306, 0.041161596697079108, 0.17331316819514523, 0.0096403270863521245},
  };
  const Spectrum s = eigendecompose(generate(FamilySpec::path(3)));
  for (const Ref& r : refs) {
    CAPTURE(r.beta);
    const EntropyPoint pt = walk_entropy(s, r.beta);
    CHECK_THAT(pt.entropy, WithinAbs(r.entropy, 1e-12));
    CHECK_THAT(pt.entropy_via_z, WithinAbs(r.entropy, 1e-12));
    CHECK_THAT(pt.deficit, WithinAbs(r.deficit, 1e-12));
    CHECK_THAT(pt.diag_variance, WithinRel(r.sigma, 1e-10));
    CHECK_THAT(pt.normalized_diag_variance, WithinRel(r.normalized, 1e-10));
  }
}

TEST_CASE("entropy agrees with the Taylor-series reference") {
  for (const auto& e : corpus::all()) {
    if (e.graph.vertex_count() > 12) continue;
    CAPTURE(e.name);
    for (double beta : {0.5, 1.0, 2.0}) {
      const double ref = static_cast<double>(oracle::entropy_of(oracle::taylor_exp_diagonal(e.graph, beta)));
      CHECK_THAT(walk_entropy(e.graph, beta).entropy, WithinAbs(ref, 1e-10));
    }
  }
}

TEST_CASE("edgeless graph has maximal entropy and zero sigma") {
  const EntropyPoint pt = walk_entropy(Graph::edgeless(5), 3.0);
  CHECK_THAT(pt.entropy, WithinAbs(std::log(5.0), 1e-14));
  CHECK(pt.diag_variance == 0);
  CHECK(pt.normalized_diag_variance == 0);
}

TEST_CASE("diagonal variance helper") {
  const std::vector<double> d{1, 2, 3};
  CHECK_THAT(diagonal_variance(d), WithinRel(1.0 / 9.0, 1e-15));
  const std::vector<double> zero{0, 0};
  CHECK_THROWS_AS(diagonal_variance(zero), InvalidArgument);
  const std::vector<double> flat{4, 4, 4, 4};
  CHECK(diagonal_variance(flat) == 0);
}

TEST_CASE("Borwein-Girgensohn constant and check") {
  CHECK(bg_constant(1) == 2.0);
  CHECK(bg_constant(4) == 2.0);
  CHECK_THAT(bg_constant(5), WithinRel(2.1746254627672362, 1e-15));
  const std::vector<double> zeros(6, 0.0);
  const BgCheck c = bg_bound_check(zeros, 6);
  CHECK(c.hypothesis_met);
  CHECK(c.slack == 0);
  CHECK(c.holds());
  const std::vector<double> negative{-1, -1, 0.5};
  CHECK_FALSE(bg_bound_check(negative, 3).hypothesis_met);
}

TEST_CASE("beta to infinity limits") {
  SECTION("star K1,3") {
    const Spectrum s = eigendecompose(generate(FamilySpec::star(4)));
    CHECK_THAT(limit_infinity_entropy(s), WithinAbs(1.2424533248940002, 1e-12));
  }
  SECTION("path P3") {
    const Spectrum s = eigendecompose(generate(FamilySpec::path(3)));
    CHECK_THAT(limit_infinity_entropy(s), WithinAbs(1.5 * std::log(2.0), 1e-12));
    CHECK_THAT(walk_entropy(s, 40.0).entropy, WithinAbs(1.5 * std::log(2.0), 1e-12));
  }
  SECTION("regular graphs reach ln n") {
    const Spectrum s = eigendecompose(generate(FamilySpec::twin_k4e()));
    CHECK_THAT(limit_infinity_entropy(s), WithinAbs(std::log(8.0), 1e-12));
  }
  SECTION("repeated top eigenvalue") {
    const Spectrum s = eigendecompose(corpus::c3_union_c4());
    CHECK_THAT(limit_infinity_entropy(s), WithinAbs(std::log(7.0), 1e-12));
    CHECK_THAT(limit_infinity_entropy_projector(s), WithinAbs(0.5 * std::log(48.0), 1e-12));
    CHECK_THAT(walk_entropy(s, 40.0).entropy, WithinAbs(0.5 * std::log(48.0), 1e-12));
  }
}

TEST_CASE("entropy two routes agree and stay bounded across the corpus") {
  const auto grid = default_grid();
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    const Spectrum s = eigendecompose(e.graph);
    const double ln_n = std::log(static_cast<double>(s.n));
    for (double beta : grid) {
      const EntropyPoint pt = walk_entropy(s, beta);
      CHECK(std::abs(pt.entropy - pt.entropy_via_z) <= kIdentityTolerance);
      CHECK(pt.entropy <= ln_n + 1e-12);
      CHECK(pt.hadamard_slack >= -kInequalityTolerance);
      if (pt.bg_hypothesis_met) CHECK(pt.bg_slack >= -kInequalityTolerance);
    }
  }
}

TEST_CASE("entropy at very large beta") {
  const EntropyPoint pt = walk_entropy(generate(FamilySpec::star(5)), 1e6);
  CHECK(pt.limit_substituted);
  CHECK(std::isfinite(pt.entropy));
  CHECK_THROWS_AS(walk_entropy(generate(FamilySpec::star(5)), -1.0), InvalidArgument);
}

TEST_CASE("grids") {
  const auto g = log_spaced_grid(1e-3, 40.0, 41);
  CHECK(g.size() == 41);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 40.0);
  CHECK(linear_grid(0, 1, 3) == std::vector<double>{0, 0.5, 1});
  CHECK_THROWS_AS(log_spaced_grid(0, 1, 3), InvalidArgument);
  const std::vector<double> bad{1.0, 0.5};
  CHECK_THROWS_AS(validate_grid(bad), InvalidArgument);
}

TEST_CASE("entropy profiles") {
  const auto grid = default_grid();
  SECTION("cycle is flat at ln n") {
    const auto prof = entropy_profile(generate(FamilySpec::cycle(6)), grid);
    CHECK(prof.max_deficit() <= 1e-12);
    CHECK_THAT(prof.limit_infinity_deficit(), WithinAbs(0, 1e-12));
  }
  SECTION("path deficit grows toward its limit") {
    const auto prof = entropy_profile(generate(FamilySpec::path(3)), grid);
    for (std::size_t i = 1; i < prof.points.size(); ++i)
      CHECK(prof.points[i].deficit >= prof.points[i - 1].deficit - 1e-15);
    CHECK_THAT(prof.limit_infinity_deficit(), WithinAbs(std::log(3.0) - 1.5 * std::log(2.0), 1e-12));
  }
  SECTION("regular non-walk-regular deficit rises and falls") {
    const auto prof = entropy_profile(generate(FamilySpec::twin_k4e()), grid, ProfileOptions{.refine_rounds = 3});
    CHECK(prof.max_deficit() > 1e-3);
    CHECK(prof.points.front().deficit < 1e-9);
    CHECK(prof.points.back().deficit < 1e-9);
    CHECK_THAT(prof.limit_infinity_deficit(), WithinAbs(0, 1e-12));
    CHECK(prof.gap_estimate <= 1e-12);
    CHECK_FALSE(prof.refined.empty());
  }
}

TEST_CASE("classification") {
  CHECK(classify(generate(FamilySpec::petersen())).label == WalkClass::walk_regular);
  const auto twin = classify(generate(FamilySpec::twin_k4e()));
  CHECK(twin.label == WalkClass::regular_not_walk_regular);
  CHECK_THAT(twin.deficit_at_one, WithinAbs(0.001402, 5e-7));
  CHECK(twin.warnings.empty());
  CHECK(classify(generate(FamilySpec::star(5))).label == WalkClass::non_regular);

  const auto split = classify(corpus::c3_union_c4());
  CHECK(split.label == WalkClass::regular_not_walk_regular);
  CHECK(split.warnings.size() == 2);

  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    CHECK(classify(e.graph).label == e.expected);
  }
  CHECK(to_string(WalkClass::regular_not_walk_regular) == "RegularNotWalkRegular");
}

TEST_CASE("walk-regularity matches maximal entropy at beta = 1") {
  for (const auto& e : corpus::connected()) {
    CAPTURE(e.name);
    const auto r = equivalence_check(e.graph);
    CHECK(r.agree);
    CHECK(r.exact_walk_regular == (e.expected == WalkClass::walk_regular));
  }
}

TEST_CASE("sigma_d profile") {
  const auto grid = log_spaced_grid(0.05, 40.0, 30);
  SECTION("walk-regular graphs have zero variance") {
    for (const auto& p : sigma_d_profile(generate(FamilySpec::hypercube(3)), grid).points)
      CHECK(p.sigma_d2 <= 1e-12);
  }
  SECTION("regular non-walk-regular variance is positive and decays after normalization") {
    const auto prof = sigma_d_profile(generate(FamilySpec::twin_k4e()), grid);
    for (const auto& p : prof.points) CHECK(p.sigma_d2 > 0);
    CHECK_FALSE(prof.floor.has_value());
  }
  SECTION("non-regular floor is positive") {
    const auto prof = sigma_d_profile(generate(FamilySpec::star(5)), grid);
    REQUIRE(prof.floor.has_value());
    CHECK(*prof.floor > 0);
  }
}
