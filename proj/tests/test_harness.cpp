#include "opcodec/study.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace opcodec;

TEST_CASE("antiderivative of one is the ramp") {
  GridFunction one = GridFunction::constant(Domain::unit_interval(), {257, 1}, 1.0,
                                            SpaceTag::ContinuousSup);
  GridFunction ramp = GridFunction::sample1d(257, [](double x) { return x; });
  CHECK(sup_distance(canonical_apply(CanonicalKind::Antiderivative, one), ramp) <= 1e-10);
}

TEST_CASE("poisson solver against the analytic solution") {
  GridFunction f = GridFunction::sample1d(
      257,
      [](double x) {
        return std::numbers::pi * std::numbers::pi * std::sin(std::numbers::pi * x);
      });
  GridFunction u = canonical_apply(CanonicalKind::Poisson1D, f);
  GridFunction exact = GridFunction::sample1d(
      257, [](double x) { return std::sin(std::numbers::pi * x); });
  CHECK(sup_distance(u, exact) <= 1e-3);
  CHECK(u.values()[0] == 0.0);
  CHECK(u.values()[256] == 0.0);

  // Second-order convergence oracle: halving h cuts the error about 4x.
  GridFunction f_coarse = GridFunction::sample1d(
      129,
      [](double x) {
        return std::numbers::pi * std::numbers::pi * std::sin(std::numbers::pi * x);
      });
  GridFunction exact_coarse = GridFunction::sample1d(
      129, [](double x) { return std::sin(std::numbers::pi * x); });
  const double err_coarse =
      sup_distance(canonical_apply(CanonicalKind::Poisson1D, f_coarse), exact_coarse);
  const double err_fine = sup_distance(u, exact);
  CHECK(err_coarse / err_fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("pointwise sine of zero is zero") {
  GridFunction zero = GridFunction::constant(Domain::unit_interval(), {65, 1}, 0.0,
                                             SpaceTag::ContinuousSup);
  CHECK(sup_norm(canonical_apply(CanonicalKind::PointwiseSin, zero)) == 0.0);
}

TEST_CASE("sine modes family basics") {
  CompactFamily trivial = make_family(SineModesSpec{1, {0.0}}, 129, SpaceTag::ContinuousSup);
  REQUIRE(trivial.size() == 1);
  CHECK(sup_norm(trivial.members()[0]) == 0.0);

  CompactFamily four = make_family(SineModesSpec{2, {-1.0, 1.0}}, 129, SpaceTag::ContinuousSup);
  CHECK(four.size() == 4);

  CHECK_THROWS_AS(make_family(SineModesSpec{2, {}}, 129, SpaceTag::ContinuousSup),
                  std::invalid_argument);
}

TEST_CASE("sine modes Lipschitz bound dominates a numeric derivative sweep") {
  const SineModesSpec spec{2, {-1.0, 1.0}};
  const double bound = sine_modes_lipschitz_bound(spec);
  CHECK(bound == doctest::Approx(std::numbers::pi * 1.5).epsilon(1e-12));
  // Oracle: max |f'| over members and a fine sweep must stay below the bound.
  CompactFamily family = make_family(spec, 2049, SpaceTag::C1);
  double measured = 0.0;
  for (const GridFunction& f : family.members()) {
    measured = std::max(measured, f.derivative_values().cwiseAbs().maxCoeff());
  }
  CHECK(measured <= bound + 1e-12);
  CHECK(measured >= 0.5 * bound);  // the bound is not wildly loose
}

TEST_CASE("gaussian bumps family") {
  CompactFamily family =
      make_family(GaussianBumpsSpec{{0.5, 0.75}, 0.1}, 257, SpaceTag::ContinuousSup);
  REQUIRE(family.size() == 2);
  CHECK(evaluate(family.members()[0], 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(family.lipschitz_bound().value() ==
        doctest::Approx(std::exp(-0.5) / 0.1).epsilon(1e-12));
}

TEST_CASE("identity study error column decreases") {
  CodecPlan plan;
  plan.family = CodecFamily::Sampling;
  StudyReport report = identity_study(plan, {4, 8, 16}, "sine2", 257);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].sup_error > report.rows[1].sup_error);
  CHECK(report.rows[1].sup_error > report.rows[2].sup_error);
  for (const StudyRow& row : report.rows) {
    CHECK(row.sup_error >= 0.0);
    CHECK(std::isfinite(row.sup_error));
  }
}

TEST_CASE("identity study covers all codec families") {
  for (CodecFamily family : {CodecFamily::SineONB, CodecFamily::LegendreONB,
                             CodecFamily::FaberSchauder, CodecFamily::Frame,
                             CodecFamily::Dense}) {
    CodecPlan plan;
    plan.family = family;
    StudyReport report = identity_study(plan, {4, 16}, "sine2", 257);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[1].sup_error <= report.rows[0].sup_error + 1e-12);
  }
}

TEST_CASE("convergence study fits once per n and rows are bookkept") {
  CodecPlan plan;
  plan.family = CodecFamily::Sampling;
  FitConfig cfg;
  cfg.seed = 7;
  cfg.degree = 1;
  cfg.family = LatentFamily::Polynomial;
  StudyReport report = convergence_study(CanonicalKind::Antiderivative, plan, {4}, "sine2",
                                         {}, cfg, 257);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].family == "sine2");
  CHECK(report.rows[0].n == 4);
}

TEST_CASE("convergence study improves on train and disjoint test families") {
  CodecPlan plan;
  plan.family = CodecFamily::Sampling;
  FitConfig cfg;
  cfg.seed = 7;
  cfg.degree = 1;
  cfg.family = LatentFamily::Polynomial;
  StudyReport report = convergence_study(CanonicalKind::Antiderivative, plan, {4, 8, 16},
                                         "sine2", {"sine2b"}, cfg, 257);
  REQUIRE(report.rows.size() == 6);
  auto error_of = [&](int n, const std::string& fam) {
    for (const StudyRow& row : report.rows) {
      if (row.n == n && row.family == fam) return row.sup_error;
    }
    FAIL("row not found");
    return 0.0;
  };
  CHECK(error_of(8, "sine2") < error_of(4, "sine2"));
  CHECK(error_of(16, "sine2") < error_of(8, "sine2"));
  CHECK(error_of(8, "sine2b") < error_of(4, "sine2b"));
  CHECK(error_of(16, "sine2b") < error_of(8, "sine2b"));
}

TEST_CASE("canonical operators are discretely continuous") {
  // Statistical check: small sup perturbations produce bounded output moves.
  Rng rng(95);
  for (CanonicalKind kind : {CanonicalKind::Antiderivative, CanonicalKind::Poisson1D,
                             CanonicalKind::PointwiseSin}) {
    for (int rep = 0; rep < 20; ++rep) {
      GridFunction f = testing::random_smooth(rng, 257, SpaceTag::ContinuousSup);
      GridFunction delta = 1e-4 * testing::random_smooth(rng, 257, SpaceTag::ContinuousSup);
      const double in_move = sup_norm(delta);
      const double out_move =
          sup_distance(canonical_apply(kind, f + delta), canonical_apply(kind, f));
      CHECK(out_move <= 5.0 * in_move + 1e-14);
    }
  }
}

TEST_CASE("report csv schema and determinism of the writer") {
  StudyReport report;
  StudyRow row;
  row.arch_id = "unit";
  row.n = 4;
  row.family = "sine2";
  row.sup_error = 0.125;
  row.latent_residual = 1e-9;
  row.extrapolated = 2;
  row.wall_ms = 123.4;  // measured time must not leak into the bytes
  report.rows.push_back(row);
  std::ostringstream a;
  write_report_csv(report, a);
  CHECK(a.str() ==
        "arch_id,n,family,sup_error,latent_residual,extrapolated,wall_ms\n"
        "unit,4,sine2,0.125,1.0000000000000001e-09,2,0\n");
}

TEST_CASE("svg writer emits a line chart") {
  StudyReport report;
  for (int n : {4, 8, 16}) {
    StudyRow row;
    row.arch_id = "unit";
    row.n = n;
    row.family = "sine2";
    row.sup_error = 1.0 / n;
    report.rows.push_back(row);
  }
  const auto path = std::filesystem::temp_directory_path() / "opcodec_test.svg";
  write_svg(report, path);
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string svg = buffer.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("width=\"800\"") != std::string::npos);
  CHECK(svg.find("height=\"600\"") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("study rejects unsorted n lists") {
  CodecPlan plan;
  FitConfig cfg;
  CHECK_THROWS_AS(identity_study(plan, {8, 4}, "sine2", 129), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(CanonicalKind::Antiderivative, plan, {}, "sine2", {},
                                    cfg, 129),
                  std::invalid_argument);
}
