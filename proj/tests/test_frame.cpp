#include "opcodec/frame.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace opcodec;

namespace {

GridFunction sine_mode(int k, Eigen::Index nodes) {
  return GridFunction::sample1d(
      nodes,
      [k](double x) { return std::numbers::sqrt2 * std::sin(k * std::numbers::pi * x); },
      SpaceTag::L2);
}

// Three unit vectors at 120 degrees inside the span of two discretely
// orthonormal sine modes.
std::vector<GridFunction> mercedes_atoms(Eigen::Index nodes) {
  GridFunction u1 = sine_mode(1, nodes);
  GridFunction u2 = sine_mode(2, nodes);
  std::vector<GridFunction> atoms;
  for (int i = 0; i < 3; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / 3.0;
    atoms.push_back(std::cos(theta) * u1 + std::sin(theta) * u2);
  }
  return atoms;
}

}  // namespace

TEST_CASE("Mercedes-Benz frame bounds and canonical dual") {
  const std::vector<GridFunction> atoms = mercedes_atoms(1025);
  FrameSystem fs = build_frame(atoms);

  // Eigen-oracle: the 2x2 frame operator sum_i c_i c_i^T with
  // c_i = (cos th_i, sin th_i) has the double eigenvalue 3/2.
  Eigen::Matrix2d s = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 3; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / 3.0;
    Eigen::Vector2d c(std::cos(theta), std::sin(theta));
    s += c * c.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(s);
  CHECK(eig.eigenvalues()[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(eig.eigenvalues()[1] == doctest::Approx(1.5).epsilon(1e-12));

  CHECK(std::abs(fs.lower_bound - 1.5) <= 1e-10);
  CHECK(std::abs(fs.upper_bound - 1.5) <= 1e-10);
  for (int i = 0; i < 3; ++i) {
    CHECK(l2_norm(fs.dual_atoms[i] - (2.0 / 3.0) * fs.atoms[i]) <= 1e-10);
  }
}

TEST_CASE("orthonormal atoms give the identity frame operator") {
  std::vector<GridFunction> atoms;
  for (int k = 1; k <= 4; ++k) atoms.push_back(sine_mode(k, 1025));
  FrameSystem fs = build_frame(atoms);
  CHECK(fs.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fs.upper_bound == doctest::Approx(1.0).epsilon(1e-9));
  for (size_t i = 0; i < atoms.size(); ++i) {
    CHECK(l2_norm(fs.dual_atoms[i] - fs.atoms[i]) <= 1e-9);
  }
}

TEST_CASE("single atom frame") {
  std::vector<GridFunction> atoms{2.0 * sine_mode(1, 1025)};  // norm^2 = 4
  FrameSystem fs = build_frame(atoms);
  CHECK(fs.lower_bound == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(fs.upper_bound == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(l2_norm(fs.dual_atoms[0] - 0.25 * atoms[0]) <= 1e-8);
}

TEST_CASE("degenerate all-zero frame is rejected") {
  std::vector<GridFunction> atoms{
      GridFunction::constant(Domain::unit_interval(), {65, 1}, 0.0, SpaceTag::L2)};
  CHECK_THROWS_AS(build_frame(atoms), std::runtime_error);
}

TEST_CASE("frame codec reconstructs the span and kills its complement") {
  const std::vector<GridFunction> atoms = mercedes_atoms(1025);
  FrameSystem fs = build_frame(atoms);
  Encoder enc = frame_encoder(fs);
  Decoder dec = frame_decoder(fs);
  auto tn = compose_identity(enc, dec);

  Rng rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    GridFunction f =
        rng.uniform(-2.0, 2.0) * sine_mode(1, 1025) + rng.uniform(-2.0, 2.0) * sine_mode(2, 1025);
    CHECK(l2_norm(tn(f) - f) <= 1e-8);
    // Frame inequality with the eigen-oracle bounds.
    const double norm_sq = l2_inner(f, f);
    const double energy = frame_energy(fs, f);
    CHECK(energy >= fs.lower_bound * norm_sq - 1e-8);
    CHECK(energy <= fs.upper_bound * norm_sq + 1e-8);
  }

  GridFunction perp = sine_mode(3, 1025);
  CHECK(l2_norm(tn(perp)) <= 1e-8);
}

TEST_CASE("frame projection is idempotent on the span") {
  const std::vector<GridFunction> atoms = mercedes_atoms(513);
  FrameSystem fs = build_frame(atoms);
  auto tn = compose_identity(frame_encoder(fs), frame_decoder(fs));
  Rng rng(62);
  for (int rep = 0; rep < 20; ++rep) {
    GridFunction f = testing::random_smooth(rng, 513, SpaceTag::L2);
    GridFunction once = tn(f);
    CHECK(l2_norm(tn(once) - once) <= 1e-8);
  }
}

TEST_CASE("frame encoder and decoder are linear") {
  FrameSystem fs = build_frame(mercedes_atoms(513));
  Encoder enc = frame_encoder(fs);
  Decoder dec = frame_decoder(fs);
  Rng rng(63);
  for (int rep = 0; rep < 25; ++rep) {
    GridFunction f = testing::random_smooth(rng, 513, SpaceTag::L2);
    GridFunction g = testing::random_smooth(rng, 513, SpaceTag::L2);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    CHECK((enc.apply(a * f + b * g) - a * enc.apply(f) - b * enc.apply(g))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    const Eigen::VectorXd mu = rng.uniform_vector(3, -1.0, 1.0);
    const Eigen::VectorXd nu = rng.uniform_vector(3, -1.0, 1.0);
    CHECK(l2_norm(dec.apply(a * mu + b * nu) - (a * dec.apply(mu) + b * dec.apply(nu))) <=
          1e-10);
  }
}

TEST_CASE("frame encoder wants L2 input") {
  FrameSystem fs = build_frame(mercedes_atoms(257));
  Encoder enc = frame_encoder(fs);
  GridFunction continuous = GridFunction::sample1d(257, [](double x) { return x; });
  CHECK_THROWS_AS(enc.apply(continuous), std::invalid_argument);
}

TEST_CASE("overcomplete frame keeps reconstruction (rank-deficient Gram)") {
  // Two copies of the same direction plus an orthogonal one.
  std::vector<GridFunction> atoms{sine_mode(1, 513), sine_mode(1, 513), sine_mode(2, 513)};
  FrameSystem fs = build_frame(atoms);
  auto tn = compose_identity(frame_encoder(fs), frame_decoder(fs));
  GridFunction f = 0.7 * sine_mode(1, 513) + (-0.4) * sine_mode(2, 513);
  CHECK(l2_norm(tn(f) - f) <= 1e-8);
  CHECK(fs.upper_bound == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fs.lower_bound == doctest::Approx(1.0).epsilon(1e-6));
}
