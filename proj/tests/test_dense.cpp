#include "opcodec/dense.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace opcodec;

namespace {

const BasisSpec kSine{BasisKind::SineONB};

GridFunction sine_mode(int k, Eigen::Index nodes) {
  return GridFunction::sample1d(
      nodes,
      [k](double x) { return std::numbers::sqrt2 * std::sin(k * std::numbers::pi * x); },
      SpaceTag::L2);
}

}  // namespace

TEST_CASE("zero perturbation reproduces the exact projection") {
  for (int n : {1, 3, 6}) {
    DenseCodec codec = dense_substitution_codec(n, kSine, zero_perturber(),
                                                Domain::unit_interval(), {513, 1});
    CHECK(codec.substitution.total_drift == 0.0);
    Encoder onb_enc = basis_encoder(kSine, n);
    Decoder onb_dec = basis_decoder(kSine, n, Domain::unit_interval(), {513, 1});
    Rng rng(71);
    for (int rep = 0; rep < 10; ++rep) {
      GridFunction f = testing::random_smooth(rng, 513, SpaceTag::L2);
      GridFunction exact = onb_dec.apply(onb_enc.apply(f));
      GridFunction substituted = codec.decoder.apply(codec.encoder.apply(f));
      CHECK(l2_norm(exact - substituted) <= 1e-12);
    }
  }
}

TEST_CASE("substitution respects the total budget") {
  for (int n : {2, 4, 8}) {
    DenseCodec codec =
        dense_substitution_codec(n, kSine, seeded_mode_perturber(9, 0.5, n),
                                 Domain::unit_interval(), {513, 1});
    CHECK(codec.substitution.total_drift <= 1.0 / (3.0 * n) + 1e-12);
    double measured = 0.0;
    for (size_t i = 0; i < codec.substitution.substitute_atoms.size(); ++i) {
      measured += l2_norm(codec.substitution.substitute_atoms[i] -
                          codec.substitution.reference_atoms[i]);
    }
    CHECK(measured <= 1.0 / (3.0 * n) + 1e-12);
  }
}

TEST_CASE("proof inequality: substituted projection stays within |f|/n") {
  Rng rng(72);
  for (int n : {2, 4, 8}) {
    DenseCodec codec =
        dense_substitution_codec(n, kSine, seeded_mode_perturber(13, 0.7, n),
                                 Domain::unit_interval(), {1025, 1});
    Encoder onb_enc = basis_encoder(kSine, n);
    Decoder onb_dec = basis_decoder(kSine, n, Domain::unit_interval(), {1025, 1});
    for (int rep = 0; rep < 50; ++rep) {
      GridFunction f = testing::random_smooth(rng, 1025, SpaceTag::L2);
      GridFunction exact = onb_dec.apply(onb_enc.apply(f));
      GridFunction substituted = codec.decoder.apply(codec.encoder.apply(f));
      CHECK(l2_norm(substituted - exact) <= l2_norm(f) / n + 1e-12);
    }
  }
}

TEST_CASE("closed-form n=1 substitution matches the expansion") {
  // v_1 = b_1 + delta b_2 with |delta| = 1/3 (exactly the n=1 budget).
  const Eigen::Index nodes = 1025;
  auto perturber = [nodes](Eigen::Index, const GridFunction&) {
    return (1.0 / 3.0) * sine_mode(2, nodes);
  };
  DenseCodec codec =
      dense_substitution_codec(1, kSine, perturber, Domain::unit_interval(), {nodes, 1});
  GridFunction b1 = sine_mode(1, nodes);
  GridFunction out = codec.decoder.apply(codec.encoder.apply(b1));
  // <b1, v1> = 1, so the image is v1 itself; deviation from b1 is |delta|.
  GridFunction v1 = codec.substitution.substitute_atoms[0];
  CHECK(l2_norm(out - v1) <= 2e-4);
  CHECK(l2_norm(out - b1) <= 1.0 * l2_norm(b1) + 1e-12);
  CHECK(l2_norm(v1 - b1) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("oversized perturbations are rescaled, not rejected") {
  DenseCodec codec = dense_substitution_codec(4, kSine, seeded_mode_perturber(5, 50.0, 4),
                                              Domain::unit_interval(), {513, 1});
  CHECK(codec.substitution.total_drift <= 1.0 / 12.0 + 1e-12);
  CHECK(codec.substitution.total_drift > 0.0);
}

TEST_CASE("normed substitution codec obeys the composite bound") {
  const Eigen::Index nodes = 1025;
  const Eigen::Index n = 4;
  Encoder base_enc = basis_encoder(kSine, n);
  std::vector<GridFunction> base_atoms;
  for (Eigen::Index i = 0; i < n; ++i) {
    base_atoms.push_back(basis_atom(kSine, i, Domain::unit_interval(), {nodes, 1}));
  }
  auto l2 = [](const GridFunction& f) { return l2_norm(f); };

  SUBCASE("zero perturbation collapses to the base projection") {
    NormedDenseCodec codec = normed_substitution_codec(base_enc, base_atoms, zero_perturber(),
                                                       onb_per_atom_budget(n), l2);
    Decoder base_dec = basis_decoder(kSine, n, Domain::unit_interval(), {nodes, 1});
    Rng rng(73);
    for (int rep = 0; rep < 10; ++rep) {
      GridFunction f = testing::random_smooth(rng, nodes, SpaceTag::L2);
      CHECK(l2_norm(codec.dense_decoder.apply(codec.auxiliary_encoder.apply(f)) -
                    base_dec.apply(base_enc.apply(f))) <= 1e-12);
    }
  }

  SUBCASE("budgeted perturbation keeps |T~f - Tf| <= |f|/n") {
    NormedDenseCodec codec = normed_substitution_codec(
        base_enc, base_atoms, seeded_mode_perturber(31, 1.0, n), onb_per_atom_budget(n), l2);
    CHECK(codec.max_atom_drift <= onb_per_atom_budget(n) + 1e-15);
    Decoder base_dec = basis_decoder(kSine, n, Domain::unit_interval(), {nodes, 1});
    Rng rng(74);
    for (int rep = 0; rep < 50; ++rep) {
      GridFunction f = testing::random_smooth(rng, nodes, SpaceTag::L2);
      const double drift =
          l2_norm(codec.dense_decoder.apply(codec.auxiliary_encoder.apply(f)) -
                  base_dec.apply(base_enc.apply(f)));
      CHECK(drift <= l2_norm(f) / static_cast<double>(n) + 1e-12);
    }
  }

  SUBCASE("zero input maps to zero") {
    NormedDenseCodec codec = normed_substitution_codec(
        base_enc, base_atoms, seeded_mode_perturber(32, 1.0, n), onb_per_atom_budget(n), l2);
    GridFunction zero =
        GridFunction::constant(Domain::unit_interval(), {nodes, 1}, 0.0, SpaceTag::L2);
    CHECK(l2_norm(codec.dense_decoder.apply(codec.auxiliary_encoder.apply(zero))) <= 1e-14);
  }

  SUBCASE("missing atoms are a configuration error") {
    CHECK_THROWS_AS(normed_substitution_codec(base_enc, {}, zero_perturber(),
                                              onb_per_atom_budget(n), l2),
                    std::invalid_argument);
  }
}

TEST_CASE("dense encoder and decoder are linear") {
  DenseCodec codec = dense_substitution_codec(5, kSine, seeded_mode_perturber(3, 0.4, 5),
                                              Domain::unit_interval(), {513, 1});
  Rng rng(75);
  for (int rep = 0; rep < 25; ++rep) {
    GridFunction f = testing::random_smooth(rng, 513, SpaceTag::L2);
    GridFunction g = testing::random_smooth(rng, 513, SpaceTag::L2);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    CHECK((codec.encoder.apply(a * f + b * g) - a * codec.encoder.apply(f) -
           b * codec.encoder.apply(g))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
}
