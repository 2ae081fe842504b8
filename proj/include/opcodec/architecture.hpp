#pragma once

#include "opcodec/codec.hpp"
#include "opcodec/compact_family.hpp"
#include "opcodec/frame.hpp"
#include "opcodec/latent_map.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace opcodec {

/// Continuous operator between the discretized function spaces.
struct OperatorSpec {
  std::string name;
  SpaceTag input_space = SpaceTag::ContinuousSup;
  SpaceTag output_space = SpaceTag::ContinuousSup;
  std::function<GridFunction(const GridFunction&)> apply;
};

/// Default approximator family: polynomials while the total-degree monomial
/// count stays manageable, Gaussian kernel ridge in higher latent dimension.
LatentFamily default_latent_family(Eigen::Index latent_dim);

/// Settings for fitting the latent map over the ball
/// B_r(0) with r = |E(f0)| + n * L_enc. Training inputs are encoder images
/// of the training family plus seeded Gaussian jitter, clipped to the ball.
struct FitConfig {
  int n = 1;
  unsigned seed = 0;
  std::optional<GridFunction> anchor;  // f0; defaults to the zero function
  int jitter_per_sample = 4;
  double jitter_sigma_factor = 0.05;
  std::optional<LatentFamily> family;  // unset: default_latent_family(width)
  int degree = 1;
  std::optional<double> bandwidth;  // unset: 0.2 * fit radius
  double ridge = 1e-10;
};

struct FitReport {
  double radius = 0.0;            // r(n)
  double latent_residual = 0.0;   // max l-inf training residual
  double latent_residual_l2 = 0.0;
  double target_accuracy = 0.0;   // 1 / (n * L_dec)
  bool met_target = false;
  bool fit_warning = false;       // residual above 10x target
  Eigen::Index training_points = 0;
  int n = 0;
  unsigned seed = 0;
};

struct Architecture {
  std::string id;
  Encoder encoder;
  LatentMap latent;
  Decoder decoder;
  FitReport fit_report;
};

/// Fits the latent map to E_Y o G o D_X on the ball around the encoded
/// anchor, following the constructive recipe: grid the ball with encoder
/// images of the training family plus jitter, fit the approximator, and
/// record whether the residual meets 1/(n L_dec).
Architecture fit_architecture(const OperatorSpec& op, const Encoder& enc_x,
                              const Decoder& dec_y, const Encoder& enc_y,
                              const Decoder& dec_x, const FitConfig& cfg,
                              const CompactFamily& train_family);

GridFunction apply_architecture(const Architecture& arch, const GridFunction& f);

struct ApplyOutcome {
  GridFunction value;
  bool extrapolated = false;  // encoder output left the fit region
};
ApplyOutcome apply_architecture_checked(const Architecture& arch, const GridFunction& f);

// ---- named architectures ---------------------------------------------------

/// Sampling encoder over the covering, dense decoder over the given atoms.
Architecture classical_deeponet(const Covering& cov, std::vector<GridFunction> dense_atoms,
                                LatentMap phi);

/// Basis encoder for the input space, dense decoder over the given atoms.
Architecture schauder_deeponet(const BasisSpec& spec_x, Eigen::Index k,
                               std::vector<GridFunction> dense_atoms, LatentMap phi);

/// Frame encoder on X, frame decoder on Y.
Architecture frame_architecture(const FrameSystem& fs_x, const FrameSystem& fs_y,
                                LatentMap phi);

/// Dense encoder on X, dense decoder on Y.
Architecture basisonet(Encoder dense_enc_x, Decoder dense_dec_y, LatentMap phi);

/// Writes latent.csv plus a key=value descriptor into the directory.
void save_architecture(const Architecture& arch, const std::filesystem::path& dir);

}  // namespace opcodec
