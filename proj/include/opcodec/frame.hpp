#pragma once

#include "opcodec/codec.hpp"

namespace opcodec {

/// Finite frame in the discretized L2 space: atoms, their Gram matrix,
/// the canonical dual computed through the Gram pseudoinverse, and the
/// frame bounds of the frame operator restricted to the span.
struct FrameSystem {
  std::vector<GridFunction> atoms;
  Eigen::MatrixXd gram;
  std::vector<GridFunction> dual_atoms;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

/// Builds the canonical dual via a symmetric eigendecomposition of the Gram
/// matrix with relative cutoff 1e-12. Bounds are the smallest kept and the
/// largest eigenvalue. Throws on an all-zero atom set and when the dual
/// fails the reconstruction identity on the span.
FrameSystem build_frame(const std::vector<GridFunction>& atoms);

/// f |-> (<f, f*_1>, ..., <f, f*_n>). Requires L2-tagged input.
Encoder frame_encoder(const FrameSystem& fs);

/// mu |-> sum_i mu_i f_i.
Decoder frame_decoder(const FrameSystem& fs);

/// Frame analysis coefficients against the primal atoms, sum |<f, f_i>|^2.
double frame_energy(const FrameSystem& fs, const GridFunction& f);

void write_gram_csv(const FrameSystem& fs, std::ostream& out);

}  // namespace opcodec
