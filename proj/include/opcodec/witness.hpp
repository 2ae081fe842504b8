#pragma once

#include "opcodec/basis.hpp"
#include "opcodec/grid_function.hpp"

#include <vector>

namespace opcodec {

/// Nested 1-D sampling-point sequence: stage n samples at the first
/// stage_sizes[n] points. Later stages refine earlier ones.
struct SamplingSequence {
  std::vector<double> points;
  std::vector<Eigen::Index> stage_sizes;
};

/// Dyadic order 0, 1, 1/2, 1/4, 3/4, 1/8, 3/8, ...; stage n has 2^n + 1 points.
SamplingSequence dyadic_sampling_sequence(int stages);

struct WitnessResult {
  bool found = false;
  GridFunction witness;
  int stage = -1;           // first stage from which every stage diverges
  double divergence = 0.0;  // max-component disagreement at that stage
};

/// Searches for a function on which the sampling encoders E_n differ from
/// the basis encoders E~_{k(n)} componentwise by more than tol at every
/// stage from some index on. The candidate is a localized bump placed off
/// the early sample points. A miss is reported, not thrown.
WitnessResult encoder_divergence_witness(const SamplingSequence& seq,
                                         const BasisSpec& spec = {BasisKind::FaberSchauder},
                                         Eigen::Index grid_nodes = 1025,
                                         double tol = 1e-6);

}  // namespace opcodec
