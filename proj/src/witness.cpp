#include "opcodec/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opcodec {

SamplingSequence dyadic_sampling_sequence(int stages) {
  if (stages < 1) throw std::invalid_argument("dyadic_sampling_sequence: need a stage");
  SamplingSequence seq;
  seq.points = {0.0, 1.0};
  for (int level = 0; level < stages; ++level) {
    const Eigen::Index cells = Eigen::Index{1} << level;
    for (Eigen::Index j = 0; j < cells; ++j) {
      seq.points.push_back((2.0 * static_cast<double>(j) + 1.0) /
                           static_cast<double>(2 * cells));
    }
    seq.stage_sizes.push_back(static_cast<Eigen::Index>(seq.points.size()));
  }
  return seq;
}

namespace {

Eigen::VectorXd sample_at_points(const GridFunction& f, const std::vector<double>& pts,
                                 Eigen::Index count) {
  Eigen::VectorXd out(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    out[i] = evaluate(f, pts[static_cast<size_t>(i)]);
  }
  return out;
}

}  // namespace

WitnessResult encoder_divergence_witness(const SamplingSequence& seq, const BasisSpec& spec,
                                         Eigen::Index grid_nodes, double tol) {
  if (seq.stage_sizes.empty() || seq.points.empty()) {
    throw std::invalid_argument("encoder_divergence_witness: empty sampling sequence");
  }
  for (size_t s = 1; s < seq.stage_sizes.size(); ++s) {
    if (seq.stage_sizes[s] <= seq.stage_sizes[s - 1]) {
      throw std::invalid_argument("encoder_divergence_witness: stages must grow");
    }
  }
  if (seq.stage_sizes.back() > static_cast<Eigen::Index>(seq.points.size())) {
    throw std::invalid_argument("encoder_divergence_witness: stage exceeds point list");
  }

  // Bump placed in a gap of the first-stage samples: smooth, compact support,
  // zero at every point outside (center - width, center + width).
  const double center = 1.0 / 3.0;
  const double width = 1.0 / 12.0;
  GridFunction bump = GridFunction::sample1d(grid_nodes, [center, width](double x) {
    const double u = (x - center) / width;
    const double gap = 1.0 - u * u;
    return gap > 0.0 ? std::exp(1.0 - 1.0 / gap) : 0.0;
  });

  WitnessResult result{false, bump, -1, 0.0};
  const int stages = static_cast<int>(seq.stage_sizes.size());
  std::vector<double> divergence(static_cast<size_t>(stages), 0.0);
  for (int s = 0; s < stages; ++s) {
    const Eigen::Index k = seq.stage_sizes[static_cast<size_t>(s)];
    const Eigen::VectorXd samples = sample_at_points(bump, seq.points, k);
    const Eigen::VectorXd coeffs = basis_coefficients(spec, k, bump);
    divergence[static_cast<size_t>(s)] = (samples - coeffs).cwiseAbs().maxCoeff();
  }
  // First stage from which every later stage stays above tol.
  for (int s = 0; s < stages; ++s) {
    bool persistent = true;
    for (int t = s; t < stages; ++t) {
      persistent = persistent && divergence[static_cast<size_t>(t)] > tol;
    }
    if (persistent) {
      result.found = true;
      result.stage = s;
      result.divergence = divergence[static_cast<size_t>(s)];
      break;
    }
  }
  return result;
}

}  // namespace opcodec
