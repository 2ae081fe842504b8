#pragma once

#include "opcodec/compact_family.hpp"

#include <string>
#include <vector>

namespace opcodec {

/// f_a(x) = sum_{k<=m} a_k sin(k pi x) / k^2 with each a_k from the grid;
/// the 1/k^2 decay keeps the family equicontinuous. The stored Lipschitz
/// bound is a_max * pi * sum_{k<=m} 1/k.
struct SineModesSpec {
  int modes = 2;
  std::vector<double> amplitude_grid = {-1.0, 1.0};
};

/// f_c(x) = exp(-(x-c)^2 / (2 w^2)) for centers c on the grid.
struct GaussianBumpsSpec {
  std::vector<double> centers = {0.5};
  double width = 0.1;
};

double sine_modes_lipschitz_bound(const SineModesSpec& spec);

CompactFamily make_family(const SineModesSpec& spec, Eigen::Index nodes, SpaceTag tag);
CompactFamily make_family(const GaussianBumpsSpec& spec, Eigen::Index nodes, SpaceTag tag);

/// Named presets used by the command line and the studies:
///   sine2   SineModes(2) on amplitudes {-1, -1/3, 1/3, 1}^2   (16 members)
///   sine2b  SineModes(2) on amplitudes {-0.8, -0.4, 0.4, 0.8}^2
///   sine3   SineModes(3) on amplitudes {-1, 1}^3              (8 members)
///   bumps   GaussianBumps at {0.3, 0.4, 0.5, 0.6, 0.7}, width 0.08
CompactFamily named_family(const std::string& id, Eigen::Index nodes, SpaceTag tag);

std::vector<std::string> named_family_ids();

}  // namespace opcodec
