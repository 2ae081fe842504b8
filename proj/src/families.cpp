#include "opcodec/families.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opcodec {

namespace {

std::vector<Eigen::VectorXd> tensor_parameters(const std::vector<double>& grid, int copies) {
  std::vector<Eigen::VectorXd> params;
  const size_t g = grid.size();
  size_t total = 1;
  for (int k = 0; k < copies; ++k) total *= g;
  params.reserve(total);
  for (size_t idx = 0; idx < total; ++idx) {
    Eigen::VectorXd theta(copies);
    size_t rest = idx;
    for (int k = copies - 1; k >= 0; --k) {
      theta[k] = grid[rest % g];
      rest /= g;
    }
    params.push_back(theta);
  }
  return params;
}

}  // namespace

double sine_modes_lipschitz_bound(const SineModesSpec& spec) {
  double a_max = 0.0;
  for (double a : spec.amplitude_grid) a_max = std::max(a_max, std::abs(a));
  double harmonic = 0.0;
  for (int k = 1; k <= spec.modes; ++k) harmonic += 1.0 / static_cast<double>(k);
  return a_max * std::numbers::pi * harmonic;
}

CompactFamily make_family(const SineModesSpec& spec, Eigen::Index nodes, SpaceTag tag) {
  if (spec.modes < 1) throw std::invalid_argument("make_family: need at least one mode");
  if (spec.amplitude_grid.empty()) {
    throw std::invalid_argument("make_family: empty amplitude grid");
  }
  const int m = spec.modes;
  auto generator = [m, nodes, tag](const Eigen::VectorXd& a) {
    auto value = [&a, m](double x) {
      double v = 0.0;
      for (int k = 1; k <= m; ++k) {
        v += a[k - 1] * std::sin(static_cast<double>(k) * std::numbers::pi * x) /
             static_cast<double>(k * k);
      }
      return v;
    };
    if (tag == SpaceTag::C1) {
      auto deriv = [&a, m](double x) {
        double v = 0.0;
        for (int k = 1; k <= m; ++k) {
          v += a[k - 1] * std::numbers::pi *
               std::cos(static_cast<double>(k) * std::numbers::pi * x) /
               static_cast<double>(k);
        }
        return v;
      };
      return GridFunction::sample1d_c1(nodes, value, deriv);
    }
    return GridFunction::sample1d(nodes, value, tag);
  };
  return CompactFamily(tensor_parameters(spec.amplitude_grid, m), generator,
                       sine_modes_lipschitz_bound(spec));
}

CompactFamily make_family(const GaussianBumpsSpec& spec, Eigen::Index nodes, SpaceTag tag) {
  if (spec.centers.empty()) throw std::invalid_argument("make_family: empty center grid");
  if (!(spec.width > 0.0)) throw std::invalid_argument("make_family: width must be positive");
  const double w = spec.width;
  std::vector<Eigen::VectorXd> params;
  params.reserve(spec.centers.size());
  for (double c : spec.centers) {
    Eigen::VectorXd theta(1);
    theta[0] = c;
    params.push_back(theta);
  }
  auto generator = [w, nodes, tag](const Eigen::VectorXd& theta) {
    const double c = theta[0];
    auto value = [c, w](double x) { return std::exp(-(x - c) * (x - c) / (2.0 * w * w)); };
    if (tag == SpaceTag::C1) {
      auto deriv = [c, w, value](double x) { return -(x - c) / (w * w) * value(x); };
      return GridFunction::sample1d_c1(nodes, value, deriv);
    }
    return GridFunction::sample1d(nodes, value, tag);
  };
  // sup|f'| of a unit Gaussian bump is exp(-1/2)/w.
  return CompactFamily(params, generator, std::exp(-0.5) / w);
}

CompactFamily named_family(const std::string& id, Eigen::Index nodes, SpaceTag tag) {
  if (id == "sine2") {
    return make_family(SineModesSpec{2, {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0}}, nodes, tag);
  }
  if (id == "sine2b") {
    return make_family(SineModesSpec{2, {-0.8, -0.4, 0.4, 0.8}}, nodes, tag);
  }
  if (id == "sine3") {
    return make_family(SineModesSpec{3, {-1.0, 1.0}}, nodes, tag);
  }
  if (id == "bumps") {
    return make_family(GaussianBumpsSpec{{0.3, 0.4, 0.5, 0.6, 0.7}, 0.08}, nodes, tag);
  }
  throw std::invalid_argument("named_family: unknown family id '" + id + "'");
}

std::vector<std::string> named_family_ids() { return {"sine2", "sine2b", "sine3", "bumps"}; }

}  // namespace opcodec
