#include "opcodec/compact_family.hpp"

#include <stdexcept>

namespace opcodec {

CompactFamily::CompactFamily(std::vector<Eigen::VectorXd> parameter_grid,
                             std::function<GridFunction(const Eigen::VectorXd&)> generator,
                             std::optional<double> lipschitz_bound)
    : parameters_(std::move(parameter_grid)),
      generator_(std::move(generator)),
      lipschitz_bound_(lipschitz_bound) {
  if (parameters_.empty()) {
    throw std::invalid_argument("CompactFamily: parameter grid must be nonempty");
  }
  members_.reserve(parameters_.size());
  for (const Eigen::VectorXd& theta : parameters_) {
    members_.push_back(generator_(theta));
    if (!same_grid(members_.front(), members_.back())) {
      throw std::invalid_argument("CompactFamily: members must share one domain and grid");
    }
  }
}

std::vector<GridFunction> family_members(const CompactFamily& family) {
  return family.members();
}

CompactFamily pushforward_family(const CompactFamily& family,
                                 const std::function<GridFunction(const GridFunction&)>& op) {
  auto generator = [family, op](const Eigen::VectorXd& theta) {
    return op(family.generate(theta));
  };
  return CompactFamily(family.parameter_grid(), generator);
}

}  // namespace opcodec
