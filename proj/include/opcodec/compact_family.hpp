#pragma once

#include "opcodec/grid_function.hpp"

#include <optional>
#include <vector>

namespace opcodec {

/// Finitely-parameterized stand-in for a compact set of functions.
/// Members are generated once at construction and share one grid.
class CompactFamily {
 public:
  CompactFamily(std::vector<Eigen::VectorXd> parameter_grid,
                std::function<GridFunction(const Eigen::VectorXd&)> generator,
                std::optional<double> lipschitz_bound = std::nullopt);

  const std::vector<Eigen::VectorXd>& parameter_grid() const { return parameters_; }
  const std::vector<GridFunction>& members() const { return members_; }
  size_t size() const { return members_.size(); }
  std::optional<double> lipschitz_bound() const { return lipschitz_bound_; }
  GridFunction generate(const Eigen::VectorXd& theta) const { return generator_(theta); }

 private:
  std::vector<Eigen::VectorXd> parameters_;
  std::function<GridFunction(const Eigen::VectorXd&)> generator_;
  std::optional<double> lipschitz_bound_;
  std::vector<GridFunction> members_;
};

/// Deterministic enumeration of the family, one member per parameter.
std::vector<GridFunction> family_members(const CompactFamily& family);

/// Family whose members are images of another family under an operator.
CompactFamily pushforward_family(const CompactFamily& family,
                                 const std::function<GridFunction(const GridFunction&)>& op);

}  // namespace opcodec
