#pragma once

#include "opcodec/grid_function.hpp"

#include <vector>

namespace opcodec {

/// Finite set of centers whose open epsilon-balls cover the domain.
struct Covering {
  Domain domain;
  double epsilon = 0.0;
  std::vector<Eigen::VectorXd> centers;
};

/// Uniform midpoint grid of centers, per-axis count ceil(length/epsilon).
/// The construction guarantees max nearest-center distance <= epsilon/2
/// per axis; validity is certified on a dense probe grid afterwards.
Covering build_epsilon_covering(const Domain& domain, double epsilon);

/// Throws std::runtime_error when some probe point is not strictly covered.
/// probe_factor refines the probe grid relative to the center spacing.
void validate_covering(const Covering& cov, int probe_factor = 100);

/// Unnormalized bump: exp(-1/(eps^2 - d^2)) inside the ball, 0 outside.
double bump_value(const Eigen::VectorXd& y, const Eigen::VectorXd& center,
                  double epsilon);
double bump_value(double y, double center, double epsilon);  // 1-D shorthand

/// One center per row: index, coordinates; header names columns.
void write_csv(const Covering& cov, std::ostream& out);

/// Normalized bump functions P_i(y) = bump_i(y) / sum_l bump_l(y).
/// Ratios are evaluated in log space so they stay exact even when the raw
/// bumps underflow double precision (epsilon below roughly 1/23).
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(Covering cov);

  const Covering& covering() const { return covering_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(covering_.centers.size()); }

  /// All components at once; they sum to one exactly up to rounding.
  Eigen::VectorXd values_at(const Eigen::VectorXd& y) const;
  double value(Eigen::Index i, const Eigen::VectorXd& y) const;
  double value(Eigen::Index i, double y) const;  // 1-D shorthand

 private:
  Covering covering_;
};

PartitionOfUnity partition_of_unity(Covering cov);

/// Cumulative integrals of each P_i on a uniform quadrature grid over a
/// 1-D domain; queries interpolate the (monotone) cumulative table.
class PouCumulative {
 public:
  PouCumulative(const PartitionOfUnity& pou, Eigen::Index cells);

  /// Trapezoid value of the integral of P_i from the left endpoint to y.
  double integral(Eigen::Index i, double y) const;
  Eigen::Index atoms() const { return table_.cols(); }

 private:
  double lo_;
  double hi_;
  Eigen::MatrixXd table_;  // (cells+1) x k cumulative values
};

/// Integral of P_i from the domain's left endpoint to y (1-D only).
double pou_antiderivative(const PartitionOfUnity& pou, Eigen::Index i, double y,
                          Eigen::Index cells = 4096);

}  // namespace opcodec
