#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <utility>
#include <vector>

namespace opcodec {

/// Closed Euclidean ball the latent map was fitted on.
struct FitRegion {
  Eigen::VectorXd center;
  double radius = 1.0;
};

FitRegion fit_region(Eigen::Index dim, double radius);
bool region_contains(const FitRegion& region, const Eigen::VectorXd& x, double tol = 0.0);

enum class LatentFamily { Polynomial, KernelRidge };

const char* to_string(LatentFamily family);

using LatentSamples = std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>;

/// Map between coefficient spaces, defined on all of R^a. Polynomial maps
/// store exponent rows and a coefficient matrix over inputs rescaled to the
/// unit ball of the fit region; kernel-ridge maps store their sample sites
/// and dual weights.
class LatentMap {
 public:
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

  LatentFamily family() const { return family_; }
  Eigen::Index in_dim() const { return in_dim_; }
  Eigen::Index out_dim() const { return out_dim_; }
  const FitRegion& region() const { return region_; }
  double fit_residual() const { return fit_residual_; }
  int degree() const { return degree_; }
  double bandwidth() const { return bandwidth_; }
  const Eigen::MatrixXd& coefficients() const { return coefficients_; }

  static LatentMap polynomial(Eigen::MatrixXi exponents, Eigen::MatrixXd coefficients,
                              FitRegion region, double fit_residual, int degree);
  static LatentMap kernel_ridge(Eigen::MatrixXd centers, Eigen::MatrixXd weights,
                                double bandwidth, FitRegion region, double fit_residual);

  /// Degree-1 map x |-> x, expressed in the rescaled monomial basis.
  static LatentMap identity(Eigen::Index dim, FitRegion region);
  /// Constant map x |-> value.
  static LatentMap constant(Eigen::VectorXd value, Eigen::Index in_dim, FitRegion region);
  /// Degree-1 map x |-> A x + b.
  static LatentMap affine(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          FitRegion region);

  void write_csv(std::ostream& out) const;

 private:
  LatentMap() = default;

  LatentFamily family_ = LatentFamily::Polynomial;
  Eigen::Index in_dim_ = 0;
  Eigen::Index out_dim_ = 0;
  FitRegion region_;
  double fit_residual_ = 0.0;
  int degree_ = 0;
  double bandwidth_ = 0.0;
  Eigen::MatrixXi exponents_;     // Polynomial: monomial exponents, row-per-monomial
  Eigen::MatrixXd coefficients_;  // Polynomial: monomials x out; KernelRidge: samples x out
  Eigen::MatrixXd centers_;       // KernelRidge: samples x in
};

/// Free-function form of LatentMap::operator().
Eigen::VectorXd evaluate_latent(const LatentMap& map, const Eigen::VectorXd& x);

/// Monomial exponent rows of total degree <= degree, graded lexicographic.
Eigen::MatrixXi total_degree_exponents(Eigen::Index dims, int degree);

/// Least-squares (optionally ridge) fit over the total-degree monomial basis;
/// inputs are affinely rescaled to the unit ball of the region first.
LatentMap fit_polynomial(const LatentSamples& samples, int degree, const FitRegion& region,
                         double ridge = 0.0);

/// Gaussian-kernel ridge interpolant, k(x,y) = exp(-|x-y|^2 / (2 bw^2)).
LatentMap fit_kernel_ridge(const LatentSamples& samples, double bandwidth, double ridge,
                           const FitRegion& region);

}  // namespace opcodec
