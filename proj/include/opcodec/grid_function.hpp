#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>

namespace opcodec {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Rectangular domain in one or two dimensions.
class Domain {
 public:
  explicit Domain(Interval axis0);
  Domain(Interval axis0, Interval axis1);

  static Domain unit_interval() { return Domain(Interval{0.0, 1.0}); }
  static Domain unit_square() {
    return Domain(Interval{0.0, 1.0}, Interval{0.0, 1.0});
  }

  int dim() const { return dim_; }
  const Interval& axis(int a) const { return axes_[static_cast<size_t>(a)]; }
  double length(int a) const {
    return axes_[static_cast<size_t>(a)].hi - axes_[static_cast<size_t>(a)].lo;
  }
  bool contains(const Eigen::VectorXd& y, double tol = 0.0) const;

  friend bool operator==(const Domain& a, const Domain& b);

 private:
  int dim_;
  std::array<Interval, 2> axes_;
};

enum class SpaceTag { ContinuousSup, L2, C1 };

const char* to_string(SpaceTag tag);

/// Function on a uniform tensor grid over a Domain. Values are stored
/// axis-0 major: flat index = ix * nodes(1) + iy. A C1-tagged function
/// additionally carries derivative samples of the same shape.
class GridFunction {
 public:
  GridFunction(Domain domain, std::array<Eigen::Index, 2> nodes,
               Eigen::VectorXd values, SpaceTag tag);
  GridFunction(Domain domain, std::array<Eigen::Index, 2> nodes,
               Eigen::VectorXd values, Eigen::VectorXd derivative_values,
               SpaceTag tag);

  static GridFunction sample(const Domain& domain,
                             std::array<Eigen::Index, 2> nodes,
                             const std::function<double(const Eigen::VectorXd&)>& fn,
                             SpaceTag tag);
  // 1-D convenience factories.
  static GridFunction sample1d(Eigen::Index nodes,
                               const std::function<double(double)>& fn,
                               SpaceTag tag = SpaceTag::ContinuousSup,
                               Domain domain = Domain::unit_interval());
  static GridFunction sample1d_c1(Eigen::Index nodes,
                                  const std::function<double(double)>& fn,
                                  const std::function<double(double)>& dfn,
                                  Domain domain = Domain::unit_interval());
  static GridFunction constant(const Domain& domain,
                               std::array<Eigen::Index, 2> nodes, double c,
                               SpaceTag tag);
  static GridFunction zero_like(const GridFunction& f);

  const Domain& domain() const { return domain_; }
  SpaceTag space_tag() const { return tag_; }
  Eigen::Index nodes(int axis) const {
    return nodes_[static_cast<size_t>(axis)];
  }
  std::array<Eigen::Index, 2> shape() const { return nodes_; }
  Eigen::Index size() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }
  bool has_derivative() const { return derivative_.has_value(); }
  const Eigen::VectorXd& derivative_values() const;

  double node_coord(int axis, Eigen::Index i) const;
  Eigen::VectorXd node_point(Eigen::Index flat) const;
  double spacing(int axis) const;

  GridFunction with_tag(SpaceTag tag) const;
  GridFunction with_values(Eigen::VectorXd values) const;

 private:
  Domain domain_;
  std::array<Eigen::Index, 2> nodes_;  // nodes_[1] == 1 in one dimension
  Eigen::VectorXd values_;
  std::optional<Eigen::VectorXd> derivative_;
  SpaceTag tag_;
};

bool same_grid(const GridFunction& f, const GridFunction& g);
void require_same_grid(const GridFunction& f, const GridFunction& g);

/// Piecewise-multilinear interpolation; exact on grid nodes.
double evaluate(const GridFunction& f, const Eigen::VectorXd& y);
double evaluate(const GridFunction& f, double y);  // 1-D shorthand

/// Max over grid nodes of |f - g|.
double sup_distance(const GridFunction& f, const GridFunction& g);
double sup_norm(const GridFunction& f);

/// Composite-trapezoid quadrature of f*g on the shared grid.
double l2_inner(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);

/// Trapezoid quadrature weight of node `flat`.
Eigen::VectorXd trapezoid_weights(const GridFunction& f);

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(double a, const GridFunction& f);

/// One node per row: coordinates, value[, derivative]; header names columns.
void write_csv(const GridFunction& f, std::ostream& out);

}  // namespace opcodec
