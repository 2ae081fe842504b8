#include "opcodec/grid_function.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace opcodec {

namespace {

void check_axis(const Interval& axis) {
  if (!(axis.lo < axis.hi)) {
    throw std::invalid_argument("Domain: axis lower bound must be below upper bound");
  }
  if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi)) {
    throw std::invalid_argument("Domain: axis bounds must be finite");
  }
}

}  // namespace

Domain::Domain(Interval axis0) : dim_(1), axes_{axis0, Interval{0.0, 1.0}} {
  check_axis(axis0);
}

Domain::Domain(Interval axis0, Interval axis1) : dim_(2), axes_{axis0, axis1} {
  check_axis(axis0);
  check_axis(axis1);
}

bool Domain::contains(const Eigen::VectorXd& y, double tol) const {
  if (y.size() != dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    const Interval& ax = axes_[static_cast<size_t>(a)];
    const double slack = tol * (ax.hi - ax.lo);
    if (y[a] < ax.lo - slack || y[a] > ax.hi + slack) return false;
  }
  return true;
}

bool operator==(const Domain& a, const Domain& b) {
  if (a.dim_ != b.dim_) return false;
  for (int d = 0; d < a.dim_; ++d) {
    if (a.axes_[static_cast<size_t>(d)].lo != b.axes_[static_cast<size_t>(d)].lo ||
        a.axes_[static_cast<size_t>(d)].hi != b.axes_[static_cast<size_t>(d)].hi) {
      return false;
    }
  }
  return true;
}

const char* to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::ContinuousSup: return "ContinuousSup";
    case SpaceTag::L2: return "L2";
    case SpaceTag::C1: return "C1";
  }
  return "?";
}

GridFunction::GridFunction(Domain domain, std::array<Eigen::Index, 2> nodes,
                           Eigen::VectorXd values, SpaceTag tag)
    : domain_(std::move(domain)), nodes_(nodes), values_(std::move(values)), tag_(tag) {
  if (domain_.dim() == 1) nodes_[1] = 1;
  if (nodes_[0] < 2 || (domain_.dim() == 2 && nodes_[1] < 2)) {
    throw std::invalid_argument("GridFunction: need at least two nodes per axis");
  }
  if (values_.size() != nodes_[0] * nodes_[1]) {
    throw std::invalid_argument("GridFunction: values length must equal node count");
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("GridFunction: values must be finite");
  }
  if (tag_ == SpaceTag::C1) {
    throw std::invalid_argument("GridFunction: C1 tag requires derivative samples");
  }
}

GridFunction::GridFunction(Domain domain, std::array<Eigen::Index, 2> nodes,
                           Eigen::VectorXd values, Eigen::VectorXd derivative_values,
                           SpaceTag tag)
    : GridFunction(std::move(domain), nodes, std::move(values), SpaceTag::ContinuousSup) {
  if (tag != SpaceTag::C1) {
    throw std::invalid_argument("GridFunction: derivative samples belong to the C1 tag");
  }
  if (derivative_values.size() != values_.size()) {
    throw std::invalid_argument("GridFunction: derivative shape must match values");
  }
  if (!derivative_values.allFinite()) {
    throw std::invalid_argument("GridFunction: derivative values must be finite");
  }
  derivative_ = std::move(derivative_values);
  tag_ = tag;
}

GridFunction GridFunction::sample(const Domain& domain,
                                  std::array<Eigen::Index, 2> nodes,
                                  const std::function<double(const Eigen::VectorXd&)>& fn,
                                  SpaceTag tag) {
  if (domain.dim() == 1) nodes[1] = 1;
  Eigen::VectorXd values(nodes[0] * nodes[1]);
  Eigen::VectorXd p(domain.dim());
  for (Eigen::Index ix = 0; ix < nodes[0]; ++ix) {
    const double x = domain.axis(0).lo + domain.length(0) * static_cast<double>(ix) /
                                             static_cast<double>(nodes[0] - 1);
    p[0] = x;
    for (Eigen::Index iy = 0; iy < nodes[1]; ++iy) {
      if (domain.dim() == 2) {
        p[1] = domain.axis(1).lo + domain.length(1) * static_cast<double>(iy) /
                                       static_cast<double>(nodes[1] - 1);
      }
      values[ix * nodes[1] + iy] = fn(p);
    }
  }
  return GridFunction(domain, nodes, std::move(values), tag);
}

GridFunction GridFunction::sample1d(Eigen::Index nodes,
                                    const std::function<double(double)>& fn,
                                    SpaceTag tag, Domain domain) {
  return sample(domain, {nodes, 1}, [&fn](const Eigen::VectorXd& p) { return fn(p[0]); },
                tag);
}

GridFunction GridFunction::sample1d_c1(Eigen::Index nodes,
                                       const std::function<double(double)>& fn,
                                       const std::function<double(double)>& dfn,
                                       Domain domain) {
  GridFunction value_part = sample1d(nodes, fn, SpaceTag::ContinuousSup, domain);
  GridFunction deriv_part = sample1d(nodes, dfn, SpaceTag::ContinuousSup, domain);
  return GridFunction(domain, {nodes, 1}, value_part.values(), deriv_part.values(),
                      SpaceTag::C1);
}

GridFunction GridFunction::constant(const Domain& domain,
                                    std::array<Eigen::Index, 2> nodes, double c,
                                    SpaceTag tag) {
  if (domain.dim() == 1) nodes[1] = 1;
  if (tag == SpaceTag::C1) {
    return GridFunction(domain, nodes,
                        Eigen::VectorXd::Constant(nodes[0] * nodes[1], c),
                        Eigen::VectorXd::Zero(nodes[0] * nodes[1]), tag);
  }
  return GridFunction(domain, nodes, Eigen::VectorXd::Constant(nodes[0] * nodes[1], c),
                      tag);
}

GridFunction GridFunction::zero_like(const GridFunction& f) {
  if (f.space_tag() == SpaceTag::C1) {
    return GridFunction(f.domain(), f.shape(), Eigen::VectorXd::Zero(f.size()),
                        Eigen::VectorXd::Zero(f.size()), SpaceTag::C1);
  }
  return GridFunction(f.domain(), f.shape(), Eigen::VectorXd::Zero(f.size()),
                      f.space_tag());
}

const Eigen::VectorXd& GridFunction::derivative_values() const {
  if (!derivative_) {
    throw std::logic_error("GridFunction: no derivative samples present");
  }
  return *derivative_;
}

double GridFunction::node_coord(int axis, Eigen::Index i) const {
  const Interval& ax = domain_.axis(axis);
  return ax.lo + (ax.hi - ax.lo) * static_cast<double>(i) /
                     static_cast<double>(nodes_[static_cast<size_t>(axis)] - 1);
}

Eigen::VectorXd GridFunction::node_point(Eigen::Index flat) const {
  Eigen::VectorXd p(domain_.dim());
  p[0] = node_coord(0, flat / nodes_[1]);
  if (domain_.dim() == 2) p[1] = node_coord(1, flat % nodes_[1]);
  return p;
}

double GridFunction::spacing(int axis) const {
  return domain_.length(axis) / static_cast<double>(nodes_[static_cast<size_t>(axis)] - 1);
}

GridFunction GridFunction::with_tag(SpaceTag tag) const {
  if (tag == SpaceTag::C1) {
    return GridFunction(domain_, nodes_, values_, derivative_values(), tag);
  }
  GridFunction out(domain_, nodes_, values_, tag);
  return out;
}

GridFunction GridFunction::with_values(Eigen::VectorXd values) const {
  if (tag_ == SpaceTag::C1) {
    return GridFunction(domain_, nodes_, std::move(values), derivative_values(), tag_);
  }
  return GridFunction(domain_, nodes_, std::move(values), tag_);
}

bool same_grid(const GridFunction& f, const GridFunction& g) {
  return f.domain() == g.domain() && f.shape() == g.shape();
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!same_grid(f, g)) {
    throw std::invalid_argument("grid mismatch between functions");
  }
}

namespace {

// Per-axis cell index and interpolation weight for a query coordinate.
std::pair<Eigen::Index, double> locate(const GridFunction& f, int axis, double y) {
  const Interval& ax = f.domain().axis(axis);
  const Eigen::Index n = f.nodes(axis);
  const double t = (y - ax.lo) / (ax.hi - ax.lo) * static_cast<double>(n - 1);
  Eigen::Index cell = static_cast<Eigen::Index>(std::floor(t));
  if (cell < 0) cell = 0;
  if (cell > n - 2) cell = n - 2;
  return {cell, t - static_cast<double>(cell)};
}

}  // namespace

double evaluate(const GridFunction& f, const Eigen::VectorXd& y) {
  if (y.size() != f.domain().dim()) {
    throw std::invalid_argument("evaluate: point dimension mismatch");
  }
  if (!f.domain().contains(y, 1e-12)) {
    throw std::domain_error("evaluate: point outside domain");
  }
  const auto [i0, t0] = locate(f, 0, y[0]);
  if (f.domain().dim() == 1) {
    return (1.0 - t0) * f.values()[i0] + t0 * f.values()[i0 + 1];
  }
  const auto [i1, t1] = locate(f, 1, y[1]);
  const Eigen::Index ny = f.nodes(1);
  const double v00 = f.values()[i0 * ny + i1];
  const double v01 = f.values()[i0 * ny + i1 + 1];
  const double v10 = f.values()[(i0 + 1) * ny + i1];
  const double v11 = f.values()[(i0 + 1) * ny + i1 + 1];
  return (1.0 - t0) * ((1.0 - t1) * v00 + t1 * v01) +
         t0 * ((1.0 - t1) * v10 + t1 * v11);
}

double evaluate(const GridFunction& f, double y) {
  Eigen::VectorXd p(1);
  p[0] = y;
  return evaluate(f, p);
}

double sup_distance(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  return (f.values() - g.values()).cwiseAbs().maxCoeff();
}

double sup_norm(const GridFunction& f) { return f.values().cwiseAbs().maxCoeff(); }

Eigen::VectorXd trapezoid_weights(const GridFunction& f) {
  const int dim = f.domain().dim();
  Eigen::VectorXd w(f.size());
  Eigen::VectorXd ax0 = Eigen::VectorXd::Constant(f.nodes(0), f.spacing(0));
  ax0[0] *= 0.5;
  ax0[f.nodes(0) - 1] *= 0.5;
  if (dim == 1) return ax0;
  Eigen::VectorXd ax1 = Eigen::VectorXd::Constant(f.nodes(1), f.spacing(1));
  ax1[0] *= 0.5;
  ax1[f.nodes(1) - 1] *= 0.5;
  for (Eigen::Index ix = 0; ix < f.nodes(0); ++ix) {
    for (Eigen::Index iy = 0; iy < f.nodes(1); ++iy) {
      w[ix * f.nodes(1) + iy] = ax0[ix] * ax1[iy];
    }
  }
  return w;
}

double l2_inner(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  const Eigen::VectorXd w = trapezoid_weights(f);
  return (w.array() * f.values().array() * g.values().array()).sum();
}

double l2_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, l2_inner(f, f))); }

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  if (f.space_tag() == SpaceTag::C1 && g.space_tag() == SpaceTag::C1) {
    return GridFunction(f.domain(), f.shape(), f.values() + g.values(),
                        f.derivative_values() + g.derivative_values(), SpaceTag::C1);
  }
  return GridFunction(f.domain(), f.shape(), f.values() + g.values(), f.space_tag());
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  return f + (-1.0 * g);
}

GridFunction operator*(double a, const GridFunction& f) {
  if (f.space_tag() == SpaceTag::C1) {
    return GridFunction(f.domain(), f.shape(), a * f.values(),
                        a * f.derivative_values(), SpaceTag::C1);
  }
  return GridFunction(f.domain(), f.shape(), a * f.values(), f.space_tag());
}

void write_csv(const GridFunction& f, std::ostream& out) {
  const int dim = f.domain().dim();
  if (dim == 1) {
    out << (f.has_derivative() ? "x,value,derivative\n" : "x,value\n");
  } else {
    out << "x,y,value\n";
  }
  out.precision(17);
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const Eigen::VectorXd p = f.node_point(i);
    out << p[0];
    if (dim == 2) out << ',' << p[1];
    out << ',' << f.values()[i];
    if (dim == 1 && f.has_derivative()) out << ',' << f.derivative_values()[i];
    out << '\n';
  }
}

}  // namespace opcodec
