#include "opcodec/canonical_operators.hpp"

#include <cmath>
#include <stdexcept>

namespace opcodec {

const char* to_string(CanonicalKind kind) {
  switch (kind) {
    case CanonicalKind::Antiderivative: return "antiderivative";
    case CanonicalKind::Poisson1D: return "poisson1d";
    case CanonicalKind::PointwiseSin: return "pointwise_sin";
  }
  return "?";
}

Eigen::VectorXd cumulative_trapezoid(const GridFunction& f) {
  if (f.domain().dim() != 1) {
    throw std::invalid_argument("cumulative_trapezoid: 1-D functions only");
  }
  const double h = f.spacing(0);
  Eigen::VectorXd out(f.size());
  out[0] = 0.0;
  for (Eigen::Index i = 1; i < f.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * h * (f.values()[i - 1] + f.values()[i]);
  }
  return out;
}

namespace {

// Thomas solve of -u'' = f on the interior, zero boundary values. The
// returned vector includes the boundary nodes.
Eigen::VectorXd solve_poisson(const GridFunction& f) {
  if (f.domain().dim() != 1) {
    throw std::invalid_argument("poisson1d: 1-D functions only");
  }
  const Eigen::Index m = f.size();
  const double h = f.spacing(0);
  const Eigen::Index interior = m - 2;
  if (interior < 1) throw std::invalid_argument("poisson1d: grid too coarse");

  Eigen::VectorXd diag = Eigen::VectorXd::Constant(interior, 2.0 / (h * h));
  const double off = -1.0 / (h * h);
  Eigen::VectorXd rhs = f.values().segment(1, interior);

  Eigen::VectorXd c(interior), d(interior);
  c[0] = off / diag[0];
  d[0] = rhs[0] / diag[0];
  for (Eigen::Index i = 1; i < interior; ++i) {
    const double denom = diag[i] - off * c[i - 1];
    c[i] = off / denom;
    d[i] = (rhs[i] - off * d[i - 1]) / denom;
  }
  Eigen::VectorXd u_int(interior);
  u_int[interior - 1] = d[interior - 1];
  for (Eigen::Index i = interior - 2; i >= 0; --i) {
    u_int[i] = d[i] - c[i] * u_int[i + 1];
  }

  // Residual guard on the tridiagonal system itself.
  double residual = 0.0;
  for (Eigen::Index i = 0; i < interior; ++i) {
    double row = diag[i] * u_int[i];
    if (i > 0) row += off * u_int[i - 1];
    if (i + 1 < interior) row += off * u_int[i + 1];
    residual = std::max(residual, std::abs(row - rhs[i]));
  }
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if (!(residual <= 1e-10 * scale)) {
    throw std::runtime_error("poisson1d: tridiagonal residual above tolerance");
  }

  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  u.segment(1, interior) = u_int;
  return u;
}

}  // namespace

GridFunction canonical_apply(CanonicalKind kind, const GridFunction& f) {
  const SpaceTag tag =
      f.space_tag() == SpaceTag::C1 ? SpaceTag::ContinuousSup : f.space_tag();
  Eigen::VectorXd values;
  switch (kind) {
    case CanonicalKind::Antiderivative: values = cumulative_trapezoid(f); break;
    case CanonicalKind::Poisson1D: values = solve_poisson(f); break;
    case CanonicalKind::PointwiseSin: values = f.values().array().sin(); break;
  }
  return GridFunction(f.domain(), f.shape(), std::move(values), tag);
}

OperatorSpec make_operator(CanonicalKind kind, SpaceTag input, SpaceTag output) {
  OperatorSpec op;
  op.name = to_string(kind);
  op.input_space = input;
  op.output_space = output;
  op.apply = [kind, output](const GridFunction& f) {
    return canonical_apply(kind, f).with_tag(output);
  };
  return op;
}

}  // namespace opcodec
