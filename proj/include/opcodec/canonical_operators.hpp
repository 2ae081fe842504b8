#pragma once

#include "opcodec/architecture.hpp"
#include "opcodec/grid_function.hpp"

namespace opcodec {

/// Built-in 1-D operators used by the studies:
///   Antiderivative  (Gf)(y) = int_0^y f, composite trapezoid on the grid
///   Poisson1D       -u'' = f, u(0) = u(1) = 0, second-order differences
///   PointwiseSin    (Gf)(y) = sin(f(y)) nodewise
enum class CanonicalKind { Antiderivative, Poisson1D, PointwiseSin };

const char* to_string(CanonicalKind kind);

/// Applies the operator on f's grid; the output keeps f's space tag.
GridFunction canonical_apply(CanonicalKind kind, const GridFunction& f);

OperatorSpec make_operator(CanonicalKind kind, SpaceTag input, SpaceTag output);

/// Cumulative trapezoid of the node values (1-D).
Eigen::VectorXd cumulative_trapezoid(const GridFunction& f);

}  // namespace opcodec
