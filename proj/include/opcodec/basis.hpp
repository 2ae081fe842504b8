#pragma once

#include "opcodec/grid_function.hpp"

namespace opcodec {

/// Built-in coordinate systems on [0,1]. FaberSchauder lives in C([0,1])
/// and reads point values; the other two are orthonormal in L2([0,1]).
enum class BasisKind { FaberSchauder, SineONB, LegendreONB };

struct BasisSpec {
  BasisKind kind = BasisKind::SineONB;
};

const char* to_string(BasisKind kind);

/// True when coefficients are read off point values rather than inner products.
bool uses_point_evaluation(BasisKind kind);

/// Throws std::invalid_argument when f's space tag cannot feed this basis.
void require_basis_compatible(const BasisSpec& spec, const GridFunction& f);

/// i-th basis element rasterized on the given grid (0-based index).
/// Faber-Schauder ordering is level-major over dyadic midpoints:
/// constant, ramp, then hats at 1/2; 1/4, 3/4; 1/8, 3/8, 5/8, 7/8; ...
GridFunction basis_atom(const BasisSpec& spec, Eigen::Index i, const Domain& domain,
                        std::array<Eigen::Index, 2> nodes);

/// Coefficient functional c_i(f). Faber-Schauder uses the dyadic midpoint
/// deviation f(m) - (f(l)+f(r))/2; the ONBs use the trapezoid inner product.
double basis_coefficient(const BasisSpec& spec, Eigen::Index i, const GridFunction& f);

Eigen::VectorXd basis_coefficients(const BasisSpec& spec, Eigen::Index n,
                                   const GridFunction& f);

/// Dyadic support data of the i-th Faber-Schauder atom.
struct DyadicAtom {
  double left;
  double mid;
  double right;
};
DyadicAtom faber_schauder_support(Eigen::Index i);

}  // namespace opcodec
