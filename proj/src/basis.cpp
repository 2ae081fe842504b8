#include "opcodec/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opcodec {

namespace {

void require_unit_interval(const Domain& domain) {
  if (domain.dim() != 1 || domain.axis(0).lo != 0.0 || domain.axis(0).hi != 1.0) {
    throw std::invalid_argument("basis: built-in bases live on [0,1]");
  }
}

double shifted_legendre(Eigen::Index degree, double x) {
  const double t = 2.0 * x - 1.0;
  double prev = 1.0;
  if (degree == 0) return prev;
  double cur = t;
  for (Eigen::Index k = 1; k < degree; ++k) {
    const double next =
        ((2.0 * static_cast<double>(k) + 1.0) * t * cur - static_cast<double>(k) * prev) /
        (static_cast<double>(k) + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

const char* to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::FaberSchauder: return "FaberSchauder";
    case BasisKind::SineONB: return "SineONB";
    case BasisKind::LegendreONB: return "LegendreONB";
  }
  return "?";
}

bool uses_point_evaluation(BasisKind kind) { return kind == BasisKind::FaberSchauder; }

void require_basis_compatible(const BasisSpec& spec, const GridFunction& f) {
  require_unit_interval(f.domain());
  if (uses_point_evaluation(spec.kind)) {
    if (f.space_tag() == SpaceTag::L2) {
      throw std::invalid_argument(
          "basis: Faber-Schauder coefficients need point evaluation, got an L2 function");
    }
  } else if (f.space_tag() != SpaceTag::L2) {
    throw std::invalid_argument("basis: orthonormal-basis coefficients need an L2 function");
  }
}

DyadicAtom faber_schauder_support(Eigen::Index i) {
  if (i < 2) {
    throw std::invalid_argument("faber_schauder_support: atoms 0 and 1 are not hats");
  }
  const Eigen::Index j = i - 2;
  Eigen::Index level = 0;
  while ((Eigen::Index{2} << level) <= j + 1) ++level;  // level = floor(log2(j+1))
  const Eigen::Index pos = j + 1 - (Eigen::Index{1} << level);
  const double width = 1.0 / static_cast<double>(Eigen::Index{1} << level);
  const double left = width * static_cast<double>(pos);
  return DyadicAtom{left, left + 0.5 * width, left + width};
}

GridFunction basis_atom(const BasisSpec& spec, Eigen::Index i, const Domain& domain,
                        std::array<Eigen::Index, 2> nodes) {
  require_unit_interval(domain);
  if (i < 0) throw std::invalid_argument("basis_atom: index must be nonnegative");
  switch (spec.kind) {
    case BasisKind::FaberSchauder: {
      if (i == 0) {
        return GridFunction::constant(domain, nodes, 1.0, SpaceTag::ContinuousSup);
      }
      if (i == 1) {
        return GridFunction::sample1d(nodes[0], [](double x) { return x; });
      }
      const DyadicAtom atom = faber_schauder_support(i);
      const double half = atom.mid - atom.left;
      return GridFunction::sample1d(nodes[0], [atom, half](double x) {
        return std::max(0.0, 1.0 - std::abs(x - atom.mid) / half);
      });
    }
    case BasisKind::SineONB: {
      const double freq = std::numbers::pi * static_cast<double>(i + 1);
      return GridFunction::sample1d(
          nodes[0], [freq](double x) { return std::numbers::sqrt2 * std::sin(freq * x); },
          SpaceTag::L2);
    }
    case BasisKind::LegendreONB: {
      const double scale = std::sqrt(2.0 * static_cast<double>(i) + 1.0);
      return GridFunction::sample1d(
          nodes[0], [i, scale](double x) { return scale * shifted_legendre(i, x); },
          SpaceTag::L2);
    }
  }
  throw std::logic_error("basis_atom: unknown basis kind");
}

double basis_coefficient(const BasisSpec& spec, Eigen::Index i, const GridFunction& f) {
  require_basis_compatible(spec, f);
  if (i < 0) throw std::invalid_argument("basis_coefficient: index must be nonnegative");
  if (spec.kind == BasisKind::FaberSchauder) {
    if (i == 0) return evaluate(f, 0.0);
    if (i == 1) return evaluate(f, 1.0) - evaluate(f, 0.0);
    const DyadicAtom atom = faber_schauder_support(i);
    return evaluate(f, atom.mid) - 0.5 * (evaluate(f, atom.left) + evaluate(f, atom.right));
  }
  return l2_inner(f, basis_atom(spec, i, f.domain(), f.shape()));
}

Eigen::VectorXd basis_coefficients(const BasisSpec& spec, Eigen::Index n,
                                   const GridFunction& f) {
  Eigen::VectorXd c(n);
  for (Eigen::Index i = 0; i < n; ++i) c[i] = basis_coefficient(spec, i, f);
  return c;
}

}  // namespace opcodec
