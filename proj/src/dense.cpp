#include "opcodec/dense.hpp"

#include "opcodec/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opcodec {

namespace {

double atoms_spectral_norm(const std::vector<GridFunction>& atoms) {
  const Eigen::Index n = static_cast<Eigen::Index>(atoms.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = l2_inner(atoms[static_cast<size_t>(i)], atoms[static_cast<size_t>(j)]);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

}  // namespace

Perturber zero_perturber() {
  return [](Eigen::Index, const GridFunction& reference) {
    return GridFunction::zero_like(reference);
  };
}

Perturber seeded_mode_perturber(unsigned seed, double magnitude, Eigen::Index band_offset) {
  return [seed, magnitude, band_offset](Eigen::Index i, const GridFunction& reference) {
    Rng rng(0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1) + seed);
    const double a = magnitude * rng.gaussian();
    const double b = magnitude * rng.gaussian();
    const double f1 = std::numbers::pi * static_cast<double>(band_offset + i + 1);
    const double f2 = std::numbers::pi * static_cast<double>(band_offset + i + 2);
    GridFunction delta = GridFunction::sample(
        reference.domain(), reference.shape(),
        [&](const Eigen::VectorXd& p) {
          return a * std::numbers::sqrt2 * std::sin(f1 * p[0]) +
                 b * std::numbers::sqrt2 * std::sin(f2 * p[0]);
        },
        reference.space_tag());
    return delta;
  };
}

DenseCodec dense_substitution_codec(Eigen::Index n, const BasisSpec& reference,
                                    const Perturber& perturber, const Domain& domain,
                                    std::array<Eigen::Index, 2> nodes) {
  if (n < 1) throw std::invalid_argument("dense_substitution_codec: n must be at least 1");
  if (uses_point_evaluation(reference.kind)) {
    throw std::invalid_argument("dense_substitution_codec: reference must be orthonormal");
  }
  DenseSubstitution sub;
  sub.budget = 1.0 / (3.0 * static_cast<double>(n));
  sub.reference_atoms.reserve(static_cast<size_t>(n));
  std::vector<GridFunction> deltas;
  deltas.reserve(static_cast<size_t>(n));
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sub.reference_atoms.push_back(basis_atom(reference, i, domain, nodes));
    deltas.push_back(perturber(i, sub.reference_atoms.back()));
    require_same_grid(sub.reference_atoms.back(), deltas.back());
    total += l2_norm(deltas.back());
  }
  double scale = 1.0;
  if (total > sub.budget) scale = sub.budget / total;
  sub.total_drift = 0.0;
  sub.substitute_atoms.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    sub.substitute_atoms.push_back(sub.reference_atoms[static_cast<size_t>(i)] +
                                   scale * deltas[static_cast<size_t>(i)]);
    sub.total_drift += l2_norm(scale * deltas[static_cast<size_t>(i)]);
  }
  if (!std::isfinite(sub.total_drift) || sub.total_drift > sub.budget * (1.0 + 1e-9)) {
    throw std::runtime_error("dense_substitution_codec: budget violated after rescale");
  }

  const double lip = atoms_spectral_norm(sub.substitute_atoms);
  DenseCodec codec;
  codec.encoder.kind = CodecKind::Dense;
  codec.encoder.out_dim = n;
  codec.encoder.lipschitz_estimate = lip;
  codec.encoder.map = [atoms = sub.substitute_atoms](const GridFunction& f) {
    if (f.space_tag() != SpaceTag::L2) {
      throw std::invalid_argument("dense encoder: input must be L2-tagged");
    }
    Eigen::VectorXd out(static_cast<Eigen::Index>(atoms.size()));
    for (size_t i = 0; i < atoms.size(); ++i) {
      out[static_cast<Eigen::Index>(i)] = l2_inner(f, atoms[i]);
    }
    return out;
  };
  codec.decoder = make_atom_decoder(CodecKind::Dense, sub.substitute_atoms, lip);
  codec.substitution = std::move(sub);
  return codec;
}

NormedDenseCodec normed_substitution_codec(
    const Encoder& base_encoder, const std::vector<GridFunction>& base_atoms,
    const Perturber& perturber, double per_atom_budget,
    const std::function<double(const GridFunction&)>& norm) {
  if (base_atoms.empty()) {
    throw std::invalid_argument("normed_substitution_codec: missing range basis atoms");
  }
  if (base_encoder.out_dim != static_cast<Eigen::Index>(base_atoms.size())) {
    throw std::invalid_argument(
        "normed_substitution_codec: coefficient functionals do not match the atoms");
  }
  if (!(per_atom_budget > 0.0)) {
    throw std::invalid_argument("normed_substitution_codec: budget must be positive");
  }

  NormedDenseCodec codec;
  codec.per_atom_budget = per_atom_budget;
  std::vector<GridFunction> substitutes;
  substitutes.reserve(base_atoms.size());
  for (size_t i = 0; i < base_atoms.size(); ++i) {
    GridFunction delta = perturber(static_cast<Eigen::Index>(i), base_atoms[i]);
    const double drift = norm(delta);
    if (drift > per_atom_budget) {
      delta = (per_atom_budget / drift) * delta;
    }
    codec.max_atom_drift = std::max(codec.max_atom_drift, norm(delta));
    substitutes.push_back(base_atoms[i] + delta);
  }
  if (!std::isfinite(codec.max_atom_drift) ||
      codec.max_atom_drift > per_atom_budget * (1.0 + 1e-9)) {
    throw std::runtime_error("normed_substitution_codec: budget violated after rescale");
  }

  // Valid for any norm: ||sum mu_i a_i|| <= |mu|_2 sqrt(sum ||a_i||^2).
  double lip_sq = 0.0;
  for (const GridFunction& a : substitutes) {
    const double na = norm(a);
    lip_sq += na * na;
  }
  codec.auxiliary_encoder = base_encoder;
  codec.auxiliary_encoder.kind = CodecKind::Auxiliary;
  codec.dense_decoder =
      make_atom_decoder(CodecKind::Dense, std::move(substitutes), std::sqrt(lip_sq));
  return codec;
}

double onb_per_atom_budget(Eigen::Index n) {
  const double nn = static_cast<double>(n);
  return 1.0 / (nn * std::sqrt(nn));
}

double sampling_per_atom_budget(Eigen::Index n, Eigen::Index k) {
  return 1.0 / (static_cast<double>(n) * static_cast<double>(k));
}

}  // namespace opcodec
