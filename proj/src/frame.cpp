#include "opcodec/frame.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace opcodec {

namespace {
constexpr double kRelativeCutoff = 1e-12;
constexpr double kReconstructionTol = 1e-8;
}  // namespace

FrameSystem build_frame(const std::vector<GridFunction>& atoms) {
  if (atoms.empty()) throw std::invalid_argument("build_frame: no atoms");
  const Eigen::Index n = static_cast<Eigen::Index>(atoms.size());
  for (const GridFunction& a : atoms) {
    require_same_grid(atoms.front(), a);
    if (a.space_tag() != SpaceTag::L2) {
      throw std::invalid_argument("build_frame: atoms must be L2-tagged");
    }
  }

  FrameSystem fs;
  fs.atoms = atoms;
  fs.gram.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = l2_inner(atoms[static_cast<size_t>(i)], atoms[static_cast<size_t>(j)]);
      fs.gram(i, j) = v;
      fs.gram(j, i) = v;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fs.gram);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("build_frame: eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lambda_max = lambda.maxCoeff();
  if (!(lambda_max > 0.0)) {
    throw std::runtime_error("build_frame: degenerate frame, all atoms vanish");
  }
  const double cutoff = kRelativeCutoff * lambda_max;

  Eigen::VectorXd inv_lambda = Eigen::VectorXd::Zero(n);
  double lambda_min_kept = lambda_max;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lambda[i] > cutoff) {
      inv_lambda[i] = 1.0 / lambda[i];
      lambda_min_kept = std::min(lambda_min_kept, lambda[i]);
    }
  }
  fs.lower_bound = lambda_min_kept;
  fs.upper_bound = lambda_max;

  // Dual coefficients are the Gram pseudoinverse: f*_i = sum_j pinv(G)_ji f_j.
  const Eigen::MatrixXd pinv =
      eig.eigenvectors() * inv_lambda.asDiagonal() * eig.eigenvectors().transpose();
  fs.dual_atoms.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    fs.dual_atoms.push_back(combine_atoms(fs.atoms, pinv.col(i)));
  }

  // Reconstruction identity sum_i <f, f*_i> f_i = f on the span, checked on
  // the atoms themselves.
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd coeffs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      coeffs[i] = l2_inner(fs.atoms[static_cast<size_t>(j)], fs.dual_atoms[static_cast<size_t>(i)]);
    }
    const GridFunction rec = combine_atoms(fs.atoms, coeffs);
    const double err = l2_norm(rec - fs.atoms[static_cast<size_t>(j)]);
    if (!(err <= kReconstructionTol * std::max(1.0, std::sqrt(fs.upper_bound)))) {
      throw std::runtime_error("build_frame: dual fails the reconstruction identity");
    }
  }
  return fs;
}

Encoder frame_encoder(const FrameSystem& fs) {
  Encoder enc;
  enc.kind = CodecKind::Frame;
  enc.out_dim = static_cast<Eigen::Index>(fs.atoms.size());
  enc.lipschitz_estimate = std::sqrt(1.0 / fs.lower_bound);  // dual upper bound
  enc.map = [duals = fs.dual_atoms](const GridFunction& f) {
    if (f.space_tag() != SpaceTag::L2) {
      throw std::invalid_argument("frame_encoder: input must be L2-tagged");
    }
    Eigen::VectorXd out(static_cast<Eigen::Index>(duals.size()));
    for (size_t i = 0; i < duals.size(); ++i) {
      out[static_cast<Eigen::Index>(i)] = l2_inner(f, duals[i]);
    }
    return out;
  };
  return enc;
}

Decoder frame_decoder(const FrameSystem& fs) {
  return make_atom_decoder(CodecKind::Frame, fs.atoms, std::sqrt(fs.upper_bound));
}

double frame_energy(const FrameSystem& fs, const GridFunction& f) {
  double total = 0.0;
  for (const GridFunction& atom : fs.atoms) {
    const double c = l2_inner(f, atom);
    total += c * c;
  }
  return total;
}

void write_gram_csv(const FrameSystem& fs, std::ostream& out) {
  out << "lower_bound," << fs.lower_bound << '\n';
  out << "upper_bound," << fs.upper_bound << '\n';
  out.precision(17);
  const Eigen::Index n = fs.gram.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out << fs.gram(i, j) << (j + 1 < n ? ',' : '\n');
    }
  }
}

}  // namespace opcodec
