#include "opcodec/latent_map.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace opcodec {

FitRegion fit_region(Eigen::Index dim, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("fit_region: radius must be positive and finite");
  }
  return FitRegion{Eigen::VectorXd::Zero(dim), radius};
}

bool region_contains(const FitRegion& region, const Eigen::VectorXd& x, double tol) {
  return (x - region.center).norm() <= region.radius + tol;
}

const char* to_string(LatentFamily family) {
  switch (family) {
    case LatentFamily::Polynomial: return "polynomial";
    case LatentFamily::KernelRidge: return "kernel_ridge";
  }
  return "?";
}

Eigen::MatrixXi total_degree_exponents(Eigen::Index dims, int degree) {
  if (dims < 1) throw std::invalid_argument("total_degree_exponents: need a dimension");
  if (degree < 0) throw std::invalid_argument("total_degree_exponents: degree >= 0");
  std::vector<Eigen::VectorXi> rows;
  Eigen::VectorXi current = Eigen::VectorXi::Zero(dims);
  // Graded order; within a grade, lexicographic with earlier axes heavier.
  std::function<void(Eigen::Index, int)> emit = [&](Eigen::Index axis, int remaining) {
    if (axis == dims - 1) {
      current[axis] = remaining;
      rows.push_back(current);
      return;
    }
    for (int use = remaining; use >= 0; --use) {
      current[axis] = use;
      emit(axis + 1, remaining - use);
    }
  };
  for (int grade = 0; grade <= degree; ++grade) emit(0, grade);
  Eigen::MatrixXi out(static_cast<Eigen::Index>(rows.size()), dims);
  for (size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = rows[r];
  return out;
}

namespace {

Eigen::VectorXd rescale_to_unit(const FitRegion& region, const Eigen::VectorXd& x) {
  return (x - region.center) / region.radius;
}

Eigen::VectorXd monomials_at(const Eigen::MatrixXi& exponents, const Eigen::VectorXd& xt) {
  Eigen::VectorXd out(exponents.rows());
  for (Eigen::Index m = 0; m < exponents.rows(); ++m) {
    double v = 1.0;
    for (Eigen::Index a = 0; a < exponents.cols(); ++a) {
      for (int p = 0; p < exponents(m, a); ++p) v *= xt[a];
    }
    out[m] = v;
  }
  return out;
}

void check_samples(const LatentSamples& samples) {
  if (samples.empty()) throw std::invalid_argument("fit: samples must be nonempty");
  for (const auto& [x, y] : samples) {
    if (x.size() != samples.front().first.size() ||
        y.size() != samples.front().second.size()) {
      throw std::invalid_argument("fit: inconsistent sample dimensions");
    }
  }
}

}  // namespace

Eigen::VectorXd LatentMap::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != in_dim_) {
    throw std::invalid_argument("LatentMap: input dimension mismatch");
  }
  if (family_ == LatentFamily::Polynomial) {
    const Eigen::VectorXd xt = rescale_to_unit(region_, x);
    return coefficients_.transpose() * monomials_at(exponents_, xt);
  }
  const double inv = 1.0 / (2.0 * bandwidth_ * bandwidth_);
  Eigen::VectorXd k(centers_.rows());
  for (Eigen::Index i = 0; i < centers_.rows(); ++i) {
    k[i] = std::exp(-(x - centers_.row(i).transpose()).squaredNorm() * inv);
  }
  return coefficients_.transpose() * k;
}

Eigen::VectorXd evaluate_latent(const LatentMap& map, const Eigen::VectorXd& x) {
  return map(x);
}

LatentMap LatentMap::polynomial(Eigen::MatrixXi exponents, Eigen::MatrixXd coefficients,
                                FitRegion region, double fit_residual, int degree) {
  if (exponents.rows() != coefficients.rows()) {
    throw std::invalid_argument("LatentMap::polynomial: exponent/coefficient mismatch");
  }
  LatentMap map;
  map.family_ = LatentFamily::Polynomial;
  map.in_dim_ = exponents.cols();
  map.out_dim_ = coefficients.cols();
  map.region_ = std::move(region);
  map.fit_residual_ = fit_residual;
  map.degree_ = degree;
  map.exponents_ = std::move(exponents);
  map.coefficients_ = std::move(coefficients);
  return map;
}

LatentMap LatentMap::kernel_ridge(Eigen::MatrixXd centers, Eigen::MatrixXd weights,
                                  double bandwidth, FitRegion region, double fit_residual) {
  if (centers.rows() != weights.rows()) {
    throw std::invalid_argument("LatentMap::kernel_ridge: center/weight mismatch");
  }
  LatentMap map;
  map.family_ = LatentFamily::KernelRidge;
  map.in_dim_ = centers.cols();
  map.out_dim_ = weights.cols();
  map.region_ = std::move(region);
  map.fit_residual_ = fit_residual;
  map.bandwidth_ = bandwidth;
  map.centers_ = std::move(centers);
  map.coefficients_ = std::move(weights);
  return map;
}

LatentMap LatentMap::identity(Eigen::Index dim, FitRegion region) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(dim, dim);
  return affine(a, Eigen::VectorXd::Zero(dim), std::move(region));
}

LatentMap LatentMap::constant(Eigen::VectorXd value, Eigen::Index in_dim, FitRegion region) {
  Eigen::MatrixXi exponents = total_degree_exponents(in_dim, 0);
  Eigen::MatrixXd coefficients = value.transpose();
  return polynomial(std::move(exponents), std::move(coefficients), std::move(region), 0.0, 0);
}

LatentMap LatentMap::affine(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                            FitRegion region) {
  const Eigen::Index in = a.cols();
  const Eigen::Index out = a.rows();
  if (b.size() != out || region.center.size() != in) {
    throw std::invalid_argument("LatentMap::affine: dimension mismatch");
  }
  Eigen::MatrixXi exponents = total_degree_exponents(in, 1);
  // x = center + radius * xt, so A x + b = (A center + b) + radius * A xt.
  Eigen::MatrixXd coefficients = Eigen::MatrixXd::Zero(exponents.rows(), out);
  coefficients.row(0) = (a * region.center + b).transpose();
  for (Eigen::Index m = 1; m < exponents.rows(); ++m) {
    Eigen::Index axis = 0;
    for (Eigen::Index c = 0; c < in; ++c) {
      if (exponents(m, c) == 1) axis = c;
    }
    coefficients.row(m) = region.radius * a.col(axis).transpose();
  }
  return polynomial(std::move(exponents), std::move(coefficients), std::move(region), 0.0, 1);
}

LatentMap fit_polynomial(const LatentSamples& samples, int degree, const FitRegion& region,
                         double ridge) {
  check_samples(samples);
  if (ridge < 0.0) throw std::invalid_argument("fit_polynomial: ridge must be >= 0");
  const Eigen::Index in = samples.front().first.size();
  const Eigen::Index out = samples.front().second.size();
  if (region.center.size() != in) {
    throw std::invalid_argument("fit_polynomial: region dimension mismatch");
  }
  for (const auto& [x, y] : samples) {
    if (!region_contains(region, x, 1e-9)) {
      throw std::invalid_argument("fit_polynomial: sample outside the fit region");
    }
  }

  Eigen::MatrixXi exponents = total_degree_exponents(in, degree);
  const Eigen::Index n_mono = exponents.rows();
  const Eigen::Index n_samp = static_cast<Eigen::Index>(samples.size());
  if (n_mono > n_samp && ridge <= 0.0) {
    throw std::runtime_error("fit_polynomial: underdetermined without ridge");
  }

  Eigen::MatrixXd design(n_samp, n_mono);
  Eigen::MatrixXd targets(n_samp, out);
  for (Eigen::Index s = 0; s < n_samp; ++s) {
    design.row(s) =
        monomials_at(exponents, rescale_to_unit(region, samples[static_cast<size_t>(s)].first))
            .transpose();
    targets.row(s) = samples[static_cast<size_t>(s)].second.transpose();
  }

  Eigen::MatrixXd coefficients;
  if (ridge > 0.0) {
    const Eigen::MatrixXd normal =
        design.transpose() * design + ridge * Eigen::MatrixXd::Identity(n_mono, n_mono);
    coefficients = normal.ldlt().solve(design.transpose() * targets);
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < n_mono) {
      throw std::runtime_error("fit_polynomial: rank-deficient design without ridge");
    }
    coefficients = qr.solve(targets);
  }
  if (!coefficients.allFinite()) {
    throw std::runtime_error("fit_polynomial: solve produced non-finite coefficients");
  }

  const double residual = (design * coefficients - targets).cwiseAbs().maxCoeff();
  return LatentMap::polynomial(std::move(exponents), std::move(coefficients), region,
                               residual, degree);
}

LatentMap fit_kernel_ridge(const LatentSamples& samples, double bandwidth, double ridge,
                           const FitRegion& region) {
  check_samples(samples);
  if (!(bandwidth > 0.0)) throw std::invalid_argument("fit_kernel_ridge: bandwidth > 0");
  if (ridge < 0.0) throw std::invalid_argument("fit_kernel_ridge: ridge must be >= 0");
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index in = samples.front().first.size();
  const Eigen::Index out = samples.front().second.size();

  Eigen::MatrixXd centers(n, in);
  Eigen::MatrixXd targets(n, out);
  for (Eigen::Index i = 0; i < n; ++i) {
    centers.row(i) = samples[static_cast<size_t>(i)].first.transpose();
    targets.row(i) = samples[static_cast<size_t>(i)].second.transpose();
  }
  const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
  Eigen::MatrixXd kernel(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = std::exp(-(centers.row(i) - centers.row(j)).squaredNorm() * inv);
      kernel(i, j) = v;
      kernel(j, i) = v;
    }
  }
  const Eigen::MatrixXd kernel_plain = kernel;
  kernel.diagonal().array() += ridge;
  Eigen::MatrixXd weights = kernel.ldlt().solve(targets);
  const double back_error = (kernel * weights - targets).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, targets.cwiseAbs().maxCoeff());
  if (!weights.allFinite() || back_error > 1e-6 * scale) {
    throw std::runtime_error(
        "fit_kernel_ridge: singular kernel system (duplicate samples need ridge > 0)");
  }

  const double residual = (kernel_plain * weights - targets).cwiseAbs().maxCoeff();
  return LatentMap::kernel_ridge(std::move(centers), std::move(weights), bandwidth, region,
                                 residual);
}

void LatentMap::write_csv(std::ostream& out) const {
  out << "family,in_dim,out_dim,degree,bandwidth,radius,fit_residual\n";
  out.precision(17);
  out << to_string(family_) << ',' << in_dim_ << ',' << out_dim_ << ',' << degree_ << ','
      << bandwidth_ << ',' << region_.radius << ',' << fit_residual_ << '\n';
  out << "coefficients\n";
  for (Eigen::Index r = 0; r < coefficients_.rows(); ++r) {
    for (Eigen::Index c = 0; c < coefficients_.cols(); ++c) {
      out << coefficients_(r, c) << (c + 1 < coefficients_.cols() ? ',' : '\n');
    }
  }
  if (family_ == LatentFamily::KernelRidge) {
    out << "centers\n";
    for (Eigen::Index r = 0; r < centers_.rows(); ++r) {
      for (Eigen::Index c = 0; c < centers_.cols(); ++c) {
        out << centers_(r, c) << (c + 1 < centers_.cols() ? ',' : '\n');
      }
    }
  } else {
    out << "exponents\n";
    for (Eigen::Index r = 0; r < exponents_.rows(); ++r) {
      for (Eigen::Index c = 0; c < exponents_.cols(); ++c) {
        out << exponents_(r, c) << (c + 1 < exponents_.cols() ? ',' : '\n');
      }
    }
  }
}

}  // namespace opcodec
