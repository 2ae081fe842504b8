#include "opcodec/covering.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace opcodec {

Covering build_epsilon_covering(const Domain& domain, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("build_epsilon_covering: epsilon must be positive");
  }
  std::array<Eigen::Index, 2> counts{1, 1};
  for (int a = 0; a < domain.dim(); ++a) {
    counts[static_cast<size_t>(a)] =
        static_cast<Eigen::Index>(std::ceil(domain.length(a) / epsilon));
  }
  Covering cov{domain, epsilon, {}};
  cov.centers.reserve(static_cast<size_t>(counts[0] * counts[1]));
  for (Eigen::Index i = 0; i < counts[0]; ++i) {
    Eigen::VectorXd p(domain.dim());
    p[0] = domain.axis(0).lo +
           domain.length(0) * (static_cast<double>(i) + 0.5) / static_cast<double>(counts[0]);
    if (domain.dim() == 1) {
      cov.centers.push_back(p);
      continue;
    }
    for (Eigen::Index j = 0; j < counts[1]; ++j) {
      p[1] = domain.axis(1).lo +
             domain.length(1) * (static_cast<double>(j) + 0.5) / static_cast<double>(counts[1]);
      cov.centers.push_back(p);
    }
  }
  validate_covering(cov);
  return cov;
}

void validate_covering(const Covering& cov, int probe_factor) {
  if (cov.centers.empty()) {
    throw std::runtime_error("covering violation: no centers");
  }
  const Domain& domain = cov.domain;
  const int dim = domain.dim();

  // Probe resolution: probe_factor nodes per center-spacing cell, capped so
  // pathological inputs cannot allocate unbounded probe grids.
  std::array<Eigen::Index, 2> probes{2, 1};
  const double spacing_guess =
      std::pow(static_cast<double>(cov.centers.size()), -1.0 / dim);
  for (int a = 0; a < dim; ++a) {
    const double cells = std::min(1.0 / spacing_guess, 2000.0);
    probes[static_cast<size_t>(a)] =
        std::max<Eigen::Index>(2, static_cast<Eigen::Index>(cells * probe_factor) + 1);
  }
  while (probes[0] * probes[1] > 2'200'000) {
    if (probes[0] >= probes[1]) probes[0] = probes[0] / 2 + 1;
    else probes[1] = probes[1] / 2 + 1;
  }

  Eigen::MatrixXd centers(cov.centers.size(), dim);
  for (size_t i = 0; i < cov.centers.size(); ++i) centers.row(static_cast<Eigen::Index>(i)) = cov.centers[i];
  const Eigen::VectorXd center_sq = centers.rowwise().squaredNorm();

  const double eps_sq = cov.epsilon * cov.epsilon;
  const Eigen::Index chunk = 4096;
  Eigen::MatrixXd pts(chunk, dim);
  Eigen::Index filled = 0;
  auto flush = [&](Eigen::Index count) {
    // Squared distances via |p|^2 + |c|^2 - 2 p.c; min over centers.
    Eigen::MatrixXd d2 = -2.0 * (pts.topRows(count) * centers.transpose());
    d2.colwise() += pts.topRows(count).rowwise().squaredNorm();
    d2.rowwise() += center_sq.transpose();
    if (!(d2.rowwise().minCoeff().maxCoeff() < eps_sq)) {
      throw std::runtime_error("covering violation: probe point not strictly covered");
    }
  };
  for (Eigen::Index ix = 0; ix < probes[0]; ++ix) {
    const double x = domain.axis(0).lo + domain.length(0) * static_cast<double>(ix) /
                                             static_cast<double>(probes[0] - 1);
    for (Eigen::Index iy = 0; iy < probes[1]; ++iy) {
      pts(filled, 0) = x;
      if (dim == 2) {
        pts(filled, 1) = domain.axis(1).lo + domain.length(1) * static_cast<double>(iy) /
                                                 static_cast<double>(probes[1] - 1);
      }
      if (++filled == chunk) {
        flush(filled);
        filled = 0;
      }
    }
  }
  if (filled > 0) flush(filled);
}

double bump_value(const Eigen::VectorXd& y, const Eigen::VectorXd& center,
                  double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("bump_value: epsilon must be positive");
  }
  const double gap = epsilon * epsilon - (y - center).squaredNorm();
  if (!(gap > 0.0)) return 0.0;
  return std::exp(-1.0 / gap);
}

double bump_value(double y, double center, double epsilon) {
  Eigen::VectorXd a(1), b(1);
  a[0] = y;
  b[0] = center;
  return bump_value(a, b, epsilon);
}

void write_csv(const Covering& cov, std::ostream& out) {
  out << (cov.domain.dim() == 1 ? "index,x\n" : "index,x,y\n");
  out.precision(17);
  for (size_t i = 0; i < cov.centers.size(); ++i) {
    out << i << ',' << cov.centers[i][0];
    if (cov.domain.dim() == 2) out << ',' << cov.centers[i][1];
    out << '\n';
  }
}

PartitionOfUnity::PartitionOfUnity(Covering cov) : covering_(std::move(cov)) {
  if (covering_.centers.empty()) {
    throw std::invalid_argument("PartitionOfUnity: covering has no centers");
  }
  // A vanishing denominator means an uncovered point; a 10x probe with the
  // midpoint construction's eps/2 margin is enough to certify against it.
  // (Coverings from build_epsilon_covering were already certified at 100x.)
  validate_covering(covering_, 10);
}

Eigen::VectorXd PartitionOfUnity::values_at(const Eigen::VectorXd& y) const {
  const Eigen::Index k = size();
  const double eps_sq = covering_.epsilon * covering_.epsilon;
  Eigen::VectorXd exponent(k);
  double max_exponent = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < k; ++i) {
    const double gap = eps_sq - (y - covering_.centers[static_cast<size_t>(i)]).squaredNorm();
    // -1/gap may round to -inf right at the support boundary; the atom then
    // contributes exactly zero, same as the outside branch.
    exponent[i] = gap > 0.0 ? -1.0 / gap : -std::numeric_limits<double>::infinity();
    max_exponent = std::max(max_exponent, exponent[i]);
  }
  if (std::isinf(max_exponent)) {
    throw std::runtime_error(
        "partition of unity: vanishing denominator, point not covered");
  }
  Eigen::VectorXd out(k);
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    out[i] = std::isinf(exponent[i]) ? 0.0 : std::exp(exponent[i] - max_exponent);
    total += out[i];
  }
  out /= total;
  return out;
}

double PartitionOfUnity::value(Eigen::Index i, const Eigen::VectorXd& y) const {
  if (i < 0 || i >= size()) {
    throw std::out_of_range("PartitionOfUnity: atom index out of range");
  }
  return values_at(y)[i];
}

double PartitionOfUnity::value(Eigen::Index i, double y) const {
  Eigen::VectorXd p(1);
  p[0] = y;
  return value(i, p);
}

PartitionOfUnity partition_of_unity(Covering cov) {
  return PartitionOfUnity(std::move(cov));
}

PouCumulative::PouCumulative(const PartitionOfUnity& pou, Eigen::Index cells) {
  const Domain& domain = pou.covering().domain;
  if (domain.dim() != 1) {
    throw std::invalid_argument("PouCumulative: 1-D domains only");
  }
  if (cells < 1) {
    throw std::invalid_argument("PouCumulative: need at least one cell");
  }
  lo_ = domain.axis(0).lo;
  hi_ = domain.axis(0).hi;
  const double h = (hi_ - lo_) / static_cast<double>(cells);
  const Eigen::Index k = pou.size();
  Eigen::MatrixXd samples(cells + 1, k);
  Eigen::VectorXd p(1);
  for (Eigen::Index r = 0; r <= cells; ++r) {
    p[0] = lo_ + h * static_cast<double>(r);
    samples.row(r) = pou.values_at(p).transpose();
  }
  table_.resize(cells + 1, k);
  table_.row(0).setZero();
  for (Eigen::Index r = 1; r <= cells; ++r) {
    table_.row(r) = table_.row(r - 1) + 0.5 * h * (samples.row(r - 1) + samples.row(r));
  }
}

double PouCumulative::integral(Eigen::Index i, double y) const {
  if (i < 0 || i >= table_.cols()) {
    throw std::out_of_range("PouCumulative: atom index out of range");
  }
  if (y < lo_ - 1e-12 || y > hi_ + 1e-12) {
    throw std::domain_error("PouCumulative: query outside domain");
  }
  const Eigen::Index cells = table_.rows() - 1;
  const double t = (y - lo_) / (hi_ - lo_) * static_cast<double>(cells);
  Eigen::Index cell = static_cast<Eigen::Index>(std::floor(t));
  if (cell < 0) cell = 0;
  if (cell > cells - 1) cell = cells - 1;
  const double frac = t - static_cast<double>(cell);
  return (1.0 - frac) * table_(cell, i) + frac * table_(cell + 1, i);
}

double pou_antiderivative(const PartitionOfUnity& pou, Eigen::Index i, double y,
                          Eigen::Index cells) {
  if (pou.covering().domain.dim() != 1) {
    throw std::invalid_argument("pou_antiderivative: 1-D domains only");
  }
  return PouCumulative(pou, cells).integral(i, y);
}

}  // namespace opcodec
