#include "opcodec/codec.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace opcodec {

const char* to_string(CodecKind kind) {
  switch (kind) {
    case CodecKind::Sampling: return "sampling";
    case CodecKind::Basis: return "basis";
    case CodecKind::Frame: return "frame";
    case CodecKind::Dense: return "dense";
    case CodecKind::Auxiliary: return "auxiliary";
  }
  return "?";
}

Eigen::VectorXd Encoder::apply(const GridFunction& f) const {
  Eigen::VectorXd out = map(f);
  if (out.size() != out_dim) {
    throw std::logic_error("Encoder: map produced wrong output length");
  }
  return out;
}

GridFunction Decoder::apply(const Eigen::VectorXd& mu) const {
  if (mu.size() != in_dim) {
    throw std::invalid_argument("Decoder: coefficient length mismatch");
  }
  return map(mu);
}

GridFunction combine_atoms(const std::vector<GridFunction>& atoms,
                           const Eigen::VectorXd& mu) {
  if (atoms.empty()) throw std::invalid_argument("combine_atoms: no atoms");
  if (mu.size() != static_cast<Eigen::Index>(atoms.size())) {
    throw std::invalid_argument("combine_atoms: coefficient length mismatch");
  }
  Eigen::VectorXd values = Eigen::VectorXd::Zero(atoms.front().size());
  for (size_t i = 0; i < atoms.size(); ++i) {
    values += mu[static_cast<Eigen::Index>(i)] * atoms[i].values();
  }
  return atoms.front().with_values(std::move(values));
}

Decoder make_atom_decoder(CodecKind kind, std::vector<GridFunction> atoms,
                          double lipschitz_estimate) {
  if (atoms.empty()) throw std::invalid_argument("make_atom_decoder: no atoms");
  Decoder dec;
  dec.kind = kind;
  dec.in_dim = static_cast<Eigen::Index>(atoms.size());
  dec.lipschitz_estimate = lipschitz_estimate;
  dec.atoms = std::move(atoms);
  dec.map = [atoms = dec.atoms](const Eigen::VectorXd& mu) {
    return combine_atoms(atoms, mu);
  };
  return dec;
}

std::function<GridFunction(const GridFunction&)> compose_identity(const Encoder& enc,
                                                                  const Decoder& dec) {
  if (enc.out_dim != dec.in_dim) {
    throw std::invalid_argument("compose_identity: encoder/decoder dimension mismatch");
  }
  return [enc, dec](const GridFunction& f) { return dec.apply(enc.apply(f)); };
}

// ---- sampling family -------------------------------------------------------

Encoder sampling_encoder(const Covering& cov) {
  if (cov.centers.empty()) throw std::invalid_argument("sampling_encoder: empty covering");
  Encoder enc;
  enc.kind = CodecKind::Sampling;
  enc.out_dim = static_cast<Eigen::Index>(cov.centers.size());
  enc.lipschitz_estimate = 1.0;  // sup-norm: point evaluations are 1-Lipschitz
  enc.map = [centers = cov.centers](const GridFunction& f) {
    if (f.space_tag() == SpaceTag::L2) {
      throw std::invalid_argument("sampling_encoder: sampling an L2 function is ill-defined");
    }
    Eigen::VectorXd out(static_cast<Eigen::Index>(centers.size()));
    for (size_t i = 0; i < centers.size(); ++i) {
      out[static_cast<Eigen::Index>(i)] = evaluate(f, centers[i]);
    }
    return out;
  };
  return enc;
}

Decoder sampling_decoder(const PartitionOfUnity& pou, const Domain& domain,
                         std::array<Eigen::Index, 2> nodes) {
  if (!(domain == pou.covering().domain)) {
    throw std::invalid_argument("sampling_decoder: domain mismatch with covering");
  }
  const Eigen::Index k = pou.size();
  // Rasterize the partition once; atoms then make the decoder an ordinary
  // linear combination.
  if (domain.dim() == 1) nodes[1] = 1;
  const Eigen::Index total = nodes[0] * (domain.dim() == 2 ? nodes[1] : 1);
  Eigen::MatrixXd raster(total, k);
  GridFunction probe = GridFunction::constant(domain, nodes, 0.0, SpaceTag::ContinuousSup);
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    raster.row(flat) = pou.values_at(probe.node_point(flat)).transpose();
  }
  std::vector<GridFunction> atoms;
  atoms.reserve(static_cast<size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    atoms.push_back(probe.with_values(raster.col(i)));
  }
  // Nonnegative partition of unity: sup|sum mu_i P_i| <= max|mu_i|.
  return make_atom_decoder(CodecKind::Sampling, std::move(atoms), 1.0);
}

SamplingIdentity::SamplingIdentity(int n, const Domain& domain)
    : n_(n),
      pou_((n >= 1)
               ? build_epsilon_covering(domain, 1.0 / static_cast<double>(n))
               : throw std::invalid_argument("sampling_identity: n must be at least 1")),
      encoder_(sampling_encoder(pou_.covering())) {}

GridFunction SamplingIdentity::operator()(const GridFunction& f) const {
  Decoder dec = sampling_decoder(pou_, f.domain(), f.shape());
  GridFunction out = dec.apply(encoder_.apply(f));
  return out.with_tag(f.space_tag() == SpaceTag::C1 ? SpaceTag::ContinuousSup
                                                    : f.space_tag());
}

SamplingIdentity sampling_identity(int n, const Domain& domain) {
  return SamplingIdentity(n, domain);
}

C1SamplingIdentity::C1SamplingIdentity(int n)
    : n_(n),
      pou_((n >= 1)
               ? build_epsilon_covering(Domain::unit_interval(), 1.0 / static_cast<double>(n))
               : throw std::invalid_argument("c1_sampling_identity: n must be at least 1")) {}

GridFunction C1SamplingIdentity::operator()(const GridFunction& f) const {
  if (f.space_tag() != SpaceTag::C1 || !f.has_derivative()) {
    throw std::invalid_argument("c1_sampling_identity: input needs derivative samples");
  }
  if (f.domain().dim() != 1 || !(f.domain() == Domain::unit_interval())) {
    throw std::invalid_argument("c1_sampling_identity: defined on [0,1]");
  }
  const Eigen::Index k = pou_.size();
  Eigen::VectorXd deriv_at_centers(k);
  GridFunction fprime = f.with_values(f.derivative_values());
  for (Eigen::Index i = 0; i < k; ++i) {
    deriv_at_centers[i] = evaluate(fprime, pou_.covering().centers[static_cast<size_t>(i)]);
  }
  const double f0 = f.values()[0];

  const Eigen::Index cells = 4 * (f.nodes(0) - 1);
  PouCumulative cumulative(pou_, cells);
  Eigen::VectorXd values(f.size());
  Eigen::VectorXd derivs(f.size());
  for (Eigen::Index node = 0; node < f.size(); ++node) {
    const double y = f.node_coord(0, node);
    double acc = f0;
    for (Eigen::Index i = 0; i < k; ++i) {
      acc += deriv_at_centers[i] * cumulative.integral(i, y);
    }
    values[node] = acc;
    Eigen::VectorXd p(1);
    p[0] = y;
    derivs[node] = deriv_at_centers.dot(pou_.values_at(p));
  }
  return GridFunction(f.domain(), f.shape(), std::move(values), std::move(derivs),
                      SpaceTag::C1);
}

C1SamplingIdentity c1_sampling_identity(int n) { return C1SamplingIdentity(n); }

// ---- basis family ----------------------------------------------------------

Encoder basis_encoder(const BasisSpec& spec, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("basis_encoder: n must be at least 1");
  Encoder enc;
  enc.kind = CodecKind::Basis;
  enc.out_dim = n;
  // Orthonormal coefficients are nonexpansive in L2; each dyadic midpoint
  // deviation is bounded by 2 sup|f|.
  enc.lipschitz_estimate =
      uses_point_evaluation(spec.kind) ? 2.0 * std::sqrt(static_cast<double>(n)) : 1.0;
  enc.map = [spec, n](const GridFunction& f) { return basis_coefficients(spec, n, f); };
  return enc;
}

Decoder basis_decoder(const BasisSpec& spec, Eigen::Index n, const Domain& domain,
                      std::array<Eigen::Index, 2> nodes) {
  if (n < 1) throw std::invalid_argument("basis_decoder: n must be at least 1");
  std::vector<GridFunction> atoms;
  atoms.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    atoms.push_back(basis_atom(spec, i, domain, nodes));
  }
  const double lip = uses_point_evaluation(spec.kind)
                         ? std::sqrt(static_cast<double>(n))
                         : 1.0;
  return make_atom_decoder(CodecKind::Basis, std::move(atoms), lip);
}

std::string describe(const Encoder& enc) {
  std::ostringstream out;
  out << "encoder.kind=" << to_string(enc.kind) << '\n'
      << "encoder.out_dim=" << enc.out_dim << '\n'
      << "encoder.lipschitz=" << enc.lipschitz_estimate << '\n';
  return out.str();
}

std::string describe(const Decoder& dec) {
  std::ostringstream out;
  out << "decoder.kind=" << to_string(dec.kind) << '\n'
      << "decoder.in_dim=" << dec.in_dim << '\n'
      << "decoder.lipschitz=" << dec.lipschitz_estimate << '\n';
  return out.str();
}

}  // namespace opcodec
