#pragma once

#include "opcodec/basis.hpp"
#include "opcodec/covering.hpp"
#include "opcodec/grid_function.hpp"

#include <functional>
#include <string>
#include <vector>

namespace opcodec {

enum class CodecKind { Sampling, Basis, Frame, Dense, Auxiliary };

const char* to_string(CodecKind kind);

/// Finite-dimensional encoding of a grid function. All built-in encoders
/// are linear; lipschitz_estimate is the analytic constant used when the
/// fitting region radius is derived.
struct Encoder {
  CodecKind kind = CodecKind::Sampling;
  Eigen::Index out_dim = 0;
  double lipschitz_estimate = 1.0;
  std::function<Eigen::VectorXd(const GridFunction&)> map;

  Eigen::VectorXd apply(const GridFunction& f) const;
};

/// Reconstruction of a grid function from coefficients, as a linear
/// combination of stored atoms unless a custom map is supplied.
struct Decoder {
  CodecKind kind = CodecKind::Sampling;
  Eigen::Index in_dim = 0;
  double lipschitz_estimate = 1.0;
  std::vector<GridFunction> atoms;
  std::function<GridFunction(const Eigen::VectorXd&)> map;

  GridFunction apply(const Eigen::VectorXd& mu) const;
};

/// Linear combination sum_i mu_i atoms[i].
GridFunction combine_atoms(const std::vector<GridFunction>& atoms,
                           const Eigen::VectorXd& mu);

Decoder make_atom_decoder(CodecKind kind, std::vector<GridFunction> atoms,
                          double lipschitz_estimate);

/// Identity approximator T = decoder o encoder.
std::function<GridFunction(const GridFunction&)> compose_identity(const Encoder& enc,
                                                                  const Decoder& dec);

// ---- sampling family -------------------------------------------------------

/// f |-> (f(y_1), ..., f(y_k)) at the covering centers. Rejects L2 input.
Encoder sampling_encoder(const Covering& cov);

/// mu |-> sum_i mu_i P_i rasterized on the given grid.
Decoder sampling_decoder(const PartitionOfUnity& pou, const Domain& domain,
                         std::array<Eigen::Index, 2> nodes);

/// T_n for the 1/n-covering of the domain; output lives on the input grid.
class SamplingIdentity {
 public:
  SamplingIdentity(int n, const Domain& domain);

  GridFunction operator()(const GridFunction& f) const;
  const Covering& covering() const { return pou_.covering(); }
  const PartitionOfUnity& pou() const { return pou_; }
  int n() const { return n_; }

 private:
  int n_;
  PartitionOfUnity pou_;
  Encoder encoder_;
};

SamplingIdentity sampling_identity(int n, const Domain& domain);

/// C1 variant on [0,1]: f |-> f(0) + sum_i f'(y_i) * int_0^y P_i, with the
/// derivative reconstructed as sum_i f'(y_i) P_i. Quadrature runs at 4x the
/// input grid resolution.
class C1SamplingIdentity {
 public:
  explicit C1SamplingIdentity(int n);

  GridFunction operator()(const GridFunction& f) const;
  const PartitionOfUnity& pou() const { return pou_; }
  int n() const { return n_; }

 private:
  int n_;
  PartitionOfUnity pou_;
};

C1SamplingIdentity c1_sampling_identity(int n);

// ---- basis family ----------------------------------------------------------

Encoder basis_encoder(const BasisSpec& spec, Eigen::Index n);

Decoder basis_decoder(const BasisSpec& spec, Eigen::Index n, const Domain& domain,
                      std::array<Eigen::Index, 2> nodes);

/// Short key=value descriptor block for manifests.
std::string describe(const Encoder& enc);
std::string describe(const Decoder& dec);

}  // namespace opcodec
