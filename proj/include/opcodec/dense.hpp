#pragma once

#include "opcodec/codec.hpp"

namespace opcodec {

/// Produces the raw perturbation delta_i added to reference atom i; the
/// codec builders rescale the deltas to meet their proximity budgets.
using Perturber = std::function<GridFunction(Eigen::Index i, const GridFunction& reference)>;

/// No perturbation: substitutes equal the reference atoms.
Perturber zero_perturber();

/// Seeded perturbation made of sine modes above the reference band, so the
/// substitutes stay genuinely different from the first n basis elements.
Perturber seeded_mode_perturber(unsigned seed, double magnitude, Eigen::Index band_offset);

/// Substitute atoms v_i near an orthonormal reference with the certified
/// total budget sum_i ||v_i - b_i|| <= 1/(3n).
struct DenseSubstitution {
  std::vector<GridFunction> reference_atoms;
  std::vector<GridFunction> substitute_atoms;
  double budget = 0.0;       // 1/(3n)
  double total_drift = 0.0;  // sum of ||v_i - b_i|| after rescaling
};

struct DenseCodec {
  Encoder encoder;
  Decoder decoder;
  DenseSubstitution substitution;
};

/// Hilbert-space substitution codec: encoder f |-> (<f, v_i>)_i, decoder
/// mu |-> sum mu_i v_i, with v_i within total L2 budget 1/(3n) of the first
/// n atoms of the orthonormal reference basis.
DenseCodec dense_substitution_codec(Eigen::Index n, const BasisSpec& reference,
                                    const Perturber& perturber, const Domain& domain,
                                    std::array<Eigen::Index, 2> nodes);

/// Normed-space variant: the auxiliary encoder reuses the base coefficient
/// functionals (f |-> c_i(T_n f)) while the dense decoder replaces each range
/// basis element b_i by a substitute within per_atom_budget in the norm that
/// measures the space. The per-atom budget encodes the proof's proximity rule
/// 1/(n * p_n * ||T_n||) for the chosen base family.
struct NormedDenseCodec {
  Encoder auxiliary_encoder;
  Decoder dense_decoder;
  double per_atom_budget = 0.0;
  double max_atom_drift = 0.0;
};

NormedDenseCodec normed_substitution_codec(
    const Encoder& base_encoder, const std::vector<GridFunction>& base_atoms,
    const Perturber& perturber, double per_atom_budget,
    const std::function<double(const GridFunction&)>& norm);

/// Proximity budgets for the two base families shipped here.
double onb_per_atom_budget(Eigen::Index n);       // 1 / (n sqrt(n))
double sampling_per_atom_budget(Eigen::Index n, Eigen::Index k);  // 1 / (n k)

}  // namespace opcodec
