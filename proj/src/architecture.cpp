#include "opcodec/architecture.hpp"

#include "opcodec/rng.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace opcodec {

LatentFamily default_latent_family(Eigen::Index latent_dim) {
  return latent_dim <= 6 ? LatentFamily::Polynomial : LatentFamily::KernelRidge;
}

namespace {

Eigen::VectorXd clip_to_ball(const Eigen::VectorXd& x, double radius) {
  const double norm = x.norm();
  if (norm <= radius || norm == 0.0) return x;
  return (radius / norm) * x;
}

void check_wiring(const Encoder& enc, const LatentMap& phi, const Decoder& dec) {
  if (enc.out_dim != phi.in_dim() || phi.out_dim() != dec.in_dim) {
    throw std::invalid_argument("architecture: encoder/latent/decoder dimension mismatch");
  }
}

}  // namespace

Architecture fit_architecture(const OperatorSpec& op, const Encoder& enc_x,
                              const Decoder& dec_y, const Encoder& enc_y,
                              const Decoder& dec_x, const FitConfig& cfg,
                              const CompactFamily& train_family) {
  if (cfg.n < 1) throw std::invalid_argument("fit_architecture: n must be at least 1");
  if (train_family.size() == 0) {
    throw std::invalid_argument("fit_architecture: empty training family");
  }
  if (enc_x.out_dim != dec_x.in_dim || enc_y.out_dim != dec_y.in_dim) {
    throw std::invalid_argument("fit_architecture: codec pairs must match dimensions");
  }
  if (!op.apply) throw std::invalid_argument("fit_architecture: operator has no rule");

  const GridFunction& prototype = train_family.members().front();
  const GridFunction anchor =
      cfg.anchor.value_or(GridFunction::zero_like(prototype));
  const double radius =
      enc_x.apply(anchor).norm() + static_cast<double>(cfg.n) * enc_x.lipschitz_estimate;
  const FitRegion region = fit_region(enc_x.out_dim, radius);

  // Latent target x |-> (E_Y o G o D_X)(x).
  auto latent_target = [&](const Eigen::VectorXd& x) {
    return enc_y.apply(op.apply(dec_x.apply(x)));
  };

  Rng rng(cfg.seed);
  // jitter_sigma_factor scales the expected jitter vector magnitude, so the
  // per-coordinate deviation shrinks with the latent dimension.
  const double sigma = cfg.jitter_sigma_factor * radius /
                       std::sqrt(static_cast<double>(enc_x.out_dim));
  LatentSamples samples;
  samples.reserve(train_family.size() * (1 + static_cast<size_t>(cfg.jitter_per_sample)));
  for (const GridFunction& member : train_family.members()) {
    const Eigen::VectorXd x = clip_to_ball(enc_x.apply(member), radius);
    samples.emplace_back(x, latent_target(x));
    for (int j = 0; j < cfg.jitter_per_sample; ++j) {
      const Eigen::VectorXd xj =
          clip_to_ball(x + sigma * rng.gaussian_vector(x.size()), radius);
      samples.emplace_back(xj, latent_target(xj));
    }
  }

  const LatentFamily family = cfg.family.value_or(default_latent_family(enc_x.out_dim));
  const double bandwidth = cfg.bandwidth.value_or(0.2 * radius);
  LatentMap phi = family == LatentFamily::Polynomial
                      ? fit_polynomial(samples, cfg.degree, region, cfg.ridge)
                      : fit_kernel_ridge(samples, bandwidth, std::max(cfg.ridge, 0.0), region);

  FitReport report;
  report.n = cfg.n;
  report.seed = cfg.seed;
  report.radius = radius;
  report.latent_residual = phi.fit_residual();
  double l2 = 0.0;
  for (const auto& [x, y] : samples) l2 = std::max(l2, (phi(x) - y).norm());
  report.latent_residual_l2 = l2;
  report.target_accuracy =
      1.0 / (static_cast<double>(cfg.n) * dec_y.lipschitz_estimate);
  report.met_target = report.latent_residual_l2 <= report.target_accuracy;
  report.fit_warning = report.latent_residual_l2 > 10.0 * report.target_accuracy;
  report.training_points = static_cast<Eigen::Index>(samples.size());

  std::ostringstream id;
  id << "fit-" << op.name << '-' << to_string(enc_x.kind) << '-' << to_string(dec_y.kind)
     << "-n" << cfg.n;
  return Architecture{id.str(), enc_x, std::move(phi), dec_y, report};
}

GridFunction apply_architecture(const Architecture& arch, const GridFunction& f) {
  return apply_architecture_checked(arch, f).value;
}

ApplyOutcome apply_architecture_checked(const Architecture& arch, const GridFunction& f) {
  check_wiring(arch.encoder, arch.latent, arch.decoder);
  const Eigen::VectorXd x = arch.encoder.apply(f);
  const bool outside = !region_contains(arch.latent.region(), x);
  return ApplyOutcome{arch.decoder.apply(arch.latent(x)), outside};
}

Architecture classical_deeponet(const Covering& cov, std::vector<GridFunction> dense_atoms,
                                LatentMap phi) {
  Encoder enc = sampling_encoder(cov);
  double lip_sq = 0.0;
  for (const GridFunction& a : dense_atoms) {
    const double na = sup_norm(a);
    lip_sq += na * na;
  }
  Decoder dec = make_atom_decoder(CodecKind::Dense, std::move(dense_atoms), std::sqrt(lip_sq));
  check_wiring(enc, phi, dec);
  FitReport report;
  report.radius = phi.region().radius;
  return Architecture{"classical-deeponet", std::move(enc), std::move(phi), std::move(dec),
                      report};
}

Architecture schauder_deeponet(const BasisSpec& spec_x, Eigen::Index k,
                               std::vector<GridFunction> dense_atoms, LatentMap phi) {
  Encoder enc = basis_encoder(spec_x, k);
  double lip_sq = 0.0;
  for (const GridFunction& a : dense_atoms) {
    const double na = l2_norm(a);
    lip_sq += na * na;
  }
  Decoder dec = make_atom_decoder(CodecKind::Dense, std::move(dense_atoms), std::sqrt(lip_sq));
  check_wiring(enc, phi, dec);
  FitReport report;
  report.radius = phi.region().radius;
  return Architecture{"schauder-deeponet", std::move(enc), std::move(phi), std::move(dec),
                      report};
}

Architecture frame_architecture(const FrameSystem& fs_x, const FrameSystem& fs_y,
                                LatentMap phi) {
  Encoder enc = frame_encoder(fs_x);
  Decoder dec = frame_decoder(fs_y);
  check_wiring(enc, phi, dec);
  FitReport report;
  report.radius = phi.region().radius;
  return Architecture{"frame-architecture", std::move(enc), std::move(phi), std::move(dec),
                      report};
}

Architecture basisonet(Encoder dense_enc_x, Decoder dense_dec_y, LatentMap phi) {
  check_wiring(dense_enc_x, phi, dense_dec_y);
  FitReport report;
  report.radius = phi.region().radius;
  return Architecture{"basisonet", std::move(dense_enc_x), std::move(phi),
                      std::move(dense_dec_y), report};
}

void save_architecture(const Architecture& arch, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream latent(dir / "latent.csv");
    if (!latent) throw std::runtime_error("save_architecture: cannot write latent.csv");
    arch.latent.write_csv(latent);
  }
  std::ofstream manifest(dir / "architecture.txt");
  if (!manifest) throw std::runtime_error("save_architecture: cannot write architecture.txt");
  manifest.precision(17);
  manifest << "id=" << arch.id << '\n'
           << describe(arch.encoder) << describe(arch.decoder)
           << "latent.family=" << to_string(arch.latent.family()) << '\n'
           << "latent.degree=" << arch.latent.degree() << '\n'
           << "fit.n=" << arch.fit_report.n << '\n'
           << "fit.seed=" << arch.fit_report.seed << '\n'
           << "fit.radius=" << arch.fit_report.radius << '\n'
           << "fit.residual=" << arch.fit_report.latent_residual << '\n'
           << "fit.residual_l2=" << arch.fit_report.latent_residual_l2 << '\n'
           << "fit.target=" << arch.fit_report.target_accuracy << '\n'
           << "fit.met_target=" << (arch.fit_report.met_target ? 1 : 0) << '\n'
           << "fit.warning=" << (arch.fit_report.fit_warning ? 1 : 0) << '\n'
           << "fit.training_points=" << arch.fit_report.training_points << '\n';
}

}  // namespace opcodec
