#include "opcodec/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace opcodec {

const char* to_string(CodecFamily family) {
  switch (family) {
    case CodecFamily::Sampling: return "sampling";
    case CodecFamily::SineONB: return "sine";
    case CodecFamily::LegendreONB: return "legendre";
    case CodecFamily::FaberSchauder: return "faber";
    case CodecFamily::Frame: return "frame";
    case CodecFamily::Dense: return "dense";
  }
  return "?";
}

CodecFamily codec_family_from_string(const std::string& name) {
  if (name == "sampling") return CodecFamily::Sampling;
  if (name == "sine") return CodecFamily::SineONB;
  if (name == "legendre") return CodecFamily::LegendreONB;
  if (name == "faber") return CodecFamily::FaberSchauder;
  if (name == "frame") return CodecFamily::Frame;
  if (name == "dense") return CodecFamily::Dense;
  throw std::invalid_argument("unknown codec family '" + name + "'");
}

SpaceTag codec_space(CodecFamily family) {
  switch (family) {
    case CodecFamily::Sampling:
    case CodecFamily::FaberSchauder: return SpaceTag::ContinuousSup;
    default: return SpaceTag::L2;
  }
}

namespace {

/// Mixed sine atoms form a deterministic non-orthogonal frame of their span.
std::vector<GridFunction> mixed_sine_atoms(int n, const Domain& domain,
                                           std::array<Eigen::Index, 2> nodes) {
  std::vector<GridFunction> atoms;
  atoms.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    atoms.push_back(GridFunction::sample1d(
        nodes[0],
        [i](double x) {
          return std::numbers::sqrt2 * (std::sin(i * std::numbers::pi * x) +
                                        0.3 * std::sin((i + 1) * std::numbers::pi * x));
        },
        SpaceTag::L2, domain));
  }
  return atoms;
}

}  // namespace

CodecPair build_codec(const CodecPlan& plan, int n, const Domain& domain,
                      std::array<Eigen::Index, 2> nodes) {
  if (n < 1) throw std::invalid_argument("build_codec: n must be at least 1");
  switch (plan.family) {
    case CodecFamily::Sampling: {
      Covering cov = build_epsilon_covering(domain, 1.0 / static_cast<double>(n));
      PartitionOfUnity pou(cov);
      return CodecPair{sampling_encoder(cov), sampling_decoder(pou, domain, nodes)};
    }
    case CodecFamily::SineONB:
    case CodecFamily::LegendreONB:
    case CodecFamily::FaberSchauder: {
      const BasisKind kind = plan.family == CodecFamily::SineONB ? BasisKind::SineONB
                             : plan.family == CodecFamily::LegendreONB
                                 ? BasisKind::LegendreONB
                                 : BasisKind::FaberSchauder;
      const BasisSpec spec{kind};
      return CodecPair{basis_encoder(spec, n), basis_decoder(spec, n, domain, nodes)};
    }
    case CodecFamily::Frame: {
      FrameSystem fs = build_frame(mixed_sine_atoms(n, domain, nodes));
      return CodecPair{frame_encoder(fs), frame_decoder(fs)};
    }
    case CodecFamily::Dense: {
      DenseCodec codec = dense_substitution_codec(
          n, BasisSpec{BasisKind::SineONB},
          seeded_mode_perturber(plan.perturbation_seed, plan.perturbation, n), domain, nodes);
      return CodecPair{codec.encoder, codec.decoder};
    }
  }
  throw std::logic_error("build_codec: unknown codec family");
}

double space_distance(CodecFamily family, const GridFunction& f, const GridFunction& g) {
  if (codec_space(family) == SpaceTag::ContinuousSup) return sup_distance(f, g);
  return l2_norm(f - g);
}

StudyReport identity_study(const CodecPlan& plan, const std::vector<int>& n_list,
                           const std::string& family_id, Eigen::Index nodes) {
  if (n_list.empty()) throw std::invalid_argument("identity_study: empty n list");
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
    throw std::invalid_argument("identity_study: n list must be strictly increasing");
  }
  const Domain domain = Domain::unit_interval();
  const CompactFamily family = named_family(family_id, nodes, codec_space(plan.family));

  StudyReport report;
  for (int n : n_list) {
    const auto start = std::chrono::steady_clock::now();
    const CodecPair codec = build_codec(plan, n, domain, {nodes, 1});
    auto identity = compose_identity(codec.encoder, codec.decoder);
    double worst = 0.0;
    for (const GridFunction& f : family.members()) {
      worst = std::max(worst, space_distance(plan.family, f, identity(f)));
    }
    const auto stop = std::chrono::steady_clock::now();
    StudyRow row;
    row.arch_id = std::string("identity-") + to_string(plan.family);
    row.n = n;
    row.family = family_id;
    row.sup_error = worst;
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

StudyReport convergence_study(CanonicalKind op, const CodecPlan& plan,
                              const std::vector<int>& n_list, const std::string& train_id,
                              const std::vector<std::string>& test_ids, FitConfig cfg,
                              Eigen::Index nodes) {
  if (n_list.empty()) throw std::invalid_argument("convergence_study: empty n list");
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
    throw std::invalid_argument("convergence_study: n list must be strictly increasing");
  }
  const Domain domain = Domain::unit_interval();
  const SpaceTag tag = codec_space(plan.family);
  const OperatorSpec op_spec = make_operator(op, tag, tag);
  const CompactFamily train = named_family(train_id, nodes, tag);

  std::vector<std::pair<std::string, CompactFamily>> eval_sets;
  eval_sets.emplace_back(train_id, train);
  for (const std::string& id : test_ids) {
    if (id == train_id) continue;
    eval_sets.emplace_back(id, named_family(id, nodes, tag));
  }

  StudyReport report;
  for (int n : n_list) {
    const auto start = std::chrono::steady_clock::now();
    const CodecPair codec = build_codec(plan, n, domain, {nodes, 1});
    cfg.n = n;
    const Architecture arch = fit_architecture(op_spec, codec.encoder, codec.decoder,
                                               codec.encoder, codec.decoder, cfg, train);
    if (arch.fit_report.fit_warning) {
      std::ostringstream note;
      note << arch.id << ": latent residual " << arch.fit_report.latent_residual_l2
           << " above 10x target " << arch.fit_report.target_accuracy;
      report.notes.push_back(note.str());
    }
    const auto fitted = std::chrono::steady_clock::now();
    double fit_ms = std::chrono::duration<double, std::milli>(fitted - start).count();

    for (const auto& [id, family] : eval_sets) {
      const auto eval_start = std::chrono::steady_clock::now();
      double worst = 0.0;
      int extrapolated = 0;
      for (const GridFunction& f : family.members()) {
        const ApplyOutcome outcome = apply_architecture_checked(arch, f);
        worst = std::max(worst, space_distance(plan.family, op_spec.apply(f), outcome.value));
        extrapolated += outcome.extrapolated ? 1 : 0;
      }
      const auto eval_stop = std::chrono::steady_clock::now();
      StudyRow row;
      row.arch_id = arch.id;
      row.n = n;
      row.family = id;
      row.sup_error = worst;
      row.latent_residual = arch.fit_report.latent_residual;
      row.extrapolated = extrapolated;
      row.wall_ms =
          fit_ms + std::chrono::duration<double, std::milli>(eval_stop - eval_start).count();
      fit_ms = 0.0;  // charge the fit to the first row of this n
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_report_csv(const StudyReport& report, std::ostream& out) {
  out << "arch_id,n,family,sup_error,latent_residual,extrapolated,wall_ms\n";
  out.precision(17);
  for (const StudyRow& row : report.rows) {
    out << row.arch_id << ',' << row.n << ',' << row.family << ',' << row.sup_error << ','
        << row.latent_residual << ',' << row.extrapolated << ",0\n";
  }
}

void write_report_csv(const StudyReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_report_csv: cannot open " + path.string());
  write_report_csv(report, out);
}

void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_manifest: cannot open " + path.string());
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

void write_svg(const StudyReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_svg: cannot open " + path.string());

  constexpr int width = 800;
  constexpr int height = 600;
  constexpr double margin = 70.0;

  // One series per architecture family and evaluation family; the per-n
  // suffix of the arch id is stripped so a sweep over n forms one curve.
  auto series_key = [](const StudyRow& row) {
    std::string id = row.arch_id;
    const size_t pos = id.rfind("-n");
    if (pos != std::string::npos &&
        id.find_first_not_of("0123456789", pos + 2) == std::string::npos) {
      id.erase(pos);
    }
    return id + " / " + row.family;
  };
  std::map<std::string, std::vector<const StudyRow*>> series;
  double n_min = 1e300, n_max = -1e300, e_min = 1e300, e_max = -1e300;
  for (const StudyRow& row : report.rows) {
    series[series_key(row)].push_back(&row);
    const double loge = std::log10(std::max(row.sup_error, 1e-300));
    n_min = std::min(n_min, static_cast<double>(row.n));
    n_max = std::max(n_max, static_cast<double>(row.n));
    e_min = std::min(e_min, loge);
    e_max = std::max(e_max, loge);
  }
  if (report.rows.empty()) {
    n_min = 1; n_max = 2; e_min = -1; e_max = 0;
  }
  if (n_max == n_min) n_max = n_min + 1;
  if (e_max == e_min) e_max = e_min + 1;

  auto sx = [&](double n) {
    return margin + (n - n_min) / (n_max - n_min) * (width - 2 * margin);
  };
  auto sy = [&](double loge) {
    return height - margin - (loge - e_min) / (e_max - e_min) * (height - 2 * margin);
  };

  const char* palette[] = {"#1b6ca8", "#c2402a", "#2c8c4b", "#8b3fa8",
                           "#b0881f", "#3a3a3a", "#d06090", "#2aa0a0"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 20
      << "\" text-anchor=\"middle\">n</text>\n";
  out << "<text x=\"20\" y=\"" << height / 2 << "\" transform=\"rotate(-90 20 "
      << height / 2 << ")\" text-anchor=\"middle\">log10 sup error</text>\n";

  int color = 0;
  double legend_y = margin;
  for (const auto& [name, rows] : series) {
    const char* stroke = palette[color % 8];
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
    for (const StudyRow* row : rows) {
      out << sx(row->n) << ',' << sy(std::log10(std::max(row->sup_error, 1e-300))) << ' ';
    }
    out << "\"/>\n";
    for (const StudyRow* row : rows) {
      out << "<circle cx=\"" << sx(row->n) << "\" cy=\""
          << sy(std::log10(std::max(row->sup_error, 1e-300))) << "\" r=\"3\" fill=\""
          << stroke << "\"/>\n";
    }
    out << "<text x=\"" << width - margin + 5 << "\" y=\"" << legend_y
        << "\" fill=\"" << stroke << "\" font-size=\"11\">" << name << "</text>\n";
    legend_y += 16.0;
    ++color;
  }
  out << "</svg>\n";
}

}  // namespace opcodec
