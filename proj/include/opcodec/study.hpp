#pragma once

#include "opcodec/architecture.hpp"
#include "opcodec/canonical_operators.hpp"
#include "opcodec/dense.hpp"
#include "opcodec/families.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace opcodec {

/// Which encoder/decoder pair a study wires on both sides.
enum class CodecFamily { Sampling, SineONB, LegendreONB, FaberSchauder, Frame, Dense };

const char* to_string(CodecFamily family);
CodecFamily codec_family_from_string(const std::string& name);

/// Space tag the codec family operates on.
SpaceTag codec_space(CodecFamily family);

struct CodecPlan {
  CodecFamily family = CodecFamily::Sampling;
  unsigned perturbation_seed = 1;  // Dense only
  double perturbation = 0.25;      // raw magnitude before budget rescaling
};

/// Codec pair of width n on the given grid.
struct CodecPair {
  Encoder encoder;
  Decoder decoder;
};
CodecPair build_codec(const CodecPlan& plan, int n, const Domain& domain,
                      std::array<Eigen::Index, 2> nodes);

/// Distance matching the codec family's space: sup for sup-norm families,
/// L2 otherwise.
double space_distance(CodecFamily family, const GridFunction& f, const GridFunction& g);

struct StudyRow {
  std::string arch_id;
  int n = 0;
  std::string family;
  double sup_error = 0.0;
  double latent_residual = 0.0;
  int extrapolated = 0;
  double wall_ms = 0.0;  // measured; the CSV column is zeroed for determinism
};

struct StudyReport {
  std::vector<StudyRow> rows;
  std::vector<std::string> notes;
};

/// sup_f d(f, T_n f) rows for the identity approximators of one codec family.
StudyReport identity_study(const CodecPlan& plan, const std::vector<int>& n_list,
                           const std::string& family_id, Eigen::Index nodes);

/// Fits one architecture per n on the training family (never on the test
/// families) and records the sup error on every listed family.
StudyReport convergence_study(CanonicalKind op, const CodecPlan& plan,
                              const std::vector<int>& n_list, const std::string& train_id,
                              const std::vector<std::string>& test_ids, FitConfig cfg,
                              Eigen::Index nodes);

/// Exact schema: arch_id,n,family,sup_error,latent_residual,extrapolated,wall_ms.
/// The wall_ms column is written as 0 so identical runs emit identical bytes.
void write_report_csv(const StudyReport& report, std::ostream& out);
void write_report_csv(const StudyReport& report, const std::filesystem::path& path);

void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::filesystem::path& path);

/// 800x600 line chart of log10 error against n, one polyline per
/// (arch_id, family) series.
void write_svg(const StudyReport& report, const std::filesystem::path& path);

}  // namespace opcodec
