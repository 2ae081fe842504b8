#include "opcodec/cli.hpp"

#include "opcodec/study.hpp"
#include "opcodec/witness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace opcodec {

namespace {

namespace fs = std::filesystem;

std::string join_ints(const std::vector<int>& values) {
  std::ostringstream out;
  for (size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

struct CommonOptions {
  std::string codec = "sampling";
  std::vector<int> n_list = {4, 8, 16};
  std::string family = "sine2";
  std::vector<std::string> test_families;
  std::string op = "antiderivative";
  int degree = 1;
  unsigned seed = 0;
  long nodes = 257;
  std::string out_dir = "out";
  bool svg = false;
};

CanonicalKind operator_from_string(const std::string& name) {
  if (name == "antiderivative") return CanonicalKind::Antiderivative;
  if (name == "poisson") return CanonicalKind::Poisson1D;
  if (name == "sin") return CanonicalKind::PointwiseSin;
  throw CLI::ValidationError("--operator", "unknown operator '" + name + "'");
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_fit_flags) {
  cmd->add_option("--codec", opt.codec, "codec family: sampling|sine|legendre|faber|frame|dense")
      ->default_val(opt.codec);
  cmd->add_option("--n", opt.n_list, "encoding widths, comma separated")
      ->delimiter(',')
      ->default_val(join_ints(opt.n_list));
  cmd->add_option("--family", opt.family, "training family id")->default_val(opt.family);
  cmd->add_option("--seed", opt.seed, "random seed")->default_val(opt.seed);
  cmd->add_option("--nodes", opt.nodes, "grid nodes per axis")->default_val(opt.nodes);
  cmd->add_option("--out", opt.out_dir, "output directory")->default_val(opt.out_dir);
  cmd->add_flag("--svg", opt.svg, "also write report.svg");
  if (with_fit_flags) {
    cmd->add_option("--operator", opt.op, "operator: antiderivative|poisson|sin")
        ->default_val(opt.op);
    cmd->add_option("--degree", opt.degree, "latent polynomial degree")
        ->default_val(opt.degree);
    cmd->add_option("--test", opt.test_families, "extra evaluation family id")
        ->delimiter(',');
  }
}

std::vector<std::pair<std::string, std::string>> base_manifest(const std::string& command,
                                                               const CommonOptions& opt) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("command", command);
  kv.emplace_back("codec", opt.codec);
  kv.emplace_back("n", join_ints(opt.n_list));
  kv.emplace_back("family", opt.family);
  kv.emplace_back("operator", opt.op);
  kv.emplace_back("degree", std::to_string(opt.degree));
  kv.emplace_back("seed", std::to_string(opt.seed));
  kv.emplace_back("nodes", std::to_string(opt.nodes));
  return kv;
}

void emit_report(const StudyReport& report, const CommonOptions& opt,
                 std::vector<std::pair<std::string, std::string>> manifest) {
  fs::create_directories(opt.out_dir);
  write_report_csv(report, fs::path(opt.out_dir) / "report.csv");
  if (opt.svg) write_svg(report, fs::path(opt.out_dir) / "report.svg");
  double total_ms = 0.0;
  for (const StudyRow& row : report.rows) total_ms += row.wall_ms;
  std::ostringstream ms;
  ms.precision(6);
  ms << total_ms;
  manifest.emplace_back("total_wall_ms", ms.str());
  for (size_t i = 0; i < report.notes.size(); ++i) {
    manifest.emplace_back("note" + std::to_string(i), report.notes[i]);
  }
  write_manifest(manifest, fs::path(opt.out_dir) / "run.toml");
}

int run_identity(const CommonOptions& opt) {
  CodecPlan plan;
  plan.family = codec_family_from_string(opt.codec);
  plan.perturbation_seed = opt.seed + 1;
  StudyReport report = identity_study(plan, opt.n_list, opt.family, opt.nodes);
  emit_report(report, opt, base_manifest("identity", opt));
  return 0;
}

int run_study(const CommonOptions& opt, bool single_fit) {
  CodecPlan plan;
  plan.family = codec_family_from_string(opt.codec);
  plan.perturbation_seed = opt.seed + 1;
  FitConfig cfg;
  cfg.seed = opt.seed;
  cfg.degree = opt.degree;
  cfg.family = LatentFamily::Polynomial;  // --degree pins the polynomial family
  const CanonicalKind op = operator_from_string(opt.op);

  StudyReport report = convergence_study(op, plan, opt.n_list, opt.family,
                                         opt.test_families, cfg, opt.nodes);
  emit_report(report, opt, base_manifest(single_fit ? "fit" : "study", opt));

  if (single_fit) {
    // Persist the fitted architecture of the last (only) width.
    const int n = opt.n_list.back();
    const Domain domain = Domain::unit_interval();
    const SpaceTag tag = codec_space(plan.family);
    const CodecPair codec = build_codec(plan, n, domain, {opt.nodes, 1});
    cfg.n = n;
    const Architecture arch =
        fit_architecture(make_operator(op, tag, tag), codec.encoder, codec.decoder,
                         codec.encoder, codec.decoder, cfg,
                         named_family(opt.family, opt.nodes, tag));
    save_architecture(arch, fs::path(opt.out_dir) / "architecture");
  }
  return 0;
}

int run_frames(const CommonOptions& opt) {
  const int n = opt.n_list.back();
  const Domain domain = Domain::unit_interval();
  CodecPlan plan;
  plan.family = CodecFamily::Frame;
  const CodecPair codec = build_codec(plan, n, domain, {opt.nodes, 1});

  // Rebuild the frame system itself for the diagnostics file.
  std::vector<GridFunction> atoms;
  for (const GridFunction& a : codec.decoder.atoms) atoms.push_back(a);
  const FrameSystem fsys = build_frame(atoms);

  fs::create_directories(opt.out_dir);
  {
    std::ofstream gram(fs::path(opt.out_dir) / "gram.csv");
    write_gram_csv(fsys, gram);
  }
  double max_reconstruction = 0.0;
  for (size_t j = 0; j < fsys.atoms.size(); ++j) {
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(fsys.atoms.size()));
    for (size_t i = 0; i < fsys.atoms.size(); ++i) {
      coeffs[static_cast<Eigen::Index>(i)] = l2_inner(fsys.atoms[j], fsys.dual_atoms[i]);
    }
    max_reconstruction =
        std::max(max_reconstruction, l2_norm(combine_atoms(fsys.atoms, coeffs) - fsys.atoms[j]));
  }
  auto manifest = base_manifest("frames", opt);
  std::ostringstream a, b, r;
  a.precision(17); b.precision(17); r.precision(17);
  a << fsys.lower_bound;
  b << fsys.upper_bound;
  r << max_reconstruction;
  manifest.emplace_back("frame.lower_bound", a.str());
  manifest.emplace_back("frame.upper_bound", b.str());
  manifest.emplace_back("frame.reconstruction_error", r.str());
  write_manifest(manifest, fs::path(opt.out_dir) / "run.toml");
  std::cout << "frame bounds A=" << fsys.lower_bound << " B=" << fsys.upper_bound
            << " reconstruction_error=" << max_reconstruction << '\n';
  return 0;
}

int run_witness(const CommonOptions& opt, int stages) {
  const SamplingSequence seq = dyadic_sampling_sequence(stages);
  const WitnessResult result = encoder_divergence_witness(seq);
  fs::create_directories(opt.out_dir);
  {
    std::ofstream csv(fs::path(opt.out_dir) / "witness.csv");
    write_csv(result.witness, csv);
  }
  auto manifest = base_manifest("witness", opt);
  manifest.emplace_back("witness.found", result.found ? "1" : "0");
  manifest.emplace_back("witness.stage", std::to_string(result.stage));
  std::ostringstream div;
  div.precision(17);
  div << result.divergence;
  manifest.emplace_back("witness.divergence", div.str());
  write_manifest(manifest, fs::path(opt.out_dir) / "run.toml");
  if (result.found) {
    std::cout << "witness found at stage " << result.stage
              << " with divergence " << result.divergence << '\n';
  } else {
    std::cout << "witness search exhausted without a divergence witness\n";
  }
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"Encoder-decoder operator approximation toolkit"};
  app.require_subcommand(1);

  CommonOptions identity_opt, fit_opt, study_opt, frames_opt, witness_opt;
  int witness_stages = 6;

  CLI::App* identity = app.add_subcommand("identity", "identity-approximator error study");
  add_common(identity, identity_opt, false);

  CLI::App* fit = app.add_subcommand("fit", "fit a single architecture");
  add_common(fit, fit_opt, true);

  CLI::App* study = app.add_subcommand("study", "convergence study over n");
  add_common(study, study_opt, true);

  CLI::App* frames = app.add_subcommand("frames", "frame bounds and dual diagnostics");
  add_common(frames, frames_opt, false);

  CLI::App* witness = app.add_subcommand("witness", "sampling vs basis encoder divergence");
  add_common(witness, witness_opt, false);
  witness->add_option("--stages", witness_stages, "dyadic refinement stages")
      ->default_val(witness_stages);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (identity->parsed()) return run_identity(identity_opt);
    if (fit->parsed()) return run_study(fit_opt, true);
    if (study->parsed()) return run_study(study_opt, false);
    if (frames->parsed()) return run_frames(frames_opt);
    if (witness->parsed()) return run_witness(witness_opt, witness_stages);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace opcodec
