// simpca: principal components, rotation and sparse components from a CSV.

#include "simpca/error.hpp"
#include "simpca/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace simpca;

struct Flags {
  std::string scale;
  std::string coef_scale = "l2";
  std::string select = "forward";
  std::string norm = "2";
  std::string stop = "r2";
  std::string method = "pspca";
  std::string format = "tsv";
  std::string delimiter = ",";
  std::string id_column;
  std::string response;
  std::string out;
  std::string scores_out;
  Index max_card = 0;
};

void add_common(CLI::App* sub, RunConfig& cfg, Flags& f) {
  sub->add_option("--input", cfg.input, "Input CSV with a header row")
      ->required();
  sub->add_option("--delimiter", f.delimiter, "Field delimiter (',' or tab)")
      ->check(CLI::IsMember({",", ";", "tab", "\t"}));
  sub->add_option("--id-column", f.id_column, "Row-label column");
  sub->add_option("--response", f.response,
                  "External response column (excluded from the features)");
  sub->add_flag("--log-response", cfg.log_response,
                "Take the natural log of the response");
  sub->add_option("--scale", f.scale, "Column scaling")
      ->required()
      ->check(CLI::IsMember({"none", "unit-variance"}));
  sub->add_option("--nr", cfg.nr, "Components to compute and rotate");
  sub->add_option("--seed", cfg.seed, "Seed for random rotation restarts");
  sub->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}));
  sub->add_option("--out", f.out, "Output file (default stdout)");
  sub->add_option("--scores-out", f.scores_out, "Write score vectors as TSV");
}

void add_rotation(CLI::App* sub, RunConfig& cfg, Flags& f) {
  sub->add_option("--coef-scale", f.coef_scale,
                  "Coefficient scaling before rotation")
      ->check(CLI::IsMember({"l2", "normalized"}));
  sub->add_option("--criterion", cfg.criterion, "Rotation criterion")
      ->check(CLI::IsMember({"varimax", "quartimax", "equamax", "orthomax", "cf"}));
  sub->add_option("--kappa", cfg.kappa, "Crawford-Ferguson kappa in [0, 1]");
  sub->add_option("--gamma", cfg.gamma, "Orthomax weight c >= 0");
  sub->add_flag("--kaiser", cfg.kaiser, "Kaiser row normalization");
  sub->add_option("--restarts", cfg.restarts, "Rotation starts (first is identity)");
}

void add_sparse(CLI::App* sub, RunConfig& cfg, Flags& f) {
  sub->add_option("--nd", cfg.nd, "Sparse components to output");
  sub->add_option("--select", f.select, "Support selection strategy")
      ->check(CLI::IsMember({"threshold", "adaptive", "iter-threshold",
                             "forward", "backward", "stepwise"}));
  sub->add_option("--alpha", cfg.selection.alpha, "Stopping level in (0, 1]");
  sub->add_option("--threshold", cfg.selection.threshold, "Fixed threshold");
  sub->add_option("--t0", cfg.selection.t0, "Adaptive threshold start");
  sub->add_option("--step", cfg.selection.step, "Adaptive threshold decrement");
  sub->add_option("--norm", f.norm, "Norm used before thresholding")
      ->check(CLI::IsMember({"1", "2", "inf"}));
  sub->add_option("--stop", f.stop,
                  "Stop rule: r2 of the target, or relative vexp")
      ->check(CLI::IsMember({"r2", "rvexp"}));
  sub->add_option("--entry", cfg.selection.entry, "Stepwise entry gain");
  sub->add_option("--exit", cfg.selection.exit, "Stepwise exit loss");
  sub->add_option("--max-card", f.max_card, "Cardinality cap per component");
  sub->add_flag("--deflate,!--no-deflate", cfg.deflate,
                "Recompute rotated pcs on the residuals after each component");
  sub->add_option("--method", f.method, "Sparse component construction")
      ->check(CLI::IsMember({"pspca", "cspca", "uspca", "plain"}));
}

void finalize(RunConfig& cfg, const Flags& f) {
  cfg.delimiter = (f.delimiter == "tab" || f.delimiter == "\t") ? '\t' : f.delimiter[0];
  cfg.scaling = f.scale == "unit-variance" ? Scaling::UnitVariance : Scaling::None;
  cfg.coefficient_scaling = f.coef_scale == "normalized"
                                ? CoefficientScaling::component_unit_norm()
                                : CoefficientScaling::unit_l2();
  using K = SelectionStrategy::Kind;
  static const std::map<std::string, K> kinds = {
      {"threshold", K::FixedThreshold}, {"adaptive", K::AdaptiveThreshold},
      {"iter-threshold", K::IterativeReverseThreshold}, {"forward", K::Forward},
      {"backward", K::Backward}, {"stepwise", K::Stepwise}};
  cfg.selection.kind = kinds.at(f.select);
  cfg.selection.norm_order =
      f.norm == "inf" ? CoefficientScaling::kInfNorm : std::stod(f.norm);
  cfg.selection.stop = f.stop == "rvexp" ? StopRule::RelativeVexp : StopRule::R2;
  if (f.max_card > 0) cfg.selection.max_cardinality = f.max_card;
  static const std::map<std::string, SparseMethod> methods = {
      {"pspca", SparseMethod::Pspca}, {"cspca", SparseMethod::Cspca},
      {"uspca", SparseMethod::Uspca}, {"plain", SparseMethod::PlainThreshold}};
  cfg.method = methods.at(f.method);
  cfg.format = f.format == "json" ? OutputFormat::Json : OutputFormat::Tsv;
  if (!f.id_column.empty()) cfg.id_column = f.id_column;
  if (!f.response.empty()) cfg.response = f.response;
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.scores_out.empty()) cfg.scores_out = f.scores_out;
}

void write(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream o(*path, std::ios::binary);
  if (!o) throw ConfigError("cli: cannot write '" + *path + "'");
  o << text;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Data: return 3;
    case ErrorKind::Numerical: return 4;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal components, rotation and sparse components"};
  app.require_subcommand(1);

  RunConfig cfg;
  Flags f;
  auto* pca = app.add_subcommand("pca", "PCA summary and coefficients");
  add_common(pca, cfg, f);
  auto* rot = app.add_subcommand("rotate", "Rotate the leading pc coefficients");
  add_common(rot, cfg, f);
  add_rotation(rot, cfg, f);
  auto* sim = app.add_subcommand("simpca", "Sparse components from rotated pcs");
  add_common(sim, cfg, f);
  add_rotation(sim, cfg, f);
  add_sparse(sim, cfg, f);

  std::string render_in;
  std::string render_format = "tsv";
  std::string render_out;
  auto* render = app.add_subcommand("render", "Re-render a JSON report");
  render->add_option("--input", render_in, "JSON report")->required();
  render->add_option("--format", render_format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}));
  render->add_option("--out", render_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (render->parsed()) {
      std::ifstream in(render_in, std::ios::binary);
      if (!in)
        throw DataError(ErrorCode::FileNotFound,
                        "cli: cannot open '" + render_in + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      const AnalysisReport rep = report_from_json(ss.str());
      write(render_out.empty() ? std::nullopt : std::optional(render_out),
            emit(rep, render_format == "json" ? OutputFormat::Json
                                              : OutputFormat::Tsv));
      return 0;
    }
    cfg.command = pca->parsed()   ? Command::Pca
                  : rot->parsed() ? Command::Rotate
                                  : Command::Simpca;
    finalize(cfg, f);
    const AnalysisReport rep = run(cfg);
    write(cfg.out, emit(rep, cfg.format));
    if (cfg.scores_out) write(cfg.scores_out, emit_scores(rep));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
