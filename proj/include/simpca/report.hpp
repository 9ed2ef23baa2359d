#pragma once

// Dataset ingestion, pipeline orchestration and table emission for the CLI.

#include "simpca/sparse.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace simpca {

enum class Command { Pca, Rotate, Simpca };
enum class OutputFormat { Tsv, Json };

struct RunConfig {
  Command command = Command::Simpca;
  std::string input;
  char delimiter = ',';
  std::optional<std::string> id_column;
  std::optional<std::string> response;
  bool log_response = false;
  Scaling scaling = Scaling::None;
  CoefficientScaling coefficient_scaling = CoefficientScaling::unit_l2();
  std::string criterion = "varimax";  // varimax|quartimax|equamax|orthomax|cf
  double kappa = 0.0;                 // cf only
  double gamma = 1.0;                 // orthomax only
  bool kaiser = false;
  Index nr = 2;
  Index nd = 2;
  SelectionStrategy selection;
  SparseMethod method = SparseMethod::Pspca;
  bool deflate = true;
  std::uint64_t seed = 0;
  int restarts = 1;
  OutputFormat format = OutputFormat::Tsv;
  std::optional<std::string> out;
  std::optional<std::string> scores_out;

  RotationCriterion rotation_criterion() const;
  /// Ordered (key, value) pairs covering every field.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

struct Dataset {
  Matrix raw;                         // n x p features
  std::vector<std::string> names;     // p feature names
  std::vector<std::string> ids;       // row labels (1..n when no id column)
  std::optional<Vector> response;
  std::string response_name;
};

/// Reads a delimited text file with a header row. Quoted cells may contain
/// the delimiter; numbers are parsed locale-independently. Empty cells and
/// NA are missing values. The id and response columns are excluded from the
/// feature matrix.
Dataset ingest_csv(const std::string& path, char delimiter = ',',
                   const std::optional<std::string>& id_column = {},
                   const std::optional<std::string>& response = {});
/// Same, from text already in memory (`origin` is used in messages).
Dataset parse_csv(const std::string& text, char delimiter,
                  const std::optional<std::string>& id_column,
                  const std::optional<std::string>& response,
                  const std::string& origin = "<memory>");

struct PcaSummary {
  std::vector<double> lambda;
  std::vector<double> vexp_pct;  // full spectrum up to the rank
  double total_variance = 0.0;
  Matrix coefficients;  // p x K unit-L2 coefficients of the leading pcs
};

struct RotationSummary {
  std::string criterion;
  bool kaiser = false;
  bool converged = false;
  int sweeps = 0;
  int restart = 0;
  double value = 0.0;
  Matrix coefficients;  // p x nr, rotated
  std::vector<double> vexp_pct;  // rotated score vexp per column
};

struct ComponentSummary {
  std::string method;
  std::vector<std::string> variables;
  std::vector<double> coefficients;
  std::vector<double> contributions;  // signed percents
  std::vector<double> vif;            // within the support
  double vexp_pct = 0.0;
  double extra_vexp_pct = 0.0;
  double cvexp_pct = 0.0;
  double rcvexp_pct = 0.0;
  double mincont_pct = 0.0;
  double target_vexp_pct = 0.0;
  double r2_target = 0.0;
  std::optional<double> threshold;

  std::size_t cardinality() const { return variables.size(); }
};

struct AnalysisReport {
  std::vector<std::pair<std::string, std::string>> config;
  Index n = 0;
  Index p = 0;
  std::vector<std::string> variables;
  PcaSummary pca;
  std::optional<RotationSummary> rotation;
  std::vector<ComponentSummary> components;
  Matrix correlations;
  std::vector<double> response_r2_pca;     // k = 1..K
  std::vector<double> response_r2_sparse;  // k = 1..nd

  // Score export only; not part of the serialized report.
  std::vector<std::string> ids;
  std::vector<std::string> score_names;
  Matrix scores;
};

AnalysisReport run(const RunConfig& config, const Dataset& data);
AnalysisReport run(const RunConfig& config);

std::string emit(const AnalysisReport& report, OutputFormat format);
std::string emit_scores(const AnalysisReport& report);

/// Rebuilds a report from its JSON emission.
AnalysisReport report_from_json(const std::string& text);

}  // namespace simpca
