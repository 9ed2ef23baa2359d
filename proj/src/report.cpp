#include "simpca/report.hpp"

#include "simpca/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace simpca {

namespace {

using nlohmann::json;

std::string shortest(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Fixed-point with `dec` decimals; never prints a negative zero.
std::string fixed(double v, int dec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", dec, v);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits one record; returns false when a quoted cell runs past the line.
bool split_record(const std::string& line, char delim,
                  std::vector<std::string>& cells) {
  cells.clear();
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delim) {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return !quoted;
}

std::string criterion_label(const RunConfig& c) { return c.criterion; }

std::string scaling_label(Scaling s) {
  return s == Scaling::UnitVariance ? "unit-variance" : "none";
}

std::string norm_label(double m) {
  if (m == CoefficientScaling::kInfNorm) return "inf";
  return shortest(m);
}

std::string coef_label(const CoefficientScaling& c) {
  switch (c.mode) {
    case CoefficientScaling::Mode::UnitL2: return "l2";
    case CoefficientScaling::Mode::ComponentUnitNorm: return "normalized";
    case CoefficientScaling::Mode::CustomNorm:
      return "norm-" + norm_label(c.norm_order);
  }
  return "l2";
}

std::string command_label(Command c) {
  switch (c) {
    case Command::Pca: return "pca";
    case Command::Rotate: return "rotate";
    case Command::Simpca: return "simpca";
  }
  return "simpca";
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const json& j) {
  if (j.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(j[0].size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k)
      m(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                    .get<double>();
  return m;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

RotationCriterion RunConfig::rotation_criterion() const {
  if (criterion == "varimax") return RotationCriterion::varimax();
  if (criterion == "quartimax") return RotationCriterion::quartimax();
  if (criterion == "equamax") return RotationCriterion::equamax(nr);
  if (criterion == "orthomax") return RotationCriterion::orthomax(gamma);
  if (criterion == "cf") return RotationCriterion::crawford_ferguson(kappa);
  throw ConfigError("cli: unknown rotation criterion '" + criterion + "'");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  const auto opt = [](const std::optional<std::string>& s) {
    return s ? *s : std::string("-");
  };
  std::string delim = delimiter == '\t' ? "tab" : std::string(1, delimiter);
  return {
      {"command", command_label(command)},
      {"input", input},
      {"delimiter", delim},
      {"id_column", opt(id_column)},
      {"response", opt(response)},
      {"log_response", log_response ? "true" : "false"},
      {"scale", scaling_label(scaling)},
      {"coef_scale", coef_label(coefficient_scaling)},
      {"criterion", criterion_label(*this)},
      {"kappa", shortest(kappa)},
      {"gamma", shortest(gamma)},
      {"kaiser", kaiser ? "true" : "false"},
      {"nr", std::to_string(nr)},
      {"nd", std::to_string(nd)},
      {"select", selection.name()},
      {"alpha", shortest(selection.alpha)},
      {"threshold", shortest(selection.threshold)},
      {"t0", shortest(selection.t0)},
      {"step", shortest(selection.step)},
      {"norm", norm_label(selection.norm_order)},
      {"stop", selection.stop == StopRule::R2 ? "r2" : "rvexp"},
      {"entry", shortest(selection.entry)},
      {"exit", shortest(selection.exit)},
      {"max_card", selection.max_cardinality
                       ? std::to_string(*selection.max_cardinality)
                       : std::string("-")},
      {"method", to_string(method)},
      {"deflate", deflate ? "true" : "false"},
      {"seed", std::to_string(seed)},
      {"restarts", std::to_string(restarts)},
      {"format", format == OutputFormat::Json ? "json" : "tsv"},
      {"out", opt(out)},
      {"scores_out", opt(scores_out)},
  };
}

Dataset parse_csv(const std::string& text, char delimiter,
                  const std::optional<std::string>& id_column,
                  const std::optional<std::string>& response,
                  const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty())
    throw DataError(ErrorCode::MissingColumn, "cli: " + origin + " has no header row");
  if (!split_record(line, delimiter, header))
    throw DataError(ErrorCode::NonNumericCell,
                    "cli: " + origin + ": unterminated quote in header");
  for (auto& h : header) h = trim(h);

  const auto find = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw DataError(ErrorCode::MissingColumn,
                      "cli: " + origin + " has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::optional<std::size_t> id_at =
      id_column ? std::optional<std::size_t>(find(*id_column)) : std::nullopt;
  const std::optional<std::size_t> resp_at =
      response ? std::optional<std::size_t>(find(*response)) : std::nullopt;

  Dataset d;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == id_at || c == resp_at) continue;
    feature_cols.push_back(c);
    d.names.push_back(header[c]);
  }
  if (feature_cols.empty())
    throw DataError(ErrorCode::MissingColumn,
                    "cli: " + origin + " has no feature columns");
  if (response) d.response_name = *response;

  std::vector<std::vector<double>> rows;
  std::vector<double> resp;
  std::vector<std::string> cells;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    if (!split_record(line, delimiter, cells))
      throw DataError(ErrorCode::NonNumericCell,
                      "cli: " + origin + " row " + std::to_string(row) +
                          ": unterminated quote");
    if (cells.size() != header.size())
      throw DataError(ErrorCode::MissingValue,
                      "cli: " + origin + " row " + std::to_string(row) +
                          " has " + std::to_string(cells.size()) +
                          " cells, header has " +
                          std::to_string(header.size()));
    const auto number = [&](std::size_t c) {
      const std::string s = trim(cells[c]);
      if (s.empty() || s == "NA" || s == "na" || s == "NaN")
        throw DataError(ErrorCode::MissingValue,
                        "cli: " + origin + " row " + std::to_string(row) +
                            ", column '" + header[c] + "': missing value");
      double v = 0.0;
      const char* b = s.data();
      const char* e = s.data() + s.size();
      if (*b == '+') ++b;
      const auto r = std::from_chars(b, e, v);
      if (r.ec != std::errc() || r.ptr != e || !std::isfinite(v))
        throw DataError(ErrorCode::NonNumericCell,
                        "cli: " + origin + " row " + std::to_string(row) +
                            ", column '" + header[c] + "': not a number: '" +
                            s + "'");
      return v;
    };
    std::vector<double> vals;
    vals.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) vals.push_back(number(c));
    rows.push_back(std::move(vals));
    if (resp_at) resp.push_back(number(*resp_at));
    d.ids.push_back(id_at ? trim(cells[*id_at]) : std::to_string(row));
  }

  d.raw.resize(static_cast<Index>(rows.size()),
               static_cast<Index>(feature_cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < feature_cols.size(); ++j)
      d.raw(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  if (resp_at)
    d.response = Eigen::Map<const Vector>(resp.data(), static_cast<Index>(resp.size()));
  return d;
}

Dataset ingest_csv(const std::string& path, char delimiter,
                   const std::optional<std::string>& id_column,
                   const std::optional<std::string>& response) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw DataError(ErrorCode::FileNotFound, "cli: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), delimiter, id_column, response, path);
}

AnalysisReport run(const RunConfig& config) {
  const Dataset d = ingest_csv(config.input, config.delimiter, config.id_column,
                               config.response);
  return run(config, d);
}

AnalysisReport run(const RunConfig& config, const Dataset& data) {
  if (config.nr < 1) throw ConfigError("cli: --nr must be >= 1");
  if (config.nd < 0) throw ConfigError("cli: --nd must be >= 0");
  if (config.restarts < 1) throw ConfigError("cli: --restarts must be >= 1");
  const RotationCriterion criterion = config.rotation_criterion();
  criterion.validate();

  const DataMatrix x = center_scale(data.raw, config.scaling, data.names);

  AnalysisReport rep;
  rep.config = config.echo();
  rep.n = x.n();
  rep.p = x.p();
  rep.variables = data.names;
  rep.ids = data.ids;

  const Index rank = svd(x.values).rank();
  const PcaModel full = fit_pca(x, rank);
  rep.pca.total_variance = full.total_variance;
  for (Index j = 0; j < rank; ++j) {
    rep.pca.lambda.push_back(full.lambda(j));
    rep.pca.vexp_pct.push_back(100.0 * full.vexp(j) / full.total_variance);
  }
  if (config.nr > rank)
    throw NumericalError(ErrorCode::RankExceeded,
                         "pca: nr = " + std::to_string(config.nr) +
                             " exceeds the data rank " + std::to_string(rank));
  const Index k_pca = config.command == Command::Simpca ? config.nd : config.nr;
  rep.pca.coefficients = full.v.leftCols(config.nr);

  std::vector<Vector> score_cols;
  for (Index j = 0; j < config.nr; ++j) {
    rep.score_names.push_back("pc" + std::to_string(j + 1));
    score_cols.push_back(full.scores.col(j));
  }

  RotationOptions ropt;
  ropt.kaiser = config.kaiser;
  ropt.restarts = config.restarts;
  ropt.seed = config.seed;

  const auto summarize = [&](const RotationResult& r) {
    RotationSummary s;
    s.criterion = criterion.name();
    s.kaiser = r.kaiser;
    s.converged = r.converged;
    s.sweeps = r.sweeps_used;
    s.restart = r.restart_used;
    s.value = r.criterion_trace.empty() ? 0.0 : r.criterion_trace.back();
    s.coefficients = r.b;
    const Matrix sc = x.values * r.b;
    for (Index j = 0; j < sc.cols(); ++j) {
      s.vexp_pct.push_back(100.0 * vexp_of_component(x.values, sc.col(j)) /
                           full.total_variance);
      rep.score_names.push_back("rot" + std::to_string(j + 1));
      score_cols.push_back(sc.col(j));
    }
    return s;
  };

  if (config.command == Command::Rotate) {
    if (config.nr < 2) throw ConfigError("cli: rotate needs --nr >= 2");
    const Matrix a = rescale_coefficients(
        full.v.leftCols(config.nr), config.coefficient_scaling,
        full.lambda.head(config.nr));
    RotationResult r = rotate(a, criterion, ropt);
    canonicalize_rotation(x.values, r);
    rep.rotation = summarize(r);
  }

  Matrix sparse_scores(x.n(), 0);
  if (config.command == Command::Simpca) {
    SimpcaConfig sc;
    sc.nd = config.nd;
    sc.nr = config.nr;
    sc.coefficient_scaling = config.coefficient_scaling;
    sc.criterion = criterion;
    sc.rotation = ropt;
    sc.selection = config.selection;
    sc.method = config.method;
    sc.deflate = config.deflate;
    const SimpcaResult res = run_simpca(x, sc);
    if (config.nr >= 2) rep.rotation = summarize(res.rotation);

    sparse_scores.resize(x.n(), static_cast<Index>(res.components.size()));
    for (std::size_t j = 0; j < res.components.size(); ++j) {
      const SparseComponent& c = res.components[j];
      ComponentSummary cs;
      cs.method = to_string(c.method);
      for (std::size_t k = 0; k < c.support.indices.size(); ++k) {
        cs.variables.push_back(data.names[static_cast<std::size_t>(c.support.indices[k])]);
        cs.coefficients.push_back(c.coefficients(static_cast<Index>(k)));
      }
      cs.contributions = c.contributions;
      cs.vif = vif(x, c.support.indices);
      cs.vexp_pct = 100.0 * c.vexp / full.total_variance;
      cs.extra_vexp_pct = 100.0 * c.extra_vexp / full.total_variance;
      cs.cvexp_pct = 100.0 * res.cvexp[j] / full.total_variance;
      cs.rcvexp_pct = 100.0 * res.rcvexp[j];
      double mc = std::abs(cs.contributions.front());
      for (double v : cs.contributions) mc = std::min(mc, std::abs(v));
      cs.mincont_pct = mc;
      cs.target_vexp_pct = 100.0 * res.targets[j].vexp / full.total_variance;
      cs.r2_target = c.r2_vs_target.value_or(0.0);
      cs.threshold = c.support.threshold;
      rep.components.push_back(std::move(cs));
      sparse_scores.col(static_cast<Index>(j)) = c.scores;
      rep.score_names.push_back("sparse" + std::to_string(j + 1));
      score_cols.push_back(c.scores);
    }
    rep.correlations = component_correlations(res.components);
  }

  if (data.response) {
    Vector y = *data.response;
    if (config.log_response) {
      for (Index i = 0; i < y.size(); ++i) {
        if (!(y(i) > 0.0))
          throw DataError(ErrorCode::NonFiniteInput,
                          "cli: log of non-positive response at row " +
                              std::to_string(i + 1));
        y(i) = std::log(y(i));
      }
    }
    y.array() -= y.mean();
    for (Index k = 1; k <= std::min(k_pca, rank); ++k)
      rep.response_r2_pca.push_back(r_squared(full.scores.leftCols(k), y));
    for (Index k = 1; k <= sparse_scores.cols(); ++k)
      rep.response_r2_sparse.push_back(r_squared(sparse_scores.leftCols(k), y));
  }

  rep.scores.resize(x.n(), static_cast<Index>(score_cols.size()));
  for (std::size_t j = 0; j < score_cols.size(); ++j)
    rep.scores.col(static_cast<Index>(j)) = score_cols[j];
  return rep;
}

namespace {

std::string emit_tsv(const AnalysisReport& r) {
  std::ostringstream o;
  o << "# config\nkey\tvalue\n";
  for (const auto& [k, v] : r.config) o << k << '\t' << v << '\n';

  o << "\n# data\nrows\tcolumns\n" << r.n << '\t' << r.p << '\n';

  o << "\n# pca\ncomponent\tlambda\tvexp_pct\tcvexp_pct\n";
  double cum = 0.0;
  for (std::size_t j = 0; j < r.pca.lambda.size(); ++j) {
    cum += r.pca.vexp_pct[j];
    o << "pc" << j + 1 << '\t' << fixed(r.pca.lambda[j], 4) << '\t'
      << fixed(r.pca.vexp_pct[j], 1) << '\t' << fixed(cum, 1) << '\n';
  }

  const auto coef_table = [&](const Matrix& m, const char* prefix) {
    o << "variable";
    for (Index j = 0; j < m.cols(); ++j) o << '\t' << prefix << j + 1;
    o << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
      o << r.variables[static_cast<std::size_t>(i)];
      for (Index j = 0; j < m.cols(); ++j) o << '\t' << fixed(m(i, j), 4);
      o << '\n';
    }
  };
  o << "\n# pca_coefficients\n";
  coef_table(r.pca.coefficients, "pc");

  if (r.rotation) {
    const RotationSummary& s = *r.rotation;
    o << "\n# rotation\nkey\tvalue\n"
      << "criterion\t" << s.criterion << '\n'
      << "kaiser\t" << (s.kaiser ? "true" : "false") << '\n'
      << "converged\t" << (s.converged ? "true" : "false") << '\n'
      << "sweeps\t" << s.sweeps << '\n'
      << "restart\t" << s.restart << '\n'
      << "value\t" << fixed(s.value, 6) << '\n';
    o << "\n# rotated_coefficients\n";
    coef_table(s.coefficients, "rot");
    o << "vexp_pct";
    for (double v : s.vexp_pct) o << '\t' << fixed(v, 1);
    o << '\n';
  }

  o << "\n# components\ncomponent\tmethod\tcardinality\tvexp_pct\t"
       "extra_vexp_pct\tcvexp_pct\trcvexp_pct\tmincont_pct\ttarget_vexp_pct\t"
       "r2_target\tmedian_vif\n";
  for (std::size_t j = 0; j < r.components.size(); ++j) {
    const ComponentSummary& c = r.components[j];
    o << j + 1 << '\t' << c.method << '\t' << c.cardinality() << '\t'
      << fixed(c.vexp_pct, 1) << '\t' << fixed(c.extra_vexp_pct, 1) << '\t'
      << fixed(c.cvexp_pct, 1) << '\t' << fixed(c.rcvexp_pct, 1) << '\t'
      << fixed(c.mincont_pct, 0) << '\t' << fixed(c.target_vexp_pct, 1) << '\t'
      << fixed(c.r2_target, 3) << '\t' << fixed(median(c.vif), 3) << '\n';
  }

  o << "\n# contributions\ncomponent\tvariable\tcontribution_pct\tvif\n";
  for (std::size_t j = 0; j < r.components.size(); ++j) {
    const ComponentSummary& c = r.components[j];
    for (std::size_t k = 0; k < c.variables.size(); ++k)
      o << j + 1 << '\t' << c.variables[k] << '\t'
        << fixed(c.contributions[k], 0) << '\t' << fixed(c.vif[k], 3) << '\n';
  }

  o << "\n# correlations\ncomponent";
  for (Index j = 0; j < r.correlations.cols(); ++j) o << '\t' << j + 1;
  o << '\n';
  for (Index i = 0; i < r.correlations.rows(); ++i) {
    o << i + 1;
    for (Index j = 0; j < r.correlations.cols(); ++j)
      o << '\t' << fixed(r.correlations(i, j), 3);
    o << '\n';
  }

  if (!r.response_r2_pca.empty() || !r.response_r2_sparse.empty()) {
    o << "\n# response_r2\nk\tpca\tsparse\n";
    const std::size_t kmax =
        std::max(r.response_r2_pca.size(), r.response_r2_sparse.size());
    for (std::size_t k = 0; k < kmax; ++k) {
      o << k + 1 << '\t'
        << (k < r.response_r2_pca.size() ? fixed(r.response_r2_pca[k], 3) : "-")
        << '\t'
        << (k < r.response_r2_sparse.size() ? fixed(r.response_r2_sparse[k], 3)
                                            : "-")
        << '\n';
    }
  }
  return o.str();
}

json to_json(const AnalysisReport& r) {
  json j;
  json cfg = json::array();
  for (const auto& [k, v] : r.config) cfg.push_back({k, v});
  j["config"] = cfg;
  j["n"] = r.n;
  j["p"] = r.p;
  j["variables"] = r.variables;
  j["pca"] = {{"lambda", r.pca.lambda},
              {"vexp_pct", r.pca.vexp_pct},
              {"total_variance", r.pca.total_variance},
              {"coefficients", matrix_json(r.pca.coefficients)}};
  if (r.rotation) {
    const RotationSummary& s = *r.rotation;
    j["rotation"] = {{"criterion", s.criterion}, {"kaiser", s.kaiser},
                     {"converged", s.converged}, {"sweeps", s.sweeps},
                     {"restart", s.restart},     {"value", s.value},
                     {"coefficients", matrix_json(s.coefficients)},
                     {"vexp_pct", s.vexp_pct}};
  } else {
    j["rotation"] = nullptr;
  }
  json comps = json::array();
  for (const ComponentSummary& c : r.components) {
    json cj = {{"method", c.method},
               {"variables", c.variables},
               {"coefficients", c.coefficients},
               {"contributions", c.contributions},
               {"vif", c.vif},
               {"vexp_pct", c.vexp_pct},
               {"extra_vexp_pct", c.extra_vexp_pct},
               {"cvexp_pct", c.cvexp_pct},
               {"rcvexp_pct", c.rcvexp_pct},
               {"mincont_pct", c.mincont_pct},
               {"target_vexp_pct", c.target_vexp_pct},
               {"r2_target", c.r2_target}};
    cj["threshold"] = c.threshold ? json(*c.threshold) : json(nullptr);
    comps.push_back(std::move(cj));
  }
  j["components"] = comps;
  j["correlations"] = matrix_json(r.correlations);
  j["response_r2"] = {{"pca", r.response_r2_pca},
                      {"sparse", r.response_r2_sparse}};
  return j;
}

}  // namespace

std::string emit(const AnalysisReport& report, OutputFormat format) {
  if (format == OutputFormat::Tsv) return emit_tsv(report);
  return to_json(report).dump(2) + "\n";
}

std::string emit_scores(const AnalysisReport& report) {
  std::ostringstream o;
  o << "id";
  for (const auto& s : report.score_names) o << '\t' << s;
  o << '\n';
  for (Index i = 0; i < report.scores.rows(); ++i) {
    o << (static_cast<std::size_t>(i) < report.ids.size()
              ? report.ids[static_cast<std::size_t>(i)]
              : std::to_string(i + 1));
    for (Index j = 0; j < report.scores.cols(); ++j)
      o << '\t' << shortest(report.scores(i, j));
    o << '\n';
  }
  return o.str();
}

AnalysisReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(ErrorCode::NonNumericCell,
                    std::string("cli: malformed report json: ") + e.what());
  }
  try {
    AnalysisReport r;
    for (const auto& kv : j.at("config"))
      r.config.emplace_back(kv.at(0).get<std::string>(),
                            kv.at(1).get<std::string>());
    r.n = j.at("n").get<Index>();
    r.p = j.at("p").get<Index>();
    r.variables = j.at("variables").get<std::vector<std::string>>();
    const json& pj = j.at("pca");
    r.pca.lambda = pj.at("lambda").get<std::vector<double>>();
    r.pca.vexp_pct = pj.at("vexp_pct").get<std::vector<double>>();
    r.pca.total_variance = pj.at("total_variance").get<double>();
    r.pca.coefficients = matrix_from(pj.at("coefficients"));
    if (!j.at("rotation").is_null()) {
      const json& rj = j.at("rotation");
      RotationSummary s;
      s.criterion = rj.at("criterion").get<std::string>();
      s.kaiser = rj.at("kaiser").get<bool>();
      s.converged = rj.at("converged").get<bool>();
      s.sweeps = rj.at("sweeps").get<int>();
      s.restart = rj.at("restart").get<int>();
      s.value = rj.at("value").get<double>();
      s.coefficients = matrix_from(rj.at("coefficients"));
      s.vexp_pct = rj.at("vexp_pct").get<std::vector<double>>();
      r.rotation = std::move(s);
    }
    for (const json& cj : j.at("components")) {
      ComponentSummary c;
      c.method = cj.at("method").get<std::string>();
      c.variables = cj.at("variables").get<std::vector<std::string>>();
      c.coefficients = cj.at("coefficients").get<std::vector<double>>();
      c.contributions = cj.at("contributions").get<std::vector<double>>();
      c.vif = cj.at("vif").get<std::vector<double>>();
      c.vexp_pct = cj.at("vexp_pct").get<double>();
      c.extra_vexp_pct = cj.at("extra_vexp_pct").get<double>();
      c.cvexp_pct = cj.at("cvexp_pct").get<double>();
      c.rcvexp_pct = cj.at("rcvexp_pct").get<double>();
      c.mincont_pct = cj.at("mincont_pct").get<double>();
      c.target_vexp_pct = cj.at("target_vexp_pct").get<double>();
      c.r2_target = cj.at("r2_target").get<double>();
      if (!cj.at("threshold").is_null())
        c.threshold = cj.at("threshold").get<double>();
      r.components.push_back(std::move(c));
    }
    r.correlations = matrix_from(j.at("correlations"));
    r.response_r2_pca = j.at("response_r2").at("pca").get<std::vector<double>>();
    r.response_r2_sparse =
        j.at("response_r2").at("sparse").get<std::vector<double>>();
    return r;
  } catch (const json::exception& e) {
    throw DataError(ErrorCode::MissingColumn,
                    std::string("cli: incomplete report json: ") + e.what());
  }
}

}  // namespace simpca
