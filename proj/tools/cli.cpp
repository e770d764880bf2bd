#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "grushin/comparability.hpp"
#include "grushin/eta.hpp"
#include "grushin/grid_oracle.hpp"
#include "grushin/jacobian.hpp"
#include "grushin/qs_maps.hpp"
#include "grushin/random.hpp"
#include "grushin/semmes.hpp"
#include "grushin/staircase.hpp"

namespace grushin::cli {
namespace {

struct BadArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct RunConfig {
  double alpha = 2.0;
  Rectangle region{};
  std::int64_t samples = 10000;
  std::uint64_t seed = 42;
  int resolution = kDefaultScanResolution;
  Norm norm = Norm::LInf;
  Format format = Format::Csv;
  std::string output_path;
};

// ---------------------------------------------------------------------------
// Output documents: named tables plus a summary, rendered as CSV or JSON.

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Document {
  std::string command;
  nlohmann::ordered_json config;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, Cell>> summary;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else return std::to_string(v);
      },
      c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
        }
        return v;
      },
      c);
}

std::string render(const Document& doc, Format format) {
  std::ostringstream os;
  if (format == Format::Csv) {
    for (std::size_t t = 0; t < doc.tables.size(); ++t) {
      const auto& table = doc.tables[t];
      if (t > 0) os << '\n';
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << table.columns[c];
      }
      os << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
        os << '\n';
      }
    }
    if (!doc.summary.empty()) {
      os << "# summary";
      for (const auto& [k, v] : doc.summary) os << ' ' << k << '=' << csv_cell(v);
      os << '\n';
    }
    return os.str();
  }

  nlohmann::ordered_json j;
  j["command"] = doc.command;
  j["config"] = doc.config;
  for (const auto& table : doc.tables) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c]);
      rows.push_back(std::move(obj));
    }
    j[table.name] = std::move(rows);
  }
  if (!doc.summary.empty()) {
    nlohmann::ordered_json s;
    for (const auto& [k, v] : doc.summary) s[k] = json_cell(v);
    j["summary"] = std::move(s);
  }
  os << j.dump(2) << '\n';
  return os.str();
}

// Writes through a temporary file in the destination directory, then renames,
// so a failed run never leaves a partial file behind.
void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoFailure("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoFailure("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoFailure("cannot move output into place at " + path);
  }
}

void emit(const RunConfig& cfg, const Document& doc, std::ostream& out) {
  const std::string text = render(doc, cfg.format);
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    write_atomically(cfg.output_path, text);
  }
}

// ---------------------------------------------------------------------------
// Argument parsing

std::vector<double> parse_reals(const std::string& text, std::size_t expected,
                                const std::string& what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string token = text.substr(start, comma == std::string::npos ? comma : comma - start);
    std::istringstream is(token);
    is.imbue(std::locale::classic());
    double v;
    if (!(is >> v) || !(is >> std::ws).eof() || !std::isfinite(v)) {
      throw BadArgument("malformed " + what + " '" + text + "'");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.size() != expected) {
    throw BadArgument(what + " needs " + std::to_string(expected) + " comma-separated reals, got '" +
                      text + "'");
  }
  return values;
}

GrushinPoint parse_point(const std::string& text, const std::string& what) {
  const auto v = parse_reals(text, 2, what);
  return GrushinPoint(v[0], v[1]);
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["alpha"] = cfg.alpha;
  j["region"] = {cfg.region.xmin, cfg.region.ymin, cfg.region.xmax, cfg.region.ymax};
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["resolution"] = cfg.resolution;
  j["norm"] = cfg.norm == Norm::LInf ? "linf" : "euclid";
  return j;
}

const char* to_string(QuasiBranch b) {
  switch (b) {
    case QuasiBranch::Coincident: return "coincident";
    case QuasiBranch::Horizontal: return "horizontal";
    case QuasiBranch::VerticalPower: return "vertical_power";
    case QuasiBranch::VerticalScaled: return "vertical_scaled";
  }
  return "unknown";
}

const char* to_string(StaircaseBranch b) {
  switch (b) {
    case StaircaseBranch::InteriorOptimum: return "INTERIOR_OPTIMUM";
    case StaircaseBranch::EndpointX1: return "ENDPOINT_X1";
    case StaircaseBranch::EndpointX2: return "ENDPOINT_X2";
    case StaircaseBranch::PureVertical: return "PURE_VERTICAL";
  }
  return "UNKNOWN";
}

const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::Case1: return "CASE_1";
    case CaseLabel::Case2: return "CASE_2";
    case CaseLabel::Case3_1: return "CASE_3_1";
    case CaseLabel::Case3_2: return "CASE_3_2";
    case CaseLabel::Case3_3: return "CASE_3_3";
  }
  return "UNKNOWN";
}

// ---------------------------------------------------------------------------
// Subcommands

Document cmd_quasidistance(const RunConfig& cfg, const GrushinPoint& z1, const GrushinPoint& z2) {
  const Params p(cfg.alpha);
  const auto q = quasidistance_detail(z1, z2, p);
  Document doc{"quasidistance", config_json(cfg), {}, {}};
  doc.tables.push_back({"result",
                        {"z1_x", "z1_y", "z2_x", "z2_y", "alpha", "quasidistance", "branch"},
                        {{z1.x(), z1.y(), z2.x(), z2.y(), cfg.alpha, q.value,
                          std::string(to_string(q.branch))}}});
  return doc;
}

Document cmd_ccdist(const RunConfig& cfg, const GrushinPoint& z1, const GrushinPoint& z2) {
  const Params p(cfg.alpha);
  const auto stair = staircase_distance(z1, z2, p);
  const double grid = grid_cc_distance(z1, z2, p, cfg.resolution, cfg.region);
  const double ratio = grid > 0 ? stair.length / grid : (stair.length == 0 ? 1.0 : INFINITY);
  Document doc{"ccdist", config_json(cfg), {}, {}};
  doc.tables.push_back({"result",
                        {"z1_x", "z1_y", "z2_x", "z2_y", "alpha", "staircase", "pivot", "branch",
                         "grid", "staircase_over_grid"},
                        {{z1.x(), z1.y(), z2.x(), z2.y(), cfg.alpha, stair.length,
                          stair.pivot_abscissa, std::string(to_string(stair.branch)), grid,
                          ratio}}});
  return doc;
}

Document cmd_compare(const RunConfig& cfg) {
  const auto report =
      comparability_scan(cfg.region, Params(cfg.alpha), cfg.samples, cfg.seed, cfg.resolution);
  Document doc{"compare", config_json(cfg), {}, {}};
  Table t{"samples",
          {"sample_id", "z1_x", "z1_y", "z2_x", "z2_y", "quasidistance", "staircase", "grid",
           "ratio"},
          {}};
  t.rows.reserve(report.samples.size());
  for (const auto& s : report.samples) {
    t.rows.push_back({s.id, s.z1.x(), s.z1.y(), s.z2.x(), s.z2.y(), s.quasidistance, s.staircase,
                      s.grid, s.ratio});
  }
  doc.tables.push_back(std::move(t));
  doc.summary = {{"ratio_min", report.ratio_min},
                 {"ratio_max", report.ratio_max},
                 {"C", report.constant()}};
  return doc;
}

struct QsOptions {
  double cs = 20.0;
  double cs_lower = 1.0 / 12.0;
  int bins = 20;
  std::int64_t triples = 0;
  bool identity_hook = false;
};

Document cmd_qs(const RunConfig& cfg, const QsOptions& opt) {
  const Params p(cfg.alpha);
  if (cfg.samples < 1) throw PreconditionError("qs needs at least one sample");
  if (!(opt.cs > 0) || !(opt.cs_lower > 0) || opt.cs_lower > opt.cs) {
    throw PreconditionError("qs needs 0 < cs-lower <= cs");
  }
  const SandwichWindow<double> window{opt.cs_lower, opt.cs};

  Document doc{"qs", config_json(cfg), {}, {}};
  doc.config["cs"] = opt.cs;
  doc.config["cs_lower"] = opt.cs_lower;
  doc.config["bins"] = opt.bins;
  doc.config["identity_hook"] = opt.identity_hook;

  Table sand{"sandwich",
             {"sample_id", "z_x", "z_y", "zp_x", "zp_y", "case", "r", "image_distance", "scale",
              "ratio", "passed"},
             {}};
  SandwichSummary<double> summary;
  const auto& R = cfg.region;
  for (std::int64_t k = 0; k < cfg.samples; ++k) {
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(k));
    for (;;) {
      const GrushinPoint z(rng.uniform(R.xmin, R.xmax), rng.uniform(R.ymin, R.ymax));
      const GrushinPoint zp(rng.uniform(R.xmin, R.xmax), rng.uniform(R.ymin, R.ymax));
      if (quasidistance(z, zp, p) < kDegenerateDistance) continue;
      const auto c = sandwich_check(z, zp, p, window, cfg.norm);
      const auto cls = classify_case(z, zp, p);
      summary.merge(c);
      sand.rows.push_back({k, z.x(), z.y(), zp.x(), zp.y(), std::string(to_string(c.label)),
                           cls.r, c.image_distance, c.scale_value, c.lower_ratio, c.passed});
      break;
    }
  }

  ImageMetric metric;
  if (opt.identity_hook) {
    metric = [p](const GrushinPoint& a, const GrushinPoint& b) { return quasidistance(a, b, p); };
  } else {
    metric = flattening_image_metric(p, cfg.norm);
  }
  const std::int64_t triples = opt.triples > 0 ? opt.triples : cfg.samples;
  const auto eta = eta_estimate(cfg.region, p, triples, cfg.seed, opt.bins, metric);
  Table env{"eta", {"bin", "t_lo", "t_hi", "count", "max_rho", "envelope"}, {}};
  for (std::size_t b = 0; b < eta.bins.size(); ++b) {
    const auto& bin = eta.bins[b];
    env.rows.push_back({static_cast<std::int64_t>(b), bin.t_lo, bin.t_hi, bin.count, bin.max_rho,
                        bin.envelope});
  }

  doc.tables.push_back(std::move(sand));
  doc.tables.push_back(std::move(env));
  doc.summary = {{"sandwich_lower", summary.lower_ratio},
                 {"sandwich_upper", summary.upper_ratio},
                 {"violations", summary.violations},
                 {"weak_constant", eta.weak_constant},
                 {"eta_out_of_range", eta.out_of_range}};
  return doc;
}

Document cmd_jacobian(const RunConfig& cfg, double beta) {
  const auto w = alpha_for_beta(beta);
  Document doc{"jacobian", config_json(cfg), {}, {}};
  doc.config["beta"] = beta;
  doc.summary.emplace_back("regime", std::string(to_string(w.regime)));
  doc.summary.emplace_back("derived_alpha",
                           w.derived_alpha ? Cell(*w.derived_alpha) : Cell(std::string("ABSENT")));

  if (w.derived_alpha) {
    Table t{"density", {"u", "euclidean_factor", "grushin_density", "total"}, {}};
    constexpr int kProbes = 9;
    for (int k = 0; k < kProbes; ++k) {
      const double u = std::pow(10.0, -3.0 + 4.0 * k / (kProbes - 1));
      const auto d = jacobian_density(u, beta);
      t.rows.push_back({u, d.euclidean_factor, d.grushin_density, d.total});
    }
    const auto lo = jacobian_density(1e-3, beta);
    const auto hi = jacobian_density(10.0, beta);
    const double slope = std::log(hi.total / lo.total) / std::log(10.0 / 1e-3);
    doc.tables.push_back(std::move(t));
    doc.summary.emplace_back("slope", slope);
  }

  // A Jacobian like |x|^beta forces an x-derivative of order |x|^(beta/2).
  const auto acl = acl_integrability(-beta);
  doc.summary.emplace_back("acl_t", -beta);
  doc.summary.emplace_back("acl_integrable", acl.integrable);
  return doc;
}

Document cmd_acl(const RunConfig& cfg, const std::vector<double>& ts) {
  Document doc{"acl", config_json(cfg), {}, {}};
  Table t{"acl", {"t", "integrable", "integral", "partial_at_min_delta", "divergence_certified"},
          {}};
  for (double v : ts) {
    const auto r = acl_integrability(v);
    t.rows.push_back({v, r.integrable, r.integral ? Cell(*r.integral) : Cell(INFINITY),
                      r.partial_integrals.back(), r.divergence_certified});
  }
  doc.tables.push_back(std::move(t));
  return doc;
}

Document cmd_semmes(const RunConfig& cfg, const GrushinPoint& z1, const GrushinPoint& z2,
                    double beta) {
  const auto est = semmes_quasidistance(z1.coords(), z2.coords(), beta, cfg.samples, cfg.seed);
  Document doc{"semmes", config_json(cfg), {}, {}};
  doc.config["beta"] = beta;
  doc.tables.push_back({"result",
                        {"z1_x", "z1_y", "z2_x", "z2_y", "beta", "delta", "delta_std_error",
                         "mass", "mass_std_error", "relative_std_error"},
                        {{z1.x(), z1.y(), z2.x(), z2.y(), beta, est.delta, est.delta_std_error,
                          est.mass, est.mass_std_error, est.relative_std_error}}});
  return doc;
}

constexpr const char* kSchemaHelp = R"(Output schemas (CSV; JSON mirrors the same fields):
  quasidistance  z1_x,z1_y,z2_x,z2_y,alpha,quasidistance,branch
  ccdist         z1_x,z1_y,z2_x,z2_y,alpha,staircase,pivot,branch,grid,staircase_over_grid
  compare        sample_id,z1_x,z1_y,z2_x,z2_y,quasidistance,staircase,grid,ratio
                 footer: '# summary ratio_min=.. ratio_max=.. C=..'
  qs             sandwich table: sample_id,z_x,z_y,zp_x,zp_y,case,r,image_distance,scale,ratio,passed
                 blank line, then eta table: bin,t_lo,t_hi,count,max_rho,envelope
                 footer: '# summary sandwich_lower=.. sandwich_upper=.. violations=.. weak_constant=..'
  jacobian       density table: u,euclidean_factor,grushin_density,total (only for -2 < beta < 0)
                 footer: '# summary regime=.. derived_alpha=.. slope=.. acl_t=.. acl_integrable=..'
  acl            t,integrable,integral,partial_at_min_delta,divergence_certified
  semmes         z1_x,z1_y,z2_x,z2_y,beta,delta,delta_std_error,mass,mass_std_error,relative_std_error
Exit codes: 0 success, 2 bad arguments, 3 precondition violation, 4 I/O failure.)";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grushin plane toolkit: quasidistance, CC distance estimates, flattening maps "
               "and Jacobian weights",
               "grushin"};
  app.footer(kSchemaHelp);
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::string region_text;
  std::string norm_text = "linf";
  std::string format_text = "csv";
  app.add_option("--alpha", cfg.alpha, "Grushin exponent alpha > 0")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Number of samples")->capture_default_str();
  app.add_option("--resolution", cfg.resolution, "Grid resolution (cells across the region)")
      ->capture_default_str();
  app.add_option("--region", region_text, "Region xmin,ymin,xmax,ymax (default -2,-2,2,2)");
  app.add_option("--norm", norm_text, "Image-plane norm")
      ->check(CLI::IsMember({"linf", "euclid"}))
      ->capture_default_str();
  app.add_option("--format", format_text, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", cfg.output_path, "Output file (default: standard output)");

  std::string z1_text, z2_text;
  auto add_points = [&](CLI::App* sub) {
    sub->add_option("--z1", z1_text, "First point x,y")->required();
    sub->add_option("--z2", z2_text, "Second point x,y")->required();
  };

  auto* qd = app.add_subcommand("quasidistance", "Quasidistance between two points");
  add_points(qd);
  auto* cc = app.add_subcommand("ccdist", "Staircase and grid estimates of the CC distance");
  add_points(cc);
  auto* compare = app.add_subcommand("compare", "Comparability scan: quasidistance vs CC estimate");

  QsOptions qs_opt;
  auto* qs = app.add_subcommand("qs", "Sandwich checks and eta envelope of the flattening map");
  qs->add_option("--cs", qs_opt.cs, "Upper sandwich constant")->capture_default_str();
  qs->add_option("--cs-lower", qs_opt.cs_lower, "Lower sandwich constant")->capture_default_str();
  qs->add_option("--bins", qs_opt.bins, "Number of log-spaced eta bins")->capture_default_str();
  qs->add_option("--triples", qs_opt.triples, "Eta triples (default: --samples)");
  qs->add_flag("--identity-hook", qs_opt.identity_hook,
               "Replace the flattening map by the identity on (G, d) for the eta table");

  double beta = 0;
  auto* jac = app.add_subcommand("jacobian", "Weight exponent classification and density table");
  jac->add_option("--beta", beta, "Weight exponent beta")->required();

  std::vector<double> ts;
  auto* acl = app.add_subcommand("acl", "Local integrability of |x|^(-t/2) on horizontal lines");
  acl->add_option("--t", ts, "Exponent(s) t")->required();

  double semmes_beta = 0;
  auto* sem = app.add_subcommand("semmes", "Measure quasidistance of the weight |x|^beta");
  add_points(sem);
  sem->add_option("--beta", semmes_beta, "Weight exponent beta > -1")->required();

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  try {
    if (!region_text.empty()) {
      const auto r = parse_reals(region_text, 4, "--region");
      cfg.region = Rectangle{r[0], r[1], r[2], r[3]};
    }
    cfg.norm = norm_text == "linf" ? Norm::LInf : Norm::Euclidean;
    cfg.format = format_text == "json" ? Format::Json : Format::Csv;

    // Preconditions shared by every subcommand.
    (void)Params(cfg.alpha);
    cfg.region.validate();

    Document doc;
    if (*qd) {
      doc = cmd_quasidistance(cfg, parse_point(z1_text, "--z1"), parse_point(z2_text, "--z2"));
    } else if (*cc) {
      doc = cmd_ccdist(cfg, parse_point(z1_text, "--z1"), parse_point(z2_text, "--z2"));
    } else if (*compare) {
      doc = cmd_compare(cfg);
    } else if (*qs) {
      doc = cmd_qs(cfg, qs_opt);
    } else if (*jac) {
      doc = cmd_jacobian(cfg, beta);
    } else if (*acl) {
      doc = cmd_acl(cfg, ts);
    } else {
      doc = cmd_semmes(cfg, parse_point(z1_text, "--z1"), parse_point(z2_text, "--z2"),
                       semmes_beta);
    }
    emit(cfg, doc, out);
  } catch (const BadArgument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionViolation;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionViolation;
  }
  return kSuccess;
}

}  // namespace grushin::cli
