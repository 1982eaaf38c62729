#include "sigb/cli.hpp"

#include <chrono>
#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sigb/block.hpp"
#include "sigb/bounds.hpp"
#include "sigb/generate.hpp"
#include "sigb/matrix_market.hpp"
#include "sigb/oracle.hpp"
#include "sigb/report.hpp"

namespace sigb {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_parse = 2;
constexpr int exit_inapplicable = 3;
constexpr int exit_internal = 4;

class Timer {
public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point t0_;
};

struct Config {
  std::string file;
  std::size_t r = 0;
  std::size_t p = 1;
  double tol = 1e-9;
  std::size_t r_max = 1000;
  std::string row_parts;
  std::string col_parts;
  std::string gen;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string format = "human";
  bool no_oracle = false;
};

bool machine(const Config& c) { return c.format == "json-like"; }

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

std::vector<std::size_t> parse_part_sizes(const std::string& s, const char* what) {
  std::vector<std::size_t> sizes;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::size_t end = comma == std::string::npos ? s.size() : comma;
    unsigned long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + end, v);
    if (ec != std::errc{} || ptr != s.data() + end || v == 0) {
      throw ConfigError(std::string(what) + " must be comma-separated positive sizes, got '" +
                        s + "'");
    }
    sizes.push_back(static_cast<std::size_t>(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (sizes.empty()) throw ConfigError(std::string(what) + " has no sizes");
  return sizes;
}

void emit(const ordered_json& doc, const std::string& human, const Config& c,
          std::ostream& out) {
  if (machine(c)) out << doc.dump(2) << "\n";
  else out << human;
}

int run_bounds(const Config& c, std::ostream& out, std::ostream& err) {
  Timer total;
  Timer tp;
  Matrix a = parse_matrix_market(c.file);
  double parse_ms = tp.ms();
  Timer tc;
  BoundReport rep = standard_report(a, c.r, c.p, !c.no_oracle);
  double compute_ms = tc.ms();

  ordered_json doc;
  doc["command"] = "bounds";
  doc["input"] = c.file;
  doc["config"] = ordered_json{{"r", c.r}, {"p", c.p}, {"oracle", !c.no_oracle}};
  ordered_json body = to_json(rep);
  for (auto& [key, value] : body.items()) doc[key] = value;
  doc["timings_ms"] =
      ordered_json{{"parse", parse_ms}, {"compute", compute_ms}, {"total", total.ms()}};

  emit(doc, human_text(rep), c, out);
  if (rep.lower_bound_error) {
    err << "walk lower bound inapplicable: " << *rep.lower_bound_error << "\n";
    return exit_inapplicable;
  }
  return exit_ok;
}

int run_estimate(const Config& c, std::ostream& out, std::ostream& err) {
  Timer total;
  Timer tp;
  Matrix a = parse_matrix_market(c.file);
  double parse_ms = tp.ms();

  ordered_json doc;
  doc["command"] = "estimate";
  doc["input"] = c.file;
  doc["config"] = ordered_json{{"p", c.p}, {"tol", c.tol}, {"r_max", c.r_max}};
  doc["matrix"] = to_json(describe(a));

  if (a.is_zero()) {
    doc["sigma_exact_zero"] = true;
    doc["sigma"] = 0.0;
    doc["timings_ms"] = ordered_json{{"parse", parse_ms}, {"total", total.ms()}};
    emit(doc, "all entries are zero: sigma = 0 exactly\n", c, out);
    return exit_ok;
  }

  Timer tc;
  SandwichResult s;
  try {
    s = sandwich_estimate(a, c.p, c.tol, c.r_max);
  } catch (const TheoremInapplicableError& e) {
    doc["error"] = "theorem-inapplicable";
    doc["detail"] = e.what();
    doc["timings_ms"] = ordered_json{{"parse", parse_ms}, {"total", total.ms()}};
    emit(doc, std::string("estimate inapplicable: ") + e.what() + "\n", c, out);
    err << "estimate inapplicable: " << e.what() << "\n";
    return exit_inapplicable;
  }
  double est_ms = tc.ms();
  OracleResult oracle = reference_sigma(a);

  doc["estimate"] = to_json(s.estimate);
  doc["converged"] = s.converged;
  doc["r_stop"] = s.r_stop;
  doc["upper_trace"] = s.upper_trace;
  doc["lower_trace"] = s.lower_trace;
  doc["oracle"] = to_json(oracle);
  doc["timings_ms"] =
      ordered_json{{"parse", parse_ms}, {"estimate", est_ms}, {"total", total.ms()}};

  std::ostringstream human;
  human << "sandwich estimate (p=" << c.p << ", tol=" << c.tol << ", r_max=" << c.r_max
        << ")\n";
  human << "  estimate sigma " << fmt(s.estimate.value) << " (raw sigma^2p "
        << fmt(s.estimate.raw_2p_value) << ")\n";
  human << "  " << (s.converged ? "converged" : "did NOT converge") << " at r=" << s.r_stop
        << "; last upper " << fmt(s.upper_trace.back()) << ", last lower "
        << fmt(s.lower_trace.back()) << "\n";
  human << "  oracle sigma " << fmt(oracle.sigma) << "\n";
  emit(doc, human.str(), c, out);
  return exit_ok;
}

int run_oracle(const Config& c, std::ostream& out, std::ostream& /*err*/) {
  Timer total;
  Timer tp;
  Matrix a = parse_matrix_market(c.file);
  double parse_ms = tp.ms();
  Timer tc;
  OracleResult res = reference_sigma(a);
  double oracle_ms = tc.ms();

  ordered_json doc;
  doc["command"] = "oracle";
  doc["input"] = c.file;
  doc["matrix"] = to_json(describe(a));
  doc["oracle"] = to_json(res);
  doc["timings_ms"] =
      ordered_json{{"parse", parse_ms}, {"oracle", oracle_ms}, {"total", total.ms()}};

  std::ostringstream human;
  human << "oracle sigma " << fmt(res.sigma) << " (sigma^2 " << fmt(res.sigma * res.sigma)
        << ", " << (res.converged ? "converged" : "NOT converged") << ", residual "
        << fmt(res.residual) << ", " << res.iterations << " iterations, " << res.restarts_used
        << " restarts)\n";
  emit(doc, human.str(), c, out);
  return exit_ok;
}

int run_blocks(const Config& c, std::ostream& out, std::ostream& /*err*/) {
  Timer total;
  Timer tp;
  Matrix a = parse_matrix_market(c.file);
  double parse_ms = tp.ms();

  BlockPartition part =
      BlockPartition::contiguous(c.row_parts.empty() ? std::vector<std::size_t>{a.rows()}
                                                     : parse_part_sizes(c.row_parts, "--row-parts"),
                                 c.col_parts.empty() ? std::vector<std::size_t>{a.cols()}
                                                     : parse_part_sizes(c.col_parts, "--col-parts"));
  Timer tc;
  CompressionMatrix comp = compress(a, part);
  OracleResult sigma_b = reference_sigma(comp.b);
  BoundValue block_bound{BoundKind::upper, sigma_b.sigma, sigma_b.sigma * sigma_b.sigma, 0, 1,
                         true};
  CompressedBounds compressed;
  if (!comp.b.is_zero()) {
    compressed = {refined_bound(comp.b), support_bound(comp.b)};
  } else {
    BoundValue zero{BoundKind::upper, 0.0, 0.0, 0, 1, true};
    compressed = {zero, zero};
  }
  OracleResult sigma_a = reference_sigma(a);
  double compute_ms = tc.ms();

  ordered_json bj = ordered_json::array();
  for (std::size_t i = 0; i < comp.b.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < comp.b.cols(); ++j) row.push_back(comp.b.at(i, j).real());
    bj.push_back(row);
  }

  ordered_json doc;
  doc["command"] = "blocks";
  doc["input"] = c.file;
  doc["config"] = ordered_json{{"row_parts", c.row_parts}, {"col_parts", c.col_parts}};
  doc["matrix"] = to_json(describe(a));
  doc["compression"] = ordered_json{
      {"rows", comp.b.rows()}, {"cols", comp.b.cols()}, {"values", bj}};
  doc["bounds"] = ordered_json{{"block_sigma", to_json(block_bound)},
                               {"compressed_mid", to_json(compressed.mid)},
                               {"compressed_support", to_json(compressed.support)}};
  doc["oracle"] = to_json(sigma_a);
  doc["timings_ms"] =
      ordered_json{{"parse", parse_ms}, {"compute", compute_ms}, {"total", total.ms()}};

  std::ostringstream human;
  human << "block compression " << comp.b.rows() << " x " << comp.b.cols() << " of a "
        << a.rows() << " x " << a.cols() << " matrix\n";
  human << "  sigma(B)        " << fmt(block_bound.value) << "  (upper bound on sigma)\n";
  human << "  compressed mid  " << fmt(compressed.mid.value) << "  raw " << fmt(compressed.mid.raw_2p_value)
        << "\n";
  human << "  compressed supp " << fmt(compressed.support.value) << "  raw "
        << fmt(compressed.support.raw_2p_value) << "\n";
  human << "  oracle sigma(A) " << fmt(sigma_a.sigma) << "\n";
  emit(doc, human.str(), c, out);
  return exit_ok;
}

int run_bench(const Config& c, std::ostream& out, std::ostream& /*err*/) {
  Timer total;
  ordered_json rows = ordered_json::array();
  std::ostringstream human;
  human << "bench " << c.gen << " trials=" << c.trials << " seed=" << c.seed << " r=" << c.r
        << " p=" << c.p << "\n";

  double up_min = 0.0, up_max = 0.0, lo_min = 0.0, lo_max = 0.0;
  bool have_up = false, have_lo = false;
  std::size_t zero_rows = 0;

  for (std::size_t t = 0; t < c.trials; ++t) {
    std::uint64_t trial_seed = c.seed + t;
    Matrix a = generate(c.gen, trial_seed);
    ordered_json row;
    row["trial"] = t;
    row["seed"] = trial_seed;
    row["matrix"] = to_json(describe(a));
    if (a.is_zero()) {
      row["sigma_exact_zero"] = true;
      ++zero_rows;
      rows.push_back(row);
      human << "  trial " << t << ": all-zero matrix (sigma = 0)\n";
      continue;
    }
    OracleResult oracle = reference_sigma(a);
    row["sigma"] = oracle.sigma;
    row["oracle_converged"] = oracle.converged;

    ordered_json bounds = ordered_json::object();
    auto add = [&](const char* name, const BoundValue& b) {
      ordered_json bj = to_json(b);
      double ratio = oracle.sigma > 0.0 ? b.value / oracle.sigma : 0.0;
      bj["tightness"] = ratio;
      bounds[name] = bj;
      if (b.kind == BoundKind::upper) {
        up_min = have_up ? std::min(up_min, ratio) : ratio;
        up_max = have_up ? std::max(up_max, ratio) : ratio;
        have_up = true;
      } else if (b.kind == BoundKind::lower) {
        lo_min = have_lo ? std::min(lo_min, ratio) : ratio;
        lo_max = have_lo ? std::max(lo_max, ratio) : ratio;
        have_lo = true;
      }
    };
    add("schur", schur_bound(a));
    add("refined", refined_bound(a));
    add("support", support_bound(a));
    add("walk_upper", walk_upper_bound(a, c.r, c.p));
    try {
      add("walk_lower", walk_lower_bound(a, c.r, c.p));
    } catch (const TheoremInapplicableError& e) {
      bounds["walk_lower"] =
          ordered_json{{"error", "theorem-inapplicable"}, {"detail", e.what()}};
    }
    row["bounds"] = bounds;
    rows.push_back(row);
    human << "  trial " << t << ": sigma " << fmt(oracle.sigma) << ", walk_upper/sigma "
          << fmt(bounds["walk_upper"]["tightness"].get<double>());
    if (bounds["walk_lower"].contains("tightness")) {
      human << ", walk_lower/sigma " << fmt(bounds["walk_lower"]["tightness"].get<double>());
    }
    human << "\n";
  }

  ordered_json summary;
  summary["zero_matrix_trials"] = zero_rows;
  if (have_up) {
    summary["upper_tightness_min"] = up_min;
    summary["upper_tightness_max"] = up_max;
  }
  if (have_lo) {
    summary["lower_tightness_min"] = lo_min;
    summary["lower_tightness_max"] = lo_max;
  }
  if (have_up) {
    human << "  upper tightness in [" << fmt(up_min) << ", " << fmt(up_max) << "]\n";
  }
  if (have_lo) {
    human << "  lower tightness in [" << fmt(lo_min) << ", " << fmt(lo_max) << "]\n";
  }

  ordered_json doc;
  doc["command"] = "bench";
  doc["config"] = ordered_json{
      {"gen", c.gen}, {"trials", c.trials}, {"seed", c.seed}, {"r", c.r}, {"p", c.p}};
  doc["rows"] = rows;
  doc["summary"] = summary;
  doc["timings_ms"] = ordered_json{{"total", total.ms()}};
  emit(doc, human.str(), c, out);
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"certified upper and lower bounds on the largest singular value"};
  app.require_subcommand(1);

  Config c;
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"human", "json-like"}));
  };
  auto add_rp = [&](CLI::App* cmd) {
    cmd->add_option("--r", c.r, "walk depth r (default 0)");
    cmd->add_option("--p", c.p, "walk power p (default 1)")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  };

  CLI::App* cmd_bounds = app.add_subcommand("bounds", "row/column-sum and walk-ratio bounds");
  cmd_bounds->add_option("file", c.file, "Matrix Market input")->required();
  add_rp(cmd_bounds);
  cmd_bounds->add_flag("--no-oracle", c.no_oracle, "skip the reference oracle");
  add_format(cmd_bounds);

  CLI::App* cmd_estimate = app.add_subcommand("estimate", "convergent sandwich estimate");
  cmd_estimate->add_option("file", c.file, "Matrix Market input")->required();
  cmd_estimate->add_option("--p", c.p, "walk power p (default 1)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  cmd_estimate->add_option("--tol", c.tol, "relative gap tolerance (default 1e-9)")
      ->check(CLI::PositiveNumber);
  cmd_estimate->add_option("--r-max", c.r_max, "maximum walk depth (default 1000)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  add_format(cmd_estimate);

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "power-iteration reference sigma");
  cmd_oracle->add_option("file", c.file, "Matrix Market input")->required();
  add_format(cmd_oracle);

  CLI::App* cmd_blocks = app.add_subcommand("blocks", "block-partition compression bounds");
  cmd_blocks->add_option("file", c.file, "Matrix Market input")->required();
  cmd_blocks->add_option("--row-parts", c.row_parts, "contiguous row part sizes, e.g. 2,2");
  cmd_blocks->add_option("--col-parts", c.col_parts, "contiguous column part sizes");
  add_format(cmd_blocks);

  CLI::App* cmd_bench = app.add_subcommand("bench", "seeded generator sweep with tightness");
  cmd_bench->add_option("--gen", c.gen, "generator spec, e.g. uniform-nonneg(8,8,0.5)")
      ->required();
  cmd_bench->add_option("--trials", c.trials, "trial count (default 10)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  cmd_bench->add_option("--seed", c.seed, "base seed (default 1)");
  add_rp(cmd_bench);
  add_format(cmd_bench);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (cmd_bounds->parsed()) return run_bounds(c, out, err);
    if (cmd_estimate->parsed()) return run_estimate(c, out, err);
    if (cmd_oracle->parsed()) return run_oracle(c, out, err);
    if (cmd_blocks->parsed()) return run_blocks(c, out, err);
    if (cmd_bench->parsed()) return run_bench(c, out, err);
    err << "no command selected\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const TheoremInapplicableError& e) {
    err << "inapplicable: " << e.what() << "\n";
    return exit_inapplicable;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const PartitionError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace sigb
