#include "sigb/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>

namespace sigb {

MatrixDescriptor describe(const Matrix& a) {
  MatrixDescriptor d;
  d.rows = a.rows();
  d.cols = a.cols();
  d.nnz = a.nonzero_count();
  d.mode = a.is_complex() ? "complex" : "real";
  d.storage = a.is_sparse() ? "sparse" : "dense";
  return d;
}

void BoundReport::validate() const {
  for (const NamedBound& lo : bounds) {
    if (lo.bound.kind != BoundKind::lower || !lo.bound.certified) continue;
    for (const NamedBound& hi : bounds) {
      if (hi.bound.kind != BoundKind::upper || !hi.bound.certified) continue;
      double slack = 1e-8 * std::max(1.0, hi.bound.value);
      if (lo.bound.value > hi.bound.value + slack) {
        throw Error("bound report inconsistent: lower '" + lo.name + "' = " +
                    std::to_string(lo.bound.value) + " exceeds upper '" + hi.name + "' = " +
                    std::to_string(hi.bound.value));
      }
    }
  }
}

BoundReport standard_report(const Matrix& a, std::size_t r, std::size_t p, bool with_oracle) {
  BoundReport rep;
  rep.matrix = describe(a);
  if (a.is_zero()) {
    rep.sigma_exact_zero = true;
    return rep;
  }
  rep.bounds.push_back({"schur", schur_bound(a)});
  rep.bounds.push_back({"refined", refined_bound(a)});
  rep.bounds.push_back({"support", support_bound(a)});
  rep.bounds.push_back({"walk_upper", walk_upper_bound(a, r, p)});
  try {
    rep.bounds.push_back({"walk_lower", walk_lower_bound(a, r, p)});
  } catch (const TheoremInapplicableError& e) {
    rep.lower_bound_error = e.what();
  }
  if (with_oracle) rep.oracle = reference_sigma(a);
  rep.validate();
  return rep;
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::upper: return "upper";
    case BoundKind::lower: return "lower";
    case BoundKind::estimate: return "estimate";
  }
  return "unknown";
}

ordered_json to_json(const MatrixDescriptor& d) {
  return ordered_json{{"rows", d.rows},
                      {"cols", d.cols},
                      {"nnz", d.nnz},
                      {"mode", d.mode},
                      {"storage", d.storage}};
}

ordered_json to_json(const BoundValue& b) {
  return ordered_json{{"kind", to_string(b.kind)}, {"value", b.value},
                      {"raw_2p_value", b.raw_2p_value}, {"r", b.r},
                      {"p", b.p},                      {"certified", b.certified}};
}

ordered_json to_json(const OracleResult& r) {
  return ordered_json{{"sigma", r.sigma},
                      {"sigma_squared", r.sigma * r.sigma},
                      {"iterations", r.iterations},
                      {"residual", r.residual},
                      {"converged", r.converged},
                      {"restarts_used", r.restarts_used}};
}

ordered_json to_json(const BoundReport& rep) {
  ordered_json j;
  j["matrix"] = to_json(rep.matrix);
  j["sigma_exact_zero"] = rep.sigma_exact_zero;
  if (rep.sigma_exact_zero) {
    j["sigma"] = 0.0;
    return j;
  }
  ordered_json bounds = ordered_json::object();
  for (const NamedBound& nb : rep.bounds) bounds[nb.name] = to_json(nb.bound);
  if (rep.lower_bound_error) {
    bounds["walk_lower"] =
        ordered_json{{"error", "theorem-inapplicable"}, {"detail", *rep.lower_bound_error}};
  }
  j["bounds"] = bounds;
  if (rep.oracle) j["oracle"] = to_json(*rep.oracle);
  return j;
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

}  // namespace

std::string human_text(const BoundReport& rep) {
  std::ostringstream out;
  out << "matrix: " << rep.matrix.rows << " x " << rep.matrix.cols << ", nnz " << rep.matrix.nnz
      << ", " << rep.matrix.mode << ", " << rep.matrix.storage << "\n";
  if (rep.sigma_exact_zero) {
    out << "all entries are zero: sigma = 0 exactly\n";
    return out.str();
  }
  out << "bounds on sigma (value = raw^(1/2p)):\n";
  for (const NamedBound& nb : rep.bounds) {
    const BoundValue& b = nb.bound;
    out << "  " << std::left << std::setw(12) << nb.name << std::right << to_string(b.kind)
        << "  value " << fmt(b.value) << "  raw " << fmt(b.raw_2p_value) << "  (r=" << b.r
        << ", p=" << b.p << (b.certified ? ", certified" : "") << ")\n";
  }
  if (rep.lower_bound_error) {
    out << "  walk_lower  inapplicable: " << *rep.lower_bound_error << "\n";
  }
  if (rep.oracle) {
    out << "oracle sigma " << fmt(rep.oracle->sigma) << " (sigma^2 "
        << fmt(rep.oracle->sigma * rep.oracle->sigma) << ", "
        << (rep.oracle->converged ? "converged" : "NOT converged") << ", residual "
        << fmt(rep.oracle->residual) << ", " << rep.oracle->iterations << " iterations)\n";
  }
  return out.str();
}

}  // namespace sigb
