#include "sigb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sigb {

namespace {

void require_nonzero(const Matrix& a) {
  if (a.is_zero()) {
    throw DegenerateInputError("all-zero matrix: sigma is exactly 0, no bound applies");
  }
}

void require_valid_power(std::size_t p) {
  if (p < 1) throw ValueError("power parameter p must be >= 1");
}

double root_2p(double raw, std::size_t p) {
  return std::pow(raw, 1.0 / (2.0 * static_cast<double>(p)));
}

BoundValue make_upper(double raw, std::size_t r, std::size_t p) {
  return {BoundKind::upper, root_2p(raw, p), raw, r, p, true};
}

// Degeneracy gate shared by the lower-bound paths: Sigma(AA*) below the
// noise floor of the margin computation means the walk totals carry no
// signal and the lower-bound inequality does not apply.
bool gram_sum_degenerate(const Matrix& a) {
  double fro = a.frobenius_norm();
  return entry_sum_gram(a) <= 1e-12 * fro * fro;
}

// max over k with den[k] > 0 of exp(dlog) * num[k] / den[k].
// Requires nonnegative levels (walks on |A|). Returns -1 if no index
// qualifies, i.e. the walk is dead at the denominator level.
double max_row_ratio(const WalkLevel& num, const WalkLevel& den) {
  double dlog = num.log_scale - den.log_scale;
  double best = -1.0;
  for (std::size_t k = 0; k < den.values.size(); ++k) {
    if (den.values[k] > 0.0) best = std::max(best, num.values[k] / den.values[k]);
  }
  return best < 0.0 ? -1.0 : std::exp(dlog) * best;
}

double total_ratio(const WalkLedger& ledger, std::size_t r, std::size_t p) {
  WalkTotal num = ledger.total(r + p);
  WalkTotal den = ledger.total(r);
  if (den.total_scaled <= 0.0 || num.total_scaled <= 0.0) {
    // Positive Sigma(AA*) forces every walk total positive; reaching this
    // state means the iteration lost the signal entirely.
    throw Error("walk total vanished at level " + std::to_string(r + p) +
                " despite Sigma(AA*) > 0");
  }
  return std::exp(num.log_scale - den.log_scale) * (num.total_scaled / den.total_scaled);
}

}  // namespace

BoundValue schur_bound(const Matrix& a) {
  require_nonzero(a);
  MarginSums ms = margin_sums(a);
  // All margins are nonnegative, so the max product factors.
  double max_r = *std::max_element(ms.row_sums.begin(), ms.row_sums.end());
  double max_c = *std::max_element(ms.col_sums.begin(), ms.col_sums.end());
  return make_upper(max_r * max_c, 0, 1);
}

BoundValue refined_bound(const Matrix& a) {
  require_nonzero(a);
  MarginSums ms = margin_sums(a);
  auto re = a.values_re();
  auto im = a.values_im();
  auto mod = [&](std::size_t k) {
    return a.is_complex() ? std::abs(cplx{re[k], im[k]}) : std::abs(re[k]);
  };
  double best = 0.0;
  if (a.is_sparse()) {
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double s = 0.0;
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += mod(k) * ms.col_sums[ci[k]];
      best = std::max(best, s);
    }
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < a.cols(); ++j) s += mod(i * a.cols() + j) * ms.col_sums[j];
      best = std::max(best, s);
    }
  }
  return make_upper(best, 0, 1);
}

BoundValue support_bound(const Matrix& a) {
  require_nonzero(a);
  MarginSums ms = margin_sums(a);
  auto re = a.values_re();
  auto im = a.values_im();
  double best = 0.0;
  if (a.is_sparse()) {
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
        best = std::max(best, ms.row_sums[i] * ms.col_sums[ci[k]]);
      }
    }
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        std::size_t k = i * a.cols() + j;
        bool nonzero = re[k] != 0.0 || (a.is_complex() && im[k] != 0.0);
        if (nonzero) best = std::max(best, ms.row_sums[i] * ms.col_sums[j]);
      }
    }
  }
  return make_upper(best, 0, 1);
}

BoundValue walk_upper_bound(const Matrix& a, std::size_t r, std::size_t p) {
  require_valid_power(p);
  require_nonzero(a);
  WalkLedger ledger(modulus_matrix(a));
  ledger.extend_to(r + p);
  double raw = max_row_ratio(ledger.row_values(r + p), ledger.row_values(r));
  if (raw < 0.0) {
    throw DegenerateInputError("every walk row value is zero at level " + std::to_string(r) +
                               "; no ratio is defined");
  }
  return make_upper(raw, r, p);
}

BoundValue walk_lower_bound(const Matrix& a, std::size_t r, std::size_t p) {
  require_valid_power(p);
  if (gram_sum_degenerate(a)) {
    throw TheoremInapplicableError(
        "Sigma(AA*) = 0: the all-ones vector is a null vector of the Gram matrix, all walk "
        "totals vanish, and the walk-ratio lower bound does not apply");
  }
  WalkLedger ledger(a);
  ledger.extend_to(r + p);
  double raw = total_ratio(ledger, r, p);
  return {BoundKind::lower, root_2p(raw, p), raw, r, p, true};
}

DegeneracyReport degeneracy_check(const Matrix& a) {
  DegeneracyReport rep;
  double fro = a.frobenius_norm();
  rep.w1_zero = entry_sum_gram(a) <= 1e-12 * fro * fro;
  double s = 0.0;
  if (a.is_complex()) {
    std::vector<cplx> ones(a.rows(), cplx{1.0, 0.0});
    for (const cplx& v : gram_apply(a, std::span<const cplx>(ones))) {
      s += v.real() * v.real() + v.imag() * v.imag();
    }
  } else {
    std::vector<double> ones(a.rows(), 1.0);
    for (double v : gram_apply(a, std::span<const double>(ones))) s += v * v;
  }
  rep.gram_ones_residual = std::sqrt(s);
  return rep;
}

SandwichResult sandwich_estimate(const Matrix& a, std::size_t p, double rel_tol,
                                 std::size_t r_max) {
  require_valid_power(p);
  if (rel_tol <= 0.0) throw ValueError("rel_tol must be positive");
  if (gram_sum_degenerate(a)) {
    throw TheoremInapplicableError(
        "Sigma(AA*) = 0: walk totals vanish for every r, so the sandwich iteration has no "
        "lower sequence");
  }
  WalkLedger abs_ledger(modulus_matrix(a));
  WalkLedger sign_ledger(a);

  SandwichResult res;
  constexpr double tiny = std::numeric_limits<double>::min();
  for (std::size_t r = 0; r <= r_max; ++r) {
    abs_ledger.extend_to(r + p);
    sign_ledger.extend_to(r + p);
    double upper = max_row_ratio(abs_ledger.row_values(r + p), abs_ledger.row_values(r));
    if (upper < 0.0) {
      // |A| is nonzero here (Sigma(AA*) > 0 forces entries), so its walk
      // cannot die; treat as the same internal inconsistency as above.
      throw Error("modulus walk died at level " + std::to_string(r));
    }
    double lower = total_ratio(sign_ledger, r, p);
    res.upper_trace.push_back(upper);
    res.lower_trace.push_back(lower);
    res.r_stop = r;
    if ((upper - lower) / std::max(lower, tiny) < rel_tol) {
      res.converged = true;
      break;
    }
  }
  double raw = res.lower_trace.back();
  res.estimate = {BoundKind::estimate, root_2p(raw, p), raw, res.r_stop, p, false};
  return res;
}

}  // namespace sigb
