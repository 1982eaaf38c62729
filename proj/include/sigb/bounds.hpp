#pragma once

#include <cstddef>
#include <vector>

#include "sigb/matrix.hpp"
#include "sigb/walk.hpp"

namespace sigb {

enum class BoundKind { upper, lower, estimate };

// One scalar bound. raw_2p_value bounds sigma^(2p); value is its 2p-th
// root, a bound on sigma itself, so results with different (r, p) compare
// on a common scale. certified is true only for values backed by a proved
// inequality; the sandwich estimate carries certified = false even though
// its value coincides with a certified lower bound (exposed separately).
struct BoundValue {
  BoundKind kind = BoundKind::upper;
  double value = 0.0;
  double raw_2p_value = 0.0;
  std::size_t r = 0;
  std::size_t p = 1;
  bool certified = false;
};

// sigma^2 <= (max row sum) * (max column sum) of |A|.
BoundValue schur_bound(const Matrix& a);

// sigma^2 <= max_i sum_j |a_ij| c_j, the sharpened row/column-sum bound.
BoundValue refined_bound(const Matrix& a);

// sigma^2 <= max over nonzero entries a_ij of r_i c_j.
BoundValue support_bound(const Matrix& a);

// sigma^(2p) <= max over k with w^r(k) > 0 of w^(r+p)(k) / w^r(k), the
// walk quantities taken on |A|. Ratios are evaluated in log-scale form.
BoundValue walk_upper_bound(const Matrix& a, std::size_t r, std::size_t p);

// sigma^(2p) >= w^(r+p) / w^r, the walk totals taken on A itself.
// Inapplicable (distinct error) when Sigma(AA*) = 0.
BoundValue walk_lower_bound(const Matrix& a, std::size_t r, std::size_t p);

// Detects the degenerate state Sigma(AA*) = 0, in which the all-ones
// vector is a null vector of the Gram matrix and every walk total
// vanishes. w1_zero uses the absolute tolerance 1e-12 * ||A||_F^2;
// gram_ones_residual is ||A(A* ones)||_2 and is ~0 whenever w1_zero.
struct DegeneracyReport {
  bool w1_zero = false;
  double gram_ones_residual = 0.0;
};
DegeneracyReport degeneracy_check(const Matrix& a);

// Interleaved walk-ratio bounds: uppers from |A| row ratios, lowers from
// A's total ratios, iterated in r until the relative gap closes or r_max
// is reached. The common limit is sigma^(2p) whenever the dominant
// eigenspace of AA* is not orthogonal to the all-ones vector; for signed
// or complex matrices the uppers may instead converge to sigma(|A|)^(2p),
// which the converged flag reports honestly.
struct SandwichResult {
  BoundValue estimate;              // kind = estimate; value = lower at stop
  std::vector<double> upper_trace;  // raw sigma^(2p) upper per r = 0..r_stop
  std::vector<double> lower_trace;  // raw sigma^(2p) lower per r = 0..r_stop
  bool converged = false;
  std::size_t r_stop = 0;
};
SandwichResult sandwich_estimate(const Matrix& a, std::size_t p = 1, double rel_tol = 1e-9,
                                 std::size_t r_max = 1000);

}  // namespace sigb
