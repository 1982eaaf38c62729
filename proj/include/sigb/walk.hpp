#pragma once

#include <cstddef>
#include <vector>

#include "sigb/matrix.hpp"

namespace sigb {

// Scaled iterate of the Gram power recursion. In exact arithmetic
// exp(log_scale) * v reconstructs (AA*)^r applied to the all-ones vector,
// i.e. the r-level row sums w^r(k). The iterate is rebased by its max
// modulus after every step so the stored components stay O(1) even though
// the true values grow like sigma^(2r). Complex-mode matrices carry the
// full complex iterate in (v_re, v_im); read-outs collapse to the real
// components, whose sum equals the (mathematically real) total.
struct WalkState {
  std::size_t r = 0;
  std::vector<double> v_re;
  std::vector<double> v_im;  // empty for real-mode matrices
  double log_scale = 0.0;
  bool dead = false;  // iterate became exactly zero at some step <= r
};

// One recorded level as seen by bound computations.
struct WalkLevel {
  std::vector<double> values;  // scaled row values (real components)
  double log_scale = 0.0;
};

// One level's total sum; value() rebuilds the unscaled total and is only
// finite for shallow levels (tests, small cases).
struct WalkTotal {
  double total_scaled = 0.0;
  double log_scale = 0.0;
  double value() const;
};

// r = 0 state: v = ones, log_scale = 0.
WalkState walk_init(const Matrix& a);

// Advance one level: v' = A(A* v), then rebase by the max modulus when it
// is positive; a zero image marks the walk dead and leaves the scale alone.
WalkState walk_step(const Matrix& a, const WalkState& s);

// Records every level 0..depth() of the walk recursion for one matrix.
// Levels are computed once by extend_to and then served in O(1); asking
// for an unrecorded level is an error, not an implicit extension.
class WalkLedger {
public:
  explicit WalkLedger(Matrix a);

  const Matrix& matrix() const noexcept { return a_; }
  std::size_t depth() const noexcept { return states_.size() - 1; }

  void extend_to(std::size_t r);

  WalkLevel row_values(std::size_t r) const;
  WalkTotal total(std::size_t r) const;
  bool dead_at(std::size_t r) const;

private:
  const WalkState& state_at(std::size_t r) const;

  Matrix a_;
  std::vector<WalkState> states_;
  std::vector<WalkTotal> totals_;
};

}  // namespace sigb
