#include "sigb/walk.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace sigb {

double WalkTotal::value() const { return std::exp(log_scale) * total_scaled; }

WalkState walk_init(const Matrix& a) {
  WalkState s;
  s.v_re.assign(a.rows(), 1.0);
  if (a.is_complex()) s.v_im.assign(a.rows(), 0.0);
  return s;
}

WalkState walk_step(const Matrix& a, const WalkState& s) {
  WalkState t;
  t.r = s.r + 1;
  t.log_scale = s.log_scale;
  t.dead = s.dead;
  if (a.is_complex()) {
    std::vector<cplx> x(s.v_re.size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = {s.v_re[k], s.v_im[k]};
    std::vector<cplx> y = gram_apply(a, std::span<const cplx>(x));
    double mx = 0.0;
    for (const cplx& c : y) mx = std::max(mx, std::abs(c));
    t.v_re.resize(y.size());
    t.v_im.resize(y.size());
    if (mx > 0.0) {
      for (std::size_t k = 0; k < y.size(); ++k) {
        t.v_re[k] = y[k].real() / mx;
        t.v_im[k] = y[k].imag() / mx;
      }
      t.log_scale += std::log(mx);
    } else {
      t.dead = true;
    }
  } else {
    std::vector<double> y = gram_apply(a, std::span<const double>(s.v_re));
    double mx = 0.0;
    for (double d : y) mx = std::max(mx, std::abs(d));
    if (mx > 0.0) {
      for (double& d : y) d /= mx;
      t.log_scale += std::log(mx);
    } else {
      t.dead = true;
    }
    t.v_re = std::move(y);
  }
  return t;
}

WalkLedger::WalkLedger(Matrix a) : a_(std::move(a)) {
  states_.push_back(walk_init(a_));
  totals_.push_back({static_cast<double>(a_.rows()), 0.0});
}

const WalkState& WalkLedger::state_at(std::size_t r) const {
  if (r >= states_.size()) {
    throw OutOfRangeError("walk level " + std::to_string(r) + " not recorded (depth " +
                          std::to_string(depth()) + ")");
  }
  return states_[r];
}

void WalkLedger::extend_to(std::size_t r) {
  while (depth() < r) {
    states_.push_back(walk_step(a_, states_.back()));
    const WalkState& s = states_.back();
    double t = 0.0;
    for (double d : s.v_re) t += d;
    totals_.push_back({t, s.log_scale});
  }
}

WalkLevel WalkLedger::row_values(std::size_t r) const {
  const WalkState& s = state_at(r);
  return {s.v_re, s.log_scale};
}

WalkTotal WalkLedger::total(std::size_t r) const {
  state_at(r);  // range check; totals_ moves in lockstep with states_
  return totals_[r];
}

bool WalkLedger::dead_at(std::size_t r) const { return state_at(r).dead; }

}  // namespace sigb
