#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sigb/matrix.hpp"

namespace sigb {

// Outcome of a reference sigma computation. residual is the relative
// Gram-eigenpair residual ||AA*v - lambda v|| / lambda at the returned
// estimate (absolute when sigma = 0); iterations counts all Gram applies
// across restarts. rayleigh_traces is filled only on request and holds
// one Rayleigh-quotient sequence per restart.
struct OracleResult {
  double sigma = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::size_t restarts_used = 0;
  std::vector<std::vector<double>> rayleigh_traces;
};

struct PowerOptions {
  double tol = 1e-12;
  std::size_t max_iter = 10000;
  std::size_t restarts = 5;
  std::uint64_t seed = 0x51u;
  bool record_traces = false;
};

// Power iteration on the Gram operator x -> A(A*x) from deterministic
// seeded start vectors, keeping the best Rayleigh quotient over all
// restarts. Never throws: non-convergence is reported in the flags.
OracleResult power_sigma(const Matrix& a, const PowerOptions& opt = {});

// Closed-form sigma from the characteristic polynomial of the smaller
// Gram matrix; requires min(rows, cols) <= 2, else a shape error.
double exact_small_sigma(const Matrix& a);

// The reference oracle used to verify every bound: power iteration, with
// the closed form replacing the iterated value when min(rows, cols) <= 2.
OracleResult reference_sigma(const Matrix& a, double tol = 1e-12, std::size_t max_iter = 10000,
                             std::size_t restarts = 5);

}  // namespace sigb
