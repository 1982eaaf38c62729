#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sigb/bounds.hpp"
#include "sigb/matrix.hpp"
#include "sigb/oracle.hpp"

namespace sigb {

using ordered_json = nlohmann::ordered_json;

struct MatrixDescriptor {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nnz = 0;
  std::string mode;     // "real" | "complex"
  std::string storage;  // "sparse" | "dense"
};

MatrixDescriptor describe(const Matrix& a);

struct NamedBound {
  std::string name;
  BoundValue bound;
};

// The assembled result set for one matrix. When the matrix is all-zero,
// sigma is exactly 0 and no bounds are computed (sigma_exact_zero set).
// lower_bound_error carries the walk-lower inapplicability note when
// Sigma(AA*) = 0 while the upper bounds remain valid.
struct BoundReport {
  MatrixDescriptor matrix;
  bool sigma_exact_zero = false;
  std::vector<NamedBound> bounds;
  std::optional<OracleResult> oracle;
  std::optional<std::string> lower_bound_error;

  // Cross-checks that every certified lower bound sits below every
  // certified upper bound (1e-8 relative slack on the sigma scale);
  // a violation is an internal error, never silently reported.
  void validate() const;
};

// Computes the standard bound set (schur, refined, support, walk_upper,
// walk_lower at the given r, p) plus the oracle when requested.
BoundReport standard_report(const Matrix& a, std::size_t r, std::size_t p, bool with_oracle);

const char* to_string(BoundKind kind);

ordered_json to_json(const MatrixDescriptor& d);
ordered_json to_json(const BoundValue& b);
ordered_json to_json(const OracleResult& r);
ordered_json to_json(const BoundReport& rep);

std::string human_text(const BoundReport& rep);

}  // namespace sigb
