#include "sigb/block.hpp"

#include <numeric>
#include <string>
#include <utility>

namespace sigb {

namespace {

std::vector<std::vector<std::size_t>> contiguous_parts(const std::vector<std::size_t>& sizes) {
  std::vector<std::vector<std::size_t>> parts;
  std::size_t next = 0;
  for (std::size_t s : sizes) {
    std::vector<std::size_t> part(s);
    std::iota(part.begin(), part.end(), next);
    next += s;
    parts.push_back(std::move(part));
  }
  return parts;
}

void validate_side(const std::vector<std::vector<std::size_t>>& parts, std::size_t extent,
                   const char* side) {
  if (parts.empty()) throw PartitionError(std::string(side) + " partition has no parts");
  std::vector<bool> seen(extent, false);
  std::size_t covered = 0;
  for (const auto& part : parts) {
    if (part.empty()) throw PartitionError(std::string(side) + " partition has an empty part");
    for (std::size_t idx : part) {
      if (idx >= extent) {
        throw PartitionError(std::string(side) + " index " + std::to_string(idx) +
                             " outside range of size " + std::to_string(extent));
      }
      if (seen[idx]) {
        throw PartitionError(std::string(side) + " index " + std::to_string(idx) +
                             " appears in more than one part");
      }
      seen[idx] = true;
      ++covered;
    }
  }
  if (covered != extent) {
    throw PartitionError(std::string(side) + " partition covers " + std::to_string(covered) +
                         " of " + std::to_string(extent) + " indices");
  }
}

Matrix extract_block(const Matrix& a, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols) {
  if (a.is_complex()) {
    std::vector<cplx> v;
    v.reserve(rows.size() * cols.size());
    for (std::size_t i : rows) {
      for (std::size_t j : cols) v.push_back(a.at(i, j));
    }
    return Matrix::dense(rows.size(), cols.size(), std::move(v));
  }
  std::vector<double> v;
  v.reserve(rows.size() * cols.size());
  for (std::size_t i : rows) {
    for (std::size_t j : cols) v.push_back(a.at(i, j).real());
  }
  return Matrix::dense(rows.size(), cols.size(), std::move(v));
}

}  // namespace

BlockPartition BlockPartition::contiguous(const std::vector<std::size_t>& row_sizes,
                                          const std::vector<std::size_t>& col_sizes) {
  return {contiguous_parts(row_sizes), contiguous_parts(col_sizes)};
}

BlockPartition BlockPartition::trivial(std::size_t rows, std::size_t cols) {
  return contiguous({rows}, {cols});
}

BlockPartition BlockPartition::finest(std::size_t rows, std::size_t cols) {
  return contiguous(std::vector<std::size_t>(rows, 1), std::vector<std::size_t>(cols, 1));
}

void BlockPartition::validate(std::size_t rows, std::size_t cols) const {
  validate_side(row_parts, rows, "row");
  validate_side(col_parts, cols, "column");
}

CompressionMatrix compress(const Matrix& a, const BlockPartition& part) {
  part.validate(a.rows(), a.cols());
  std::size_t p = part.row_parts.size();
  std::size_t q = part.col_parts.size();
  std::vector<double> bvals(p * q, 0.0);
  std::vector<OracleResult> oracles(p * q);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      Matrix block = extract_block(a, part.row_parts[i], part.col_parts[j]);
      OracleResult r = reference_sigma(block);
      bvals[i * q + j] = r.sigma;
      oracles[i * q + j] = std::move(r);
    }
  }
  return {Matrix::dense(p, q, std::move(bvals)), std::move(oracles)};
}

BoundValue block_sigma_bound(const Matrix& a, const BlockPartition& part) {
  CompressionMatrix c = compress(a, part);
  OracleResult r = reference_sigma(c.b);
  return {BoundKind::upper, r.sigma, r.sigma * r.sigma, 0, 1, true};
}

CompressedBounds block_entry_bounds(const Matrix& a, const BlockPartition& part) {
  CompressionMatrix c = compress(a, part);
  if (c.b.is_zero()) {
    BoundValue zero{BoundKind::upper, 0.0, 0.0, 0, 1, true};
    return {zero, zero};
  }
  return {refined_bound(c.b), support_bound(c.b)};
}

}  // namespace sigb
