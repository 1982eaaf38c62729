#pragma once

#include <cstddef>
#include <vector>

#include "sigb/bounds.hpp"
#include "sigb/matrix.hpp"
#include "sigb/oracle.hpp"

namespace sigb {

// Ordered set partitions of the row and column index ranges. Parts may be
// arbitrary index sets (not just contiguous runs); blocks are extracted in
// the listed order and reindexed densely.
struct BlockPartition {
  std::vector<std::vector<std::size_t>> row_parts;
  std::vector<std::vector<std::size_t>> col_parts;

  // Contiguous runs of the given sizes, e.g. {2, 2} x {3, 1}.
  static BlockPartition contiguous(const std::vector<std::size_t>& row_sizes,
                                   const std::vector<std::size_t>& col_sizes);
  // One part per side covering everything: B is 1x1 and equals sigma(A).
  static BlockPartition trivial(std::size_t rows, std::size_t cols);
  // Every index its own part: B is the modulus matrix |A|.
  static BlockPartition finest(std::size_t rows, std::size_t cols);

  // Throws PartitionError unless every part is non-empty and the parts
  // disjointly cover [0, rows) and [0, cols).
  void validate(std::size_t rows, std::size_t cols) const;
};

// B = (sigma(A_ij)): the per-block largest singular values, each computed
// by the reference oracle, assembled as a dense real nonnegative matrix.
struct CompressionMatrix {
  Matrix b;
  std::vector<OracleResult> block_oracles;  // row-major over blocks
};

CompressionMatrix compress(const Matrix& a, const BlockPartition& part);

// sigma(A) <= sigma(B): the compression bound.
BoundValue block_sigma_bound(const Matrix& a, const BlockPartition& part);

// The sharpened row/column-sum chain applied to B. Both values bound
// sigma(A)^2 and mid <= support always. An all-zero matrix yields exact
// zeros rather than an error.
struct CompressedBounds {
  BoundValue mid;
  BoundValue support;
};
CompressedBounds block_entry_bounds(const Matrix& a, const BlockPartition& part);

}  // namespace sigb
