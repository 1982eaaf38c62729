#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "sigb/matrix.hpp"

namespace sigb {

// Star graph K(1, n): (n+1) x (n+1) adjacency with vertex 0 as the center.
Matrix make_star(std::size_t n);

// Path graph on n vertices: n x n adjacency with edges (k, k+1).
Matrix make_path(std::size_t n);

// Deterministic matrix from a generator spec and seed. Specs:
//   uniform-nonneg(m,n,density)   entries in [0,1), kept with prob density
//   signed(m,n,density)           entries in [-1,1)
//   complex(m,n,density)          re and im each in [-1,1)
//   star(n)                       K(1,n) adjacency, (n+1) x (n+1)
//   path(n)                       path adjacency, n x n
//   random-bipartite(m,n,prob)    symmetric 0/1 adjacency, (m+n) x (m+n),
//                                 each cross edge present with prob
// The same (spec, seed) pair always yields the same matrix. A malformed
// spec raises ConfigError.
Matrix generate(const std::string& spec, std::uint64_t seed);

}  // namespace sigb
