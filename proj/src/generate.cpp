#include "sigb/generate.hpp"

#include <charconv>
#include <random>
#include <vector>

#include "sigb/rng.hpp"

namespace sigb {

namespace {

struct GenSpec {
  std::string name;
  std::vector<double> args;
};

GenSpec parse_spec(const std::string& spec) {
  std::size_t open = spec.find('(');
  if (open == std::string::npos || spec.empty() || spec.back() != ')') {
    throw ConfigError("generator spec must look like name(arg, ...), got '" + spec + "'");
  }
  GenSpec g;
  g.name = spec.substr(0, open);
  std::string inner = spec.substr(open + 1, spec.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= inner.size() && !inner.empty()) {
    std::size_t comma = inner.find(',', pos);
    std::size_t end = comma == std::string::npos ? inner.size() : comma;
    std::size_t a = inner.find_first_not_of(" \t", pos);
    std::size_t b = inner.find_last_not_of(" \t", end == 0 ? 0 : end - 1);
    if (a == std::string::npos || a >= end) {
      throw ConfigError("empty argument in generator spec '" + spec + "'");
    }
    std::string tok = inner.substr(a, b - a + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ConfigError("non-numeric argument '" + tok + "' in generator spec");
    }
    g.args.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return g;
}

std::size_t arg_dim(const GenSpec& g, std::size_t idx, const char* what) {
  double v = g.args[idx];
  if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ConfigError(std::string(what) + " must be a positive integer in '" + g.name + "'");
  }
  return static_cast<std::size_t>(v);
}

double arg_prob(const GenSpec& g, std::size_t idx, const char* what) {
  double v = g.args[idx];
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError(std::string(what) + " must lie in [0, 1] in '" + g.name + "'");
  }
  return v;
}

void require_args(const GenSpec& g, std::size_t count) {
  if (g.args.size() != count) {
    throw ConfigError("generator '" + g.name + "' takes " + std::to_string(count) +
                      " arguments, got " + std::to_string(g.args.size()));
  }
}

// Row-major presence sweep; a value draw happens only for kept entries,
// so the stream consumption is part of the determinism contract.
Matrix dense_random(std::size_t m, std::size_t n, double density, std::mt19937_64& gen,
                    bool signed_entries, bool complex_entries) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (uniform01(gen) >= density) continue;
      if (complex_entries) {
        double re = 2.0 * uniform01(gen) - 1.0;
        double im = 2.0 * uniform01(gen) - 1.0;
        entries.push_back({i, j, {re, im}});
      } else if (signed_entries) {
        entries.push_back({i, j, {2.0 * uniform01(gen) - 1.0, 0.0}});
      } else {
        entries.push_back({i, j, {uniform01(gen), 0.0}});
      }
    }
  }
  return complex_entries ? Matrix::sparse_complex(m, n, std::move(entries))
                         : Matrix::sparse_real(m, n, std::move(entries));
}

}  // namespace

Matrix make_star(std::size_t n) {
  if (n < 1) throw ConfigError("star(n) needs n >= 1");
  std::vector<Entry> entries;
  entries.reserve(2 * n);
  for (std::size_t leaf = 1; leaf <= n; ++leaf) {
    entries.push_back({0, leaf, {1.0, 0.0}});
    entries.push_back({leaf, 0, {1.0, 0.0}});
  }
  return Matrix::sparse_real(n + 1, n + 1, std::move(entries));
}

Matrix make_path(std::size_t n) {
  if (n < 1) throw ConfigError("path(n) needs n >= 1");
  std::vector<Entry> entries;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    entries.push_back({k, k + 1, {1.0, 0.0}});
    entries.push_back({k + 1, k, {1.0, 0.0}});
  }
  return Matrix::sparse_real(n, n, std::move(entries));
}

Matrix generate(const std::string& spec, std::uint64_t seed) {
  GenSpec g = parse_spec(spec);
  std::mt19937_64 gen(seed);
  if (g.name == "uniform-nonneg" || g.name == "signed" || g.name == "complex") {
    require_args(g, 3);
    std::size_t m = arg_dim(g, 0, "row count");
    std::size_t n = arg_dim(g, 1, "column count");
    double density = arg_prob(g, 2, "density");
    return dense_random(m, n, density, gen, g.name == "signed", g.name == "complex");
  }
  if (g.name == "star") {
    require_args(g, 1);
    return make_star(arg_dim(g, 0, "leaf count"));
  }
  if (g.name == "path") {
    require_args(g, 1);
    return make_path(arg_dim(g, 0, "vertex count"));
  }
  if (g.name == "random-bipartite") {
    require_args(g, 3);
    std::size_t m = arg_dim(g, 0, "left side size");
    std::size_t n = arg_dim(g, 1, "right side size");
    double prob = arg_prob(g, 2, "edge probability");
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (uniform01(gen) < prob) {
          entries.push_back({i, m + j, {1.0, 0.0}});
          entries.push_back({m + j, i, {1.0, 0.0}});
        }
      }
    }
    return Matrix::sparse_real(m + n, m + n, std::move(entries));
  }
  throw ConfigError("unknown generator '" + g.name + "'");
}

}  // namespace sigb
