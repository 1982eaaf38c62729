// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Every numeric claim is checked against an independent oracle
// (power iteration / closed forms / exact integer arithmetic), never
// against the code path that produced it.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sigb/block.hpp"
#include "sigb/bounds.hpp"
#include "sigb/cli.hpp"
#include "sigb/errors.hpp"
#include "sigb/generate.hpp"
#include "sigb/matrix.hpp"
#include "sigb/matrix_market.hpp"
#include "sigb/oracle.hpp"
#include "sigb/rng.hpp"
#include "sigb/walk.hpp"
#include "support/reference.hpp"

using sigb::BlockPartition;
using sigb::Matrix;

namespace {

int g_failures = 0;

class Checker {
public:
  explicit Checker(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failed_;
      if (first_.empty()) first_ = what;
    }
  }

  void expect_close(double got, double want, double tol, const std::string& what) {
    expect(ref::rel_close(got, want, tol),
           what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
  }

  // Passes judgement and prints the one-line verdict.
  bool finish(double elapsed_s, double limit_s = 0.0) {
    bool ok = failed_ == 0;
    std::string timing;
    if (limit_s > 0.0) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2fs of %.0fs allowed", elapsed_s, limit_s);
      timing = buf;
      if (elapsed_s > limit_s) {
        ok = false;
        if (first_.empty()) first_ = "time limit exceeded (" + timing + ")";
      }
    } else {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2fs", elapsed_s);
      timing = buf;
    }
    std::cout << (ok ? "PASS" : "FAIL") << " " << name_ << " (" << checks_ << " checks, "
              << timing << ")";
    if (!ok) std::cout << " first failure: " << first_;
    std::cout << "\n";
    if (!ok) ++g_failures;
    return ok;
  }

private:
  std::string name_;
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Deterministic pool of mixed random matrices, regenerated identically for
// every criterion that shares it. Matrices that are all-zero or that sit in
// the degenerate Sigma(AA*) = 0 state are replaced deterministically so
// every pool member carries both upper and lower bounds.
std::vector<Matrix> mixed_pool(std::size_t count, std::size_t max_dim, std::uint64_t base_seed) {
  std::vector<Matrix> pool;
  pool.reserve(count);
  const char* kinds[] = {"uniform-nonneg", "signed", "complex"};
  for (std::size_t t = 0; t < count; ++t) {
    std::mt19937_64 driver(base_seed + t);
    std::size_t m = 1 + static_cast<std::size_t>(sigb::uniform01(driver) *
                                                 static_cast<double>(max_dim));
    std::size_t n = 1 + static_cast<std::size_t>(sigb::uniform01(driver) *
                                                 static_cast<double>(max_dim));
    m = std::min(m, max_dim);
    n = std::min(n, max_dim);
    double density = 0.1 + 0.9 * sigb::uniform01(driver);
    char spec[96];
    std::snprintf(spec, sizeof(spec), "%s(%zu,%zu,%.3f)", kinds[t % 3], m, n, density);
    for (std::uint64_t salt = 0; salt < 100; ++salt) {
      Matrix a = sigb::generate(spec, base_seed + t + 1000003 * salt);
      if (!a.is_zero() && !sigb::degeneracy_check(a).w1_zero) {
        pool.push_back(std::move(a));
        break;
      }
    }
  }
  return pool;
}

// ---------------------------------------------------------------- 1
void criterion_star_bounds() {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 1: star graphs give exact factor/sharpened/walk values");
  for (std::size_t n : {2u, 3u, 10u, 100u}) {
    Matrix star = sigb::make_star(n);
    double dn = static_cast<double>(n);
    std::string tag = "star n=" + std::to_string(n);
    c.expect_close(sigb::schur_bound(star).raw_2p_value, dn * dn, 1e-10, tag + " factor raw");
    c.expect_close(sigb::refined_bound(star).raw_2p_value, dn, 1e-10, tag + " sharpened raw");
    c.expect_close(sigb::walk_lower_bound(star, 0, 1).raw_2p_value, dn, 1e-10,
                   tag + " walk lower raw");
    double sigma = sigb::reference_sigma(star).sigma;
    c.expect_close(sigma * sigma, dn, 1e-10, tag + " oracle sigma^2");
  }
  c.finish(seconds_since(t0), 1.0);
}

// ---------------------------------------------------------------- 2
void criterion_walk_soundness(const std::vector<Matrix>& pool) {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 2: walk bounds sandwich sigma^(2p) on 500 random matrices");
  c.expect(pool.size() == 500, "pool holds 500 matrices");
  for (std::size_t t = 0; t < pool.size(); ++t) {
    const Matrix& a = pool[t];
    double sigma = sigb::reference_sigma(a).sigma;
    for (std::size_t r : {0u, 1u, 2u, 4u, 8u}) {
      for (std::size_t p : {1u, 2u, 3u}) {
        double target = std::pow(sigma, 2.0 * static_cast<double>(p));
        double slack = 1e-8 * std::max(1.0, target);
        double up = sigb::walk_upper_bound(a, r, p).raw_2p_value;
        double lo = sigb::walk_lower_bound(a, r, p).raw_2p_value;
        if (up < target - slack) {
          c.expect(false, "trial " + std::to_string(t) + " r=" + std::to_string(r) +
                              " p=" + std::to_string(p) + " upper " + std::to_string(up) +
                              " < sigma^2p " + std::to_string(target));
        } else if (lo > target + slack) {
          c.expect(false, "trial " + std::to_string(t) + " r=" + std::to_string(r) +
                              " p=" + std::to_string(p) + " lower " + std::to_string(lo) +
                              " > sigma^2p " + std::to_string(target));
        } else {
          c.expect(true, "");
        }
      }
    }
  }
  c.finish(seconds_since(t0), 60.0);
}

// ---------------------------------------------------------------- 3
void criterion_chain(const std::vector<Matrix>& pool) {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 3: sharpened <= support <= factor chain on the same pool");
  for (std::size_t t = 0; t < pool.size(); ++t) {
    const Matrix& a = pool[t];
    double refined = sigb::refined_bound(a).raw_2p_value;
    double support = sigb::support_bound(a).raw_2p_value;
    double schur = sigb::schur_bound(a).raw_2p_value;
    c.expect(refined <= support * (1 + 1e-12),
             "trial " + std::to_string(t) + ": sharpened > support");
    c.expect(support <= schur * (1 + 1e-12),
             "trial " + std::to_string(t) + ": support > factor bound");
    double w01 = sigb::walk_upper_bound(a, 0, 1).raw_2p_value;
    c.expect(ref::rel_close(w01, refined, 1e-12),
             "trial " + std::to_string(t) + ": walk (0,1) != sharpened bound");
  }
  c.finish(seconds_since(t0));
}

// ---------------------------------------------------------------- 4
void criterion_sandwich_convergence() {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 4: interleaved estimate converges on 100 positive matrices");
  for (std::size_t t = 0; t < 100; ++t) {
    std::mt19937_64 driver(0xC4000 + t);
    std::size_t m = 1 + static_cast<std::size_t>(sigb::uniform01(driver) * 20.0);
    std::size_t n = 1 + static_cast<std::size_t>(sigb::uniform01(driver) * 20.0);
    m = std::min<std::size_t>(m, 20);
    n = std::min<std::size_t>(n, 20);
    char spec[64];
    std::snprintf(spec, sizeof(spec), "uniform-nonneg(%zu,%zu,1.0)", m, n);
    Matrix a = sigb::generate(spec, 0xC4000 + t);
    sigb::SandwichResult sr = sigb::sandwich_estimate(a, 1, 1e-6, 500);
    c.expect(sr.converged, "trial " + std::to_string(t) + " did not converge");
    double sigma = sigb::reference_sigma(a).sigma;
    c.expect(ref::rel_close(sr.estimate.value, sigma, 1e-5),
             "trial " + std::to_string(t) + " estimate " + std::to_string(sr.estimate.value) +
                 " vs oracle " + std::to_string(sigma));
  }
  c.finish(seconds_since(t0), 30.0);
}

// ---------------------------------------------------------------- 5
void criterion_degenerate_detection() {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 5: cancelling row pairs are detected as having no walk mass");
  std::mt19937_64 gen(0xC5);
  for (std::size_t t = 0; t < 50; ++t) {
    // k pattern rows, each followed by its negation: column sums cancel
    // exactly in integer (and IEEE) arithmetic.
    std::size_t k = 1 + static_cast<std::size_t>(sigb::uniform01(gen) * 5.0);
    std::size_t n = 1 + static_cast<std::size_t>(sigb::uniform01(gen) * 6.0);
    k = std::min<std::size_t>(k, 5);
    n = std::min<std::size_t>(n, 6);
    std::size_t m = 2 * k;
    std::vector<long long> ints(m * n, 0);
    for (std::size_t row = 0; row < k; ++row) {
      bool nonzero = false;
      while (!nonzero) {
        for (std::size_t j = 0; j < n; ++j) {
          long long v = static_cast<long long>(sigb::uniform01(gen) * 3.0) - 1;
          ints[2 * row * n + j] = v;
          ints[(2 * row + 1) * n + j] = -v;
          nonzero = nonzero || v != 0;
        }
      }
    }
    std::vector<double> vals(ints.size());
    for (std::size_t i = 0; i < ints.size(); ++i) vals[i] = static_cast<double>(ints[i]);
    Matrix a = Matrix::dense(m, n, std::move(vals));
    std::string tag = "trial " + std::to_string(t);

    c.expect(sigb::entry_sum_gram(a) == 0.0, tag + ": entry sum of AA* not exactly 0");
    sigb::DegeneracyReport rep = sigb::degeneracy_check(a);
    c.expect(rep.w1_zero, tag + ": degeneracy not flagged");
    c.expect(rep.gram_ones_residual <= 1e-12,
             tag + ": ones-vector Gram residual " + std::to_string(rep.gram_ones_residual));

    ref::ExactWalks exact = ref::exact_integer_walks(ints, m, n, 5);
    for (std::size_t r = 1; r <= 5; ++r) {
      c.expect(exact.totals[r] == 0, tag + ": exact total at level " + std::to_string(r) +
                                         " is not zero");
    }

    bool threw = false;
    try {
      sigb::walk_lower_bound(a, 0, 1);
    } catch (const sigb::TheoremInapplicableError&) {
      threw = true;
    }
    c.expect(threw, tag + ": lower bound did not report inapplicability");
  }
  c.finish(seconds_since(t0));
}

// ---------------------------------------------------------------- 6
void criterion_block_bounds() {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 6: block compression bound chain on 200 random partitions");
  std::mt19937_64 partgen(0xC6);
  std::vector<Matrix> pool = mixed_pool(200, 24, 0xC6000);
  auto random_sizes = [&](std::size_t total) {
    std::vector<std::size_t> sizes;
    std::size_t left = total;
    while (left > 0) {
      std::size_t cap = std::min<std::size_t>(left, 6);
      std::size_t s =
          1 + static_cast<std::size_t>(sigb::uniform01(partgen) * static_cast<double>(cap));
      s = std::min(s, left);
      sizes.push_back(s);
      left -= s;
    }
    return sizes;
  };
  for (std::size_t t = 0; t < pool.size(); ++t) {
    const Matrix& a = pool[t];
    std::string tag = "trial " + std::to_string(t);
    double sigma_a = sigb::reference_sigma(a).sigma;

    BlockPartition part =
        BlockPartition::contiguous(random_sizes(a.rows()), random_sizes(a.cols()));
    double sigma_b = sigb::block_sigma_bound(a, part).value;
    sigb::CompressedBounds pb = sigb::block_entry_bounds(a, part);
    double mid = std::sqrt(pb.mid.raw_2p_value);
    double support = std::sqrt(pb.support.raw_2p_value);
    double slack = 1e-8;
    c.expect(sigma_a <= sigma_b * (1 + slack) + slack, tag + ": sigma(A) > sigma(B)");
    c.expect(sigma_b <= mid * (1 + slack) + slack, tag + ": sigma(B) > compressed mid");
    c.expect(mid <= support * (1 + slack) + slack, tag + ": compressed mid > support");

    double trivial =
        sigb::block_sigma_bound(a, BlockPartition::trivial(a.rows(), a.cols())).value;
    c.expect(ref::rel_close(trivial, sigma_a, 1e-10), tag + ": trivial partition off sigma");

    sigb::CompressedBounds fine =
        sigb::block_entry_bounds(a, BlockPartition::finest(a.rows(), a.cols()));
    Matrix mod = sigb::modulus_matrix(a);
    c.expect(ref::rel_close(fine.mid.raw_2p_value, sigb::refined_bound(mod).raw_2p_value, 1e-12),
             tag + ": finest mid != sharpened bound on |A|");
    c.expect(
        ref::rel_close(fine.support.raw_2p_value, sigb::support_bound(mod).raw_2p_value, 1e-12),
        tag + ": finest support != support bound on |A|");
  }
  c.finish(seconds_since(t0));
}

// ---------------------------------------------------------------- 7
void criterion_exact_walks() {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 7: walk ledger matches exact integer arithmetic");
  for (std::size_t t = 0; t < 200; ++t) {
    ref::IntMatrix im = ref::random_int_matrix(0xC7000 + t);
    ref::ExactWalks exact = ref::exact_integer_walks(im.entries, im.rows, im.cols, 6);
    sigb::WalkLedger ledger(im.matrix);
    ledger.extend_to(6);
    for (std::size_t r = 0; r <= 6; ++r) {
      sigb::WalkLevel level = ledger.row_values(r);
      double scale = std::exp(level.log_scale);
      for (std::size_t k = 0; k < im.rows; ++k) {
        double got = scale * level.values[k];
        double want = ref::to_double(exact.row_values[r][k]);
        // row values of signed matrices may be negative; totals never are
        c.expect(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)),
                 "trial " + std::to_string(t) + " level " + std::to_string(r) + " row " +
                     std::to_string(k) + ": " + std::to_string(got) + " vs exact " +
                     std::to_string(want));
      }
      double got_total = ledger.total(r).value();
      double want_total = ref::to_double(exact.totals[r]);
      c.expect(std::abs(got_total - want_total) <= 1e-9 * std::max(1.0, std::abs(want_total)),
               "trial " + std::to_string(t) + " total at level " + std::to_string(r));
    }
  }
  c.finish(seconds_since(t0));
}

// ---------------------------------------------------------------- 8
void criterion_ladder() {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 8: the 2x2 ladder example reproduces its exact values");
  Matrix a = ref::from_rows({{1, 2}, {3, 4}});
  double sigma2 = (30.0 + std::sqrt(884.0)) / 2.0;

  double schur = sigb::schur_bound(a).raw_2p_value;
  double refined = sigb::refined_bound(a).raw_2p_value;
  double wu11 = sigb::walk_upper_bound(a, 1, 1).raw_2p_value;
  double wl01 = sigb::walk_lower_bound(a, 0, 1).raw_2p_value;
  double wl11 = sigb::walk_lower_bound(a, 1, 1).raw_2p_value;
  double oracle2 = std::pow(sigb::reference_sigma(a).sigma, 2.0);

  c.expect_close(schur, 42.0, 1e-10, "factor raw");
  c.expect_close(refined, 36.0, 1e-10, "sharpened raw");
  c.expect_close(wu11, 1076.0 / 36.0, 1e-10, "walk upper (1,1) raw");
  c.expect_close(wl01, 26.0, 1e-10, "walk lower (0,1) raw");
  c.expect_close(wl11, 1552.0 / 52.0, 1e-10, "walk lower (1,1) raw");
  c.expect_close(oracle2, sigma2, 1e-10, "oracle sigma^2");

  c.expect(wl01 <= wl11 * (1 + 1e-12), "26 <= 1552/52 ordering");
  c.expect(wl11 <= oracle2 * (1 + 1e-12), "1552/52 <= sigma^2 ordering");
  c.expect(oracle2 <= wu11 * (1 + 1e-12), "sigma^2 <= 1076/36 ordering");
  c.expect(wu11 <= refined * (1 + 1e-12), "1076/36 <= 36 ordering");
  c.expect(refined <= schur * (1 + 1e-12), "36 <= 42 ordering");
  c.finish(seconds_since(t0));
}

// ---------------------------------------------------------------- 9
void criterion_io_determinism() {
  auto t0 = std::chrono::steady_clock::now();
  Checker c("criterion 9: file round trips and byte-reproducible reports");
  namespace fs = std::filesystem;
  std::size_t fixtures = 0;
  for (const auto& entry : fs::directory_iterator(FIXTURE_DIR)) {
    if (entry.path().extension() != ".mtx") continue;
    ++fixtures;
    Matrix a = sigb::parse_matrix_market(entry.path().string());
    std::ostringstream text;
    sigb::write_matrix_market(a, text);
    std::istringstream in(text.str());
    Matrix back = sigb::parse_matrix_market(in);
    c.expect(back == a, "round trip changed " + entry.path().filename().string());
  }
  c.expect(fixtures >= 14, "at least 14 fixture files present");

  std::string star = std::string(FIXTURE_DIR) + "/star4.mtx";
  std::string dense = std::string(FIXTURE_DIR) + "/dense22.mtx";
  std::vector<std::vector<std::string>> invocations = {
      {"bounds", star, "--r", "2", "--p", "2", "--format", "json-like"},
      {"bounds", dense, "--format", "json-like"},
      {"estimate", dense, "--tol", "1e-8", "--format", "json-like"},
      {"oracle", star, "--format", "json-like"},
      {"blocks", star, "--row-parts", "2,2", "--col-parts", "2,2", "--format", "json-like"},
      {"bench", "--gen", "signed(12,9,0.6)", "--trials", "6", "--seed", "3", "--format",
       "json-like"},
  };
  for (const auto& args : invocations) {
    std::ostringstream out1, err1, out2, err2;
    int code1 = sigb::run_cli(args, out1, err1);
    int code2 = sigb::run_cli(args, out2, err2);
    std::string tag = args[0];
    c.expect(code1 == code2, tag + ": exit codes differ between identical runs");
    nlohmann::ordered_json doc1 = nlohmann::ordered_json::parse(out1.str());
    nlohmann::ordered_json doc2 = nlohmann::ordered_json::parse(out2.str());
    doc1.erase("timings_ms");
    doc2.erase("timings_ms");
    c.expect(doc1.dump(2) == doc2.dump(2),
             tag + ": reports differ between identical runs (beyond timings)");
  }
  c.finish(seconds_since(t0));
}

}  // namespace

// Runs one criterion, converting an escaped exception into a FAIL line so
// the remaining criteria still report.
template <typename Fn>
void guarded(const char* name, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    std::cout << "FAIL " << name << " (uncaught exception: " << e.what() << ")\n";
    ++g_failures;
  }
}

int main() {
  std::cout << "acceptance: certified singular value bounds\n";
  guarded("criterion 1", [] { criterion_star_bounds(); });
  guarded("criteria 2+3", [] {
    std::vector<Matrix> pool = mixed_pool(500, 40, 0xC2000);
    criterion_walk_soundness(pool);
    criterion_chain(pool);
  });
  guarded("criterion 4", [] { criterion_sandwich_convergence(); });
  guarded("criterion 5", [] { criterion_degenerate_detection(); });
  guarded("criterion 6", [] { criterion_block_bounds(); });
  guarded("criterion 7", [] { criterion_exact_walks(); });
  guarded("criterion 8", [] { criterion_ladder(); });
  guarded("criterion 9", [] { criterion_io_determinism(); });
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
