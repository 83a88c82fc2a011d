#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "carpet/chamber.hpp"
#include "carpet/lattice.hpp"
#include "carpet/projection.hpp"

namespace carpet::testing {

// Small seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1));
  }
  std::vector<Integer> coords(std::size_t r, std::int64_t bound);
  // Random symmetric integer matrix.
  GramLattice symmetric(std::size_t r, std::int64_t bound);

 private:
  std::mt19937_64 rng_;
};

struct Golden {
  std::string name;
  GramLattice lattice;
  Integer d;
  std::int64_t bound;
};

// The seven illustration lattices with their wall norms and default bounds.
std::vector<Golden> golden_lattices();

GramLattice example0();  // J − 2I
GramLattice example1();
GramLattice example4();  // diag(3, −1, −63, −63)

// Direct quadruple loop over the box in int64: primitive solutions of
// q(c) = n with the first non-zero coordinate positive, sorted.
std::vector<std::vector<std::int64_t>> box_solutions(GramLattice const& lattice,
                                                     std::int64_t n,
                                                     std::int64_t bound);

// d_k = g_k / g_{k−1} with g_k the gcd of all k×k minors; zero-padded.
std::vector<Integer> minors_invariants(std::vector<std::vector<Integer>> const& m);

// Signature from a floating Jacobi eigen-decomposition, with the number of
// zero eigenvalues fixed by exact integer rank.
Signature float_signature(GramLattice const& lattice);

// Coverage of regions sampled at pixel centres of an n×n grid over a square
// window.
class PixelOracle {
 public:
  PixelOracle(std::size_t n, double lo, double hi, bool unit_disc_only);

  std::size_t size() const { return n_; }
  Vec2 point(std::size_t k) const;
  bool in_scope(std::size_t k) const;
  std::vector<std::uint64_t> mask(DiscRegion const& r) const;

  // Indices not pixel-contained in another region; equal masks keep the
  // lower index. Regions with empty masks are reported separately.
  std::vector<std::size_t> antichain(std::vector<DiscRegion> const& regions,
                                     std::vector<std::size_t>* empty = nullptr) const;

 private:
  std::size_t n_;
  double lo_, step_;
  bool disc_only_;
};

// Minimal rasterizer for the documents emitted by render_svg: fills of the
// first layer only (circle, even-odd hole path, polygon).
class SvgRaster {
 public:
  explicit SvgRaster(std::string const& svg);
  bool covered(Vec2 plane_point) const;
  std::size_t shape_count() const { return shapes_.size(); }

 private:
  struct Shape {
    int kind;  // 0 disc, 1 hole, 2 polygon
    double cx, cy, r;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Shape> shapes_;
};

// Walls at the lattice's own norm, with the frame built once.
struct Fixture {
  GramLattice lattice;
  MinkowskiFrame frame;
  WallSet walls;
};
Fixture make_fixture(GramLattice const& lattice, Integer const& d,
                     std::int64_t bound, unsigned threads = 0);

}  // namespace carpet::testing
