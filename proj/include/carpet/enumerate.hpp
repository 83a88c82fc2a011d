#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "carpet/lattice.hpp"
#include "carpet/projection.hpp"

namespace carpet {

struct EnumRequest {
  GramLattice lattice;
  Integer d;                  // target norm, < 0
  std::int64_t coord_bound;   // box |cᵢ| ≤ coord_bound, ≥ 1
  // Discs of smaller radius may be dropped from the result.
  std::optional<double> min_disc_radius;
  unsigned threads = 0;       // 0: hardware concurrency
};

// Primitive vectors of norm d, one per ±pair, oriented so that the Minkowski
// coordinate x₀ is positive. Vectors with x₀ = 0 (walls through the centre
// of the ball) have no orientation and are kept apart.
struct WallSet {
  std::vector<LatticeVector> vectors;
  std::vector<LatticeVector> through_origin;
  // True when min_disc_radius removed at least one vector.
  bool pruned = false;
  std::int64_t coord_bound = 0;
};

// Throws InvalidArgument for d ≥ 0 or coord_bound < 1 and FrameMismatch
// when the frame was built from another lattice. Output order: |x₁ − x₀|
// ascending, then lattice coordinates lexicographically.
WallSet enumerate(EnumRequest const& req, MinkowskiFrame const& frame);

// A coord_bound that captures every wall whose v-disc has radius at least
// `min_radius` and meets the closed unit disc.
//
// With s = x₁ − x₀ and t = x₀ + x₁ the norm equation reads
// x₂² + x₃² = s·t + |d|, and the radius is |d|^{1/2}/|s|:
//  * discs (s < 0) meeting the unit disc have |s| ≤ |d|^{1/2}/min_radius and
//    t ≤ |s| + 2|d|^{1/2};
//  * holes (s > 0) always have radius ≥ 1, and those not swallowing the
//    unit disc have t < 2|d|^{1/2};
//  * half-planes meeting the unit disc have t < 2|d|^{1/2}.
// So every relevant wall has max|xᵢ| ≤ |d|^{1/2}·(1/min_radius + 2), and a
// lattice coordinate is at most frame.coordinate_gain() times that. The
// bound is conservative; it ignores the arithmetic of the lattice.
std::int64_t completeness_bound(EnumRequest const& req,
                                MinkowskiFrame const& frame,
                                double min_radius);

// Whether a region intersects the closed unit disc.
bool meets_unit_disc(DiscRegion const& region);

}  // namespace carpet
