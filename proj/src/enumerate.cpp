#include "carpet/enumerate.hpp"

#include <algorithm>
#include <cmath>

#include "norm_solver.hpp"

namespace carpet {

namespace {

void validate(EnumRequest const& req) {
  if (!(req.d < 0)) {
    throw InvalidArgument("target norm d must be negative");
  }
  if (req.coord_bound < 1) {
    throw InvalidArgument("coord_bound must be >= 1");
  }
  if (req.min_disc_radius && !(*req.min_disc_radius >= 0)) {
    throw InvalidArgument("min_disc_radius must be non-negative");
  }
}

bool canonical_sign(std::vector<std::int64_t> const& c) {
  for (auto x : c) {
    if (x != 0) return x > 0;
  }
  return false;
}

}  // namespace

WallSet enumerate(EnumRequest const& req, MinkowskiFrame const& frame) {
  validate(req);
  if (!(frame.lattice() == req.lattice)) {
    throw FrameMismatch("frame was built from a different lattice");
  }
  auto const raw = detail::solve_norm_in_box(req.lattice, req.d,
                                             req.coord_bound, req.threads);
  double const root_d = std::sqrt(std::abs(req.d.convert_to<double>()));

  struct Keyed {
    double gap;  // |x₁ − x₀|
    LatticeVector v;
  };
  std::vector<Keyed> oriented;
  WallSet walls;
  walls.coord_bound = req.coord_bound;
  for (auto const& c : raw) {
    auto v = req.lattice.vector(std::vector<Integer>(c.begin(), c.end()));
    if (!v.primitive()) continue;
    MinkowskiVector const x = frame.to_minkowski(v);
    if (std::abs(x[0]) <= 1e-9 * std::max(1.0, x.max_abs())) {
      if (canonical_sign(c)) walls.through_origin.push_back(std::move(v));
      continue;
    }
    if (x[0] < 0) continue;
    double const gap = std::abs(x[1] - x[0]);
    if (req.min_disc_radius && *req.min_disc_radius > 0 &&
        root_d < *req.min_disc_radius * gap) {
      walls.pruned = true;
      continue;
    }
    oriented.push_back({gap, std::move(v)});
  }
  std::sort(oriented.begin(), oriented.end(),
            [](Keyed const& a, Keyed const& b) {
              if (a.gap != b.gap) return a.gap < b.gap;
              return a.v < b.v;
            });
  walls.vectors.reserve(oriented.size());
  for (auto& k : oriented) walls.vectors.push_back(std::move(k.v));
  std::sort(walls.through_origin.begin(), walls.through_origin.end());
  return walls;
}

std::int64_t completeness_bound(EnumRequest const& req,
                                MinkowskiFrame const& frame,
                                double min_radius) {
  validate(req);
  if (!(min_radius > 0)) {
    throw InvalidArgument("min_radius must be positive");
  }
  double const gain = frame.coordinate_gain();
  if (!std::isfinite(gain) || gain <= 0) {
    throw InvalidArgument("degenerate frame");
  }
  double const root_d = std::sqrt(std::abs(req.d.convert_to<double>()));
  double const extent = root_d * (1.0 / min_radius + 2.0);
  return std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(gain * extent)));
}

bool meets_unit_disc(DiscRegion const& region) {
  switch (region.kind) {
    case RegionKind::kInteriorDisc:
      return std::hypot(region.center[0], region.center[1]) - region.radius < 1;
    case RegionKind::kExteriorHole:
      return std::hypot(region.center[0], region.center[1]) + 1 > region.radius;
    case RegionKind::kHalfPlane:
      return std::hypot(region.normal[0], region.normal[1]) > region.offset;
  }
  return false;
}

}  // namespace carpet
