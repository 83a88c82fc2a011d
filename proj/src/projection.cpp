#include "carpet/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace carpet {

namespace {

using Matrix4 = std::array<std::array<double, 4>, 4>;

double to_double(Integer const& x) { return x.convert_to<double>(); }

struct EigenSystem {
  std::array<double, 4> values;
  Matrix4 vectors;  // vectors[j][i] = component j of eigenvector i
};

double off_diagonal(Matrix4 const& a) {
  double s = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) s += a[i][j] * a[i][j];
    }
  }
  return std::sqrt(s);
}

EigenSystem jacobi(Matrix4 a) {
  Matrix4 v{};
  for (std::size_t i = 0; i < 4; ++i) v[i][i] = 1;
  double scale = 0;
  for (auto const& row : a) {
    for (double x : row) scale += x * x;
  }
  scale = std::sqrt(scale);

  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal(a) <= 1e-18 * scale) break;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        if (a[p][q] == 0) continue;
        double const theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double const t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        double const c = 1 / std::sqrt(t * t + 1);
        double const s = t * c;
        for (std::size_t k = 0; k < 4; ++k) {
          double const akp = a[k][p];
          double const akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          double const apk = a[p][k];
          double const aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          double const vkp = v[k][p];
          double const vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  EigenSystem out;
  for (std::size_t i = 0; i < 4; ++i) out.values[i] = a[i][i];
  out.vectors = v;
  if (off_diagonal(a) > 1e-12 * scale) {
    throw ConvergenceFailure("Jacobi iteration did not converge");
  }
  return out;
}

Vec3 normalized(Vec3 const& a) {
  double const n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  return {a[0] / n, a[1] / n, a[2] / n};
}

}  // namespace

double MinkowskiVector::max_abs() const {
  double m = 0;
  for (double c : x) m = std::max(m, std::abs(c));
  return m;
}

double MinkowskiFrame::basis_pairing(std::size_t i, std::size_t j) const {
  double s = 0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      s += basis_[a][i] * to_double(lattice_(a, b)) * basis_[b][j];
    }
  }
  return s;
}

double MinkowskiFrame::basis_norm(std::size_t i) const {
  return basis_pairing(i, i);
}

double MinkowskiFrame::coordinate_gain() const {
  double gain = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    double row = 0;
    for (std::size_t i = 0; i < 4; ++i) row += std::abs(basis_[j][i]);
    gain = std::max(gain, row);
  }
  return gain;
}

MinkowskiVector MinkowskiFrame::to_minkowski(LatticeVector const& v) const {
  if (v.size() != 4) {
    throw DimensionMismatch("Minkowski frame needs rank-4 vectors");
  }
  std::array<double, 4> c{};
  for (std::size_t j = 0; j < 4; ++j) c[j] = to_double(v[j]);
  MinkowskiVector x;
  for (std::size_t i = 0; i < 4; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < 4; ++j) s += to_frame_[i][j] * c[j];
    x.x[i] = s;
  }
  return x;
}

MinkowskiFrame build_frame(GramLattice const& lattice, double tol) {
  if (lattice.rank() != 4) {
    throw WrongSignature("the hyperbolic 3-space pipeline needs rank 4, got " +
                         std::to_string(lattice.rank()));
  }
  Signature const sig = signature(lattice);
  if (!(sig == Signature{1, 3, 0})) {
    throw WrongSignature("signature " + sig.to_string() +
                         " is not (1,3,0)");
  }
  Matrix4 a{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) a[i][j] = to_double(lattice(i, j));
  }
  EigenSystem const eig = jacobi(a);

  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return eig.values[l] > eig.values[r];
  });
  if (!(eig.values[order[0]] > 0 && eig.values[order[1]] < 0)) {
    throw ConvergenceFailure("eigenvalue signs disagree with exact signature");
  }

  MinkowskiFrame frame(lattice);
  frame.tolerance_ = tol;
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t const src = order[i];
    double const lambda = eig.values[src];
    std::array<double, 4> u{};
    for (std::size_t j = 0; j < 4; ++j) u[j] = eig.vectors[j][src];
    // Sign convention: the first component of (near-)maximal magnitude is
    // positive.
    double big = 0;
    for (double c : u) big = std::max(big, std::abs(c));
    for (double c : u) {
      if (std::abs(c) >= big - 1e-12) {
        if (c < 0) {
          for (double& w : u) w = -w;
        }
        break;
      }
    }
    double const root = std::sqrt(std::abs(lambda));
    frame.eigenvalues_[i] = lambda;
    for (std::size_t j = 0; j < 4; ++j) {
      frame.basis_[j][i] = u[j] / root;
      frame.to_frame_[i][j] = u[j] * root;
    }
  }

  for (std::size_t i = 0; i < 4; ++i) {
    double const expected = i == 0 ? 1.0 : -1.0;
    if (std::abs(frame.basis_norm(i) - expected) > tol) {
      throw ConvergenceFailure("|q(nu_" + std::to_string(i) +
                               ")| misses 1 by more than the tolerance");
    }
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (std::abs(frame.basis_pairing(i, j)) > tol) {
        throw ConvergenceFailure("frame vectors are not q-orthogonal");
      }
    }
  }
  return frame;
}

MinkowskiVector to_minkowski(MinkowskiFrame const& frame,
                             LatticeVector const& v) {
  return frame.to_minkowski(v);
}

Vec3 SphereCap::center() const {
  return {offset * normal[0], offset * normal[1], offset * normal[2]};
}

double SphereCap::radius() const {
  return empty ? 0.0 : std::sqrt(std::max(0.0, 1 - offset * offset));
}

Vec3 SphereCap::point(double theta) const {
  // Axis least aligned with the normal gives a stable tangent frame.
  std::size_t axis = 0;
  for (std::size_t k = 1; k < 3; ++k) {
    if (std::abs(normal[k]) < std::abs(normal[axis])) axis = k;
  }
  Vec3 a{};
  a[axis] = 1;
  double const an = a[0] * normal[0] + a[1] * normal[1] + a[2] * normal[2];
  Vec3 const e1 = normalized({a[0] - an * normal[0], a[1] - an * normal[1],
                              a[2] - an * normal[2]});
  Vec3 const e2{normal[1] * e1[2] - normal[2] * e1[1],
                normal[2] * e1[0] - normal[0] * e1[2],
                normal[0] * e1[1] - normal[1] * e1[0]};
  Vec3 const c = center();
  double const r = radius();
  double const cs = std::cos(theta), sn = std::sin(theta);
  return {c[0] + r * (cs * e1[0] + sn * e2[0]),
          c[1] + r * (cs * e1[1] + sn * e2[1]),
          c[2] + r * (cs * e1[2] + sn * e2[2])};
}

SphereCap boundary_circle(MinkowskiVector const& v) {
  double const n = std::sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  if (n == 0) throw InvalidArgument("boundary circle needs a non-zero spatial part");
  SphereCap cap;
  cap.normal = {v[1] / n, v[2] / n, v[3] / n};
  cap.offset = v[0] / n;
  cap.empty = std::abs(cap.offset) >= 1;
  return cap;
}

SphereCap boundary_circle(MinkowskiFrame const& frame, LatticeVector const& v) {
  return boundary_circle(frame.to_minkowski(v));
}

std::array<double, 4> ball_to_projective(Vec3 const& y) {
  double const n2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  return {1 + n2, 2 * y[0], 2 * y[1], 2 * y[2]};
}

Vec3 plane_to_sphere(double z1, double z2) {
  double const n2 = z1 * z1 + z2 * z2;
  return {(n2 - 1) / (n2 + 1), 2 * z1 / (n2 + 1), 2 * z2 / (n2 + 1)};
}

Vec3 plane_to_sphere(Vec2 const& z) { return plane_to_sphere(z[0], z[1]); }

Vec2 sphere_to_plane(Vec3 const& y) {
  double const d = 1 - y[0];
  return {y[1] / d, y[2] / d};
}

std::string to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::kInteriorDisc: return "interior-disc";
    case RegionKind::kExteriorHole: return "exterior-hole";
    case RegionKind::kHalfPlane: return "half-plane";
  }
  return "?";
}

DiscRegion DiscRegion::Disc(Vec2 center, double radius) {
  double const c2 = center[0] * center[0] + center[1] * center[1];
  MinkowskiVector x{{(1 + c2 - radius * radius) / 2,
                     (c2 - radius * radius - 1) / 2, center[0], center[1]}};
  return disc_region(x);
}

DiscRegion DiscRegion::Hole(Vec2 center, double radius) {
  double const c2 = center[0] * center[0] + center[1] * center[1];
  double const sum = radius * radius - c2;  // x₀ + x₁, with x₀ − x₁ = −1
  MinkowskiVector x{{(sum - 1) / 2, (sum + 1) / 2, -center[0], -center[1]}};
  return disc_region(x);
}

DiscRegion DiscRegion::HalfPlane(Vec2 normal, double offset) {
  MinkowskiVector x{{offset / 2, offset / 2, normal[0] / 2, normal[1] / 2}};
  return disc_region(x);
}

bool DiscRegion::contains(Vec2 const& z) const {
  switch (kind) {
    case RegionKind::kInteriorDisc:
      return std::hypot(z[0] - center[0], z[1] - center[1]) < radius;
    case RegionKind::kExteriorHole:
      return std::hypot(z[0] - center[0], z[1] - center[1]) > radius;
    case RegionKind::kHalfPlane:
      return normal[0] * z[0] + normal[1] * z[1] > offset;
  }
  return false;
}

double DiscRegion::distance(Vec2 const& z) const {
  switch (kind) {
    case RegionKind::kInteriorDisc:
      return std::max(0.0, std::hypot(z[0] - center[0], z[1] - center[1]) - radius);
    case RegionKind::kExteriorHole:
      return std::max(0.0, radius - std::hypot(z[0] - center[0], z[1] - center[1]));
    case RegionKind::kHalfPlane:
      return std::max(0.0, (offset - normal[0] * z[0] - normal[1] * z[1]) /
                               std::hypot(normal[0], normal[1]));
  }
  return 0;
}

double DiscRegion::defining_residual(Vec2 const& z) const {
  MinkowskiVector const& v = minkowski;
  double const n2 = z[0] * z[0] + z[1] * z[1];
  return n2 * (v[1] - v[0]) + 2 * v[2] * z[0] + 2 * v[3] * z[1] - (v[0] + v[1]);
}

DiscRegion DiscRegion::complement() const {
  MinkowskiVector neg;
  for (std::size_t i = 0; i < 4; ++i) neg.x[i] = -minkowski[i];
  double const q = kind == RegionKind::kHalfPlane
                       ? minkowski.norm()
                       : -radius * radius *
                             (minkowski[1] - minkowski[0]) *
                             (minkowski[1] - minkowski[0]);
  DiscRegion out = disc_region(neg, q);
  if (source) out.source = source->negated();
  return out;
}

DiscRegion disc_region(MinkowskiVector const& x) {
  return disc_region(x, x.norm());
}

DiscRegion disc_region(MinkowskiVector const& x, double norm) {
  double const scale = x.max_abs();
  double const s = x[1] - x[0];
  if (std::abs(s) <= 1e-12 * scale && std::abs(x[2]) <= 1e-12 * scale &&
      std::abs(x[3]) <= 1e-12 * scale) {
    throw DegenerateRegion("v0 = v1 and v2 = v3 = 0: empty region");
  }
  if (!(norm < 0)) {
    throw InvalidArgument("v-disc needs a vector of negative norm");
  }
  DiscRegion region;
  region.minkowski = x;
  if (std::abs(s) < 1e-12 * scale) {
    region.kind = RegionKind::kHalfPlane;
    region.normal = {2 * x[2], 2 * x[3]};
    region.offset = x[0] + x[1];
    return region;
  }
  region.kind = s < 0 ? RegionKind::kInteriorDisc : RegionKind::kExteriorHole;
  region.center = {x[2] / (x[0] - x[1]), x[3] / (x[0] - x[1])};
  region.radius = std::sqrt(-norm) / std::abs(s);
  return region;
}

DiscRegion disc_region(MinkowskiFrame const& frame, LatticeVector const& v) {
  if (!(v.norm() < 0)) {
    throw InvalidArgument("v-disc needs a vector of negative norm, got " +
                          v.to_string());
  }
  DiscRegion region =
      disc_region(frame.to_minkowski(v), v.norm().convert_to<double>());
  region.source = v;
  return region;
}

}  // namespace carpet
