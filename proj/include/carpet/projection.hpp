#pragma once

#include <array>
#include <optional>
#include <string>

#include "carpet/lattice.hpp"

namespace carpet {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

// Coordinates in R^{1,3} with q(x) = x₀² − x₁² − x₂² − x₃².
struct MinkowskiVector {
  std::array<double, 4> x{};

  double operator[](std::size_t i) const { return x[i]; }
  double norm() const { return x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3]; }
  double max_abs() const;
};

// Eigenbasis ν₀..ν₃ of the Gram matrix, scaled so that |q(νᵢ)| = 1, with
// eigenvalues λ₀ > 0 > λ₁ ≥ λ₂ ≥ λ₃. Lattice coordinates c map to Minkowski
// coordinates x with c = Σ xᵢ·νᵢ.
class MinkowskiFrame {
 public:
  GramLattice const& lattice() const { return lattice_; }
  std::array<double, 4> const& eigenvalues() const { return eigenvalues_; }
  // Column i is νᵢ in lattice coordinates.
  std::array<std::array<double, 4>, 4> const& basis() const { return basis_; }
  double eigen_tolerance() const { return tolerance_; }

  // q(νᵢ) evaluated in floating point against the integer Gram matrix.
  double basis_norm(std::size_t i) const;
  // ⟨νᵢ, νⱼ⟩ in floating point.
  double basis_pairing(std::size_t i, std::size_t j) const;
  // Maximum over lattice coordinates j of Σᵢ |νᵢ[j]|: a lattice coordinate
  // is bounded by this times max|xᵢ|.
  double coordinate_gain() const;

  MinkowskiVector to_minkowski(LatticeVector const& v) const;

 private:
  friend MinkowskiFrame build_frame(GramLattice const&, double);
  explicit MinkowskiFrame(GramLattice lattice) : lattice_(std::move(lattice)) {}

  GramLattice lattice_;
  std::array<double, 4> eigenvalues_{};
  std::array<std::array<double, 4>, 4> basis_{};     // basis_[j][i] = νᵢ[j]
  std::array<std::array<double, 4>, 4> to_frame_{};  // x = to_frame_·c
  double tolerance_ = 0;
};

// Cyclic Jacobi on the Gram matrix. Throws WrongSignature unless the exact
// signature is (1,3,0) and ConvergenceFailure if the frame residuals
// exceed `tol`.
MinkowskiFrame build_frame(GramLattice const& lattice, double tol = 1e-12);

MinkowskiVector to_minkowski(MinkowskiFrame const& frame, LatticeVector const& v);

// {y ∈ S² : n·y = offset} for the plane with unit normal n.
struct SphereCap {
  Vec3 normal{};
  double offset = 0;
  bool empty = false;

  Vec3 center() const;
  double radius() const;
  // Point on the boundary circle at angle θ.
  Vec3 point(double theta) const;
};

// `empty` is set when |v₀| ≥ |(v₁, v₂, v₃)|, i.e. when the norm is not
// negative. Throws InvalidArgument when v₁ = v₂ = v₃ = 0.
SphereCap boundary_circle(MinkowskiVector const& v);
SphereCap boundary_circle(MinkowskiFrame const& frame, LatticeVector const& v);

// (y₁, y₂, y₃) ↦ (1 + |y|² : 2y₁ : 2y₂ : 2y₃).
std::array<double, 4> ball_to_projective(Vec3 const& y);
// Inverse stereographic projection from the pole (1, 0, 0).
Vec3 plane_to_sphere(Vec2 const& z);
Vec3 plane_to_sphere(double z1, double z2);
Vec2 sphere_to_plane(Vec3 const& y);

enum class RegionKind { kInteriorDisc, kExteriorHole, kHalfPlane };

std::string to_string(RegionKind kind);

// Image D_v of the cap cut off by v⊥ under the plane projection:
//   |z|²(v₁ − v₀) + 2v₂z₁ + 2v₃z₂ > v₀ + v₁.
struct DiscRegion {
  RegionKind kind = RegionKind::kInteriorDisc;
  Vec2 center{};
  double radius = 0;
  // Half-plane {normal·z > offset}.
  Vec2 normal{};
  double offset = 0;
  // The Minkowski coordinates the region was built from.
  MinkowskiVector minkowski;
  std::optional<LatticeVector> source;

  static DiscRegion Disc(Vec2 center, double radius);
  static DiscRegion Hole(Vec2 center, double radius);
  static DiscRegion HalfPlane(Vec2 normal, double offset);

  bool is_circle() const { return kind != RegionKind::kHalfPlane; }
  // Open-region membership.
  bool contains(Vec2 const& z) const;
  // Euclidean distance from z to the region (0 inside).
  double distance(Vec2 const& z) const;
  // Left-hand side minus right-hand side of the defining inequality,
  // evaluated from the stored Minkowski coordinates.
  double defining_residual(Vec2 const& z) const;
  // Region on the other side of the same boundary, i.e. D_{−v}.
  DiscRegion complement() const;
};

// Throws DegenerateRegion when v₀ = v₁ and v₂ = v₃ = 0 and InvalidArgument
// when the norm is not negative. `norm` defaults to x.norm(); the lattice
// overload passes the exact integer norm instead.
DiscRegion disc_region(MinkowskiVector const& x);
DiscRegion disc_region(MinkowskiVector const& x, double norm);
DiscRegion disc_region(MinkowskiFrame const& frame, LatticeVector const& v);

}  // namespace carpet
