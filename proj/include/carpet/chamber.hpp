#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "carpet/enumerate.hpp"
#include "carpet/lattice.hpp"
#include "carpet/projection.hpp"

namespace carpet {

// How the circles cut out on the absolute by v₁⊥ and v₂⊥ meet.
enum class PairClass { kDisjoint, kTangent, kTransversal, kNestedOrEqual };

std::string to_string(PairClass c);

// Exact: signature of the Gram matrix of ⟨v₁, v₂⟩. (1,1) → disjoint,
// degenerate negative semi-definite → tangent, negative definite →
// transversal, proportional generators → nested-or-equal. Throws
// InvalidArgument unless both norms are negative.
PairClass classify_pair(GramLattice const& lattice,
                        LatticeVector const& v1,
                        LatticeVector const& v2);

// Euclidean classification of the two boundary circles (lines for
// half-planes, which pass through the projection pole). Used to cross-check
// the exact verdict; `tol` is absolute.
PairClass classify_circles(DiscRegion const& a, DiscRegion const& b,
                           double tol = 1e-6);

// Whether some pair of negative vectors with norms n₁, n₂ could meet
// transversally, ruled out by the discriminant group: the lattice has
// signature (1, r−1) with r ≥ 3, dim D(Λ) ⊗ F_p = r − 1, and n₁·n₂ < p.
bool discriminant_excludes_transversal(GramLattice const& lattice,
                                       std::int64_t p,
                                       Integer const& n1,
                                       Integer const& n2);

// Primes p dividing |D(Λ)|, ascending.
std::vector<std::int64_t> discriminant_primes(GramLattice const& lattice);

enum class ComponentVerdict {
  kBaragar,
  kCarpetNonBaragar,
  kNotComponent,
  kInconclusiveAtBound,
};

enum class Justification {
  kWitness,                // a transversal MBM class was found
  kBoundedSearch,          // no witness inside the searched box
  kDiscriminantCriterion,  // no witness can exist anywhere
};

std::string to_string(ComponentVerdict v);
std::string to_string(Justification j);

struct ComponentClass {
  ComponentVerdict verdict = ComponentVerdict::kInconclusiveAtBound;
  std::vector<LatticeVector> witnesses;
  Justification justification = Justification::kBoundedSearch;
  // The prime used when justification is kDiscriminantCriterion.
  std::optional<std::int64_t> prime;
  bool pruned = false;
};

struct ComponentSearch {
  std::int64_t bound = 1;
  // With a frame and a radius, MBM candidates whose v-disc is smaller than
  // the radius are skipped and the search no longer counts as exhaustive.
  MinkowskiFrame const* frame = nullptr;
  std::optional<double> min_disc_radius;
  unsigned threads = 0;
};

// Decides whether the circle of w⊥ is a component of the Apollonian carpet:
// it is not when some MBM class η (norm in `mbm_squares`, not proportional
// to w) spans a negative definite plane with w. Otherwise it is a Baragar
// component when norm(w) is itself an MBM square.
ComponentClass classify_component(GramLattice const& lattice,
                                  LatticeVector const& w,
                                  std::set<Integer> const& mbm_squares,
                                  ComponentSearch const& search);

// Primitive MBM classes in the search box, one per ±pair, sorted. Reusable
// across walls of the same lattice.
struct MbmCandidates {
  std::set<Integer> mbm_squares;
  std::vector<LatticeVector> vectors;
  bool pruned = false;
};

MbmCandidates mbm_candidates(GramLattice const& lattice,
                             std::set<Integer> const& mbm_squares,
                             ComponentSearch const& search);

ComponentClass classify_component(GramLattice const& lattice,
                                  LatticeVector const& w,
                                  MbmCandidates const& candidates);

// Closure of the chamber containing the centre of the ball, seen on the
// plane: the complement of the union of `maximal_discs`.
struct ChamberBoundary {
  std::vector<DiscRegion> maximal_discs;
  bool pruned = false;
  // Reflection word producing this chamber from the origin chamber; empty
  // for the origin chamber itself.
  std::vector<std::size_t> chamber_id;
  std::size_t wall_count = 0;
};

// a ⊆ b for open planar regions. Margins within 1e-9 count as not
// contained unless both regions carry lattice sources that `exact` proves
// tangent, in which case the touching region is contained.
bool region_contained(DiscRegion const& a, DiscRegion const& b,
                      GramLattice const* exact = nullptr);

// Indices of the regions not contained in any other, ascending.
std::vector<std::size_t> maximal_region_indices(
    std::span<DiscRegion const> regions, GramLattice const* exact = nullptr,
    unsigned threads = 0);

// Throws InvalidArgument for an empty wall set.
ChamberBoundary maximal_discs(WallSet const& walls, MinkowskiFrame const& frame,
                              unsigned threads = 0);

// Boundary of g(C₀) with g = s_{w[0]} ∘ s_{w[1]} ∘ … , sᵢ the reflection in
// the i-th wall. Each image g(v) keeps its sign: its region is the side of
// the image wall facing away from the image chamber, so the reflected
// wall's own region flips to the complement of its disc.
ChamberBoundary adjacent_chamber(WallSet const& walls,
                                 MinkowskiFrame const& frame,
                                 std::vector<std::size_t> const& word,
                                 unsigned threads = 0);

// Fraction of `samples` uniform points of the unit disc within `eps` of
// some maximal region.
double density_probe(ChamberBoundary const& boundary, std::size_t samples,
                     double eps, std::uint64_t seed = 1);

}  // namespace carpet
