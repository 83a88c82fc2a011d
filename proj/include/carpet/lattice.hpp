#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "boost/multiprecision/cpp_int.hpp"
#include "carpet/errors.hpp"

namespace carpet {

using Integer = boost::multiprecision::cpp_int;

class LatticeVector;

// Integral symmetric bilinear form on Z^r, stored as its Gram matrix.
class GramLattice {
 public:
  // Throws InvalidArgument unless `rows` is a non-empty symmetric square
  // matrix.
  explicit GramLattice(std::vector<std::vector<Integer>> rows);

  static GramLattice FromRows(
      std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static GramLattice Diagonal(std::initializer_list<std::int64_t> entries);

  std::size_t rank() const { return rank_; }
  Integer const& operator()(std::size_t i, std::size_t j) const {
    return gram_[i * rank_ + j];
  }
  std::vector<std::vector<Integer>> rows() const;

  // Exact determinant (fraction-free Bareiss elimination).
  Integer determinant() const;
  // Rank of the Gram matrix as an integer matrix.
  std::size_t matrix_rank() const;
  // Largest absolute value of an entry.
  Integer max_abs_entry() const;

  LatticeVector vector(std::vector<Integer> coords) const;
  LatticeVector vector(std::initializer_list<std::int64_t> coords) const;

  friend bool operator==(GramLattice const&, GramLattice const&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Integer> gram_;
};

// Integer coordinate vector together with its norm under the lattice that
// created it. Only GramLattice::vector and the lattice operations construct
// these, so `norm()` always agrees with coordsᵀ·gram·coords.
class LatticeVector {
 public:
  LatticeVector() = default;

  std::vector<Integer> const& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  Integer const& operator[](std::size_t i) const { return coords_[i]; }
  Integer const& norm() const { return norm_; }
  bool is_zero() const;
  // gcd(coords) == 1.
  bool primitive() const { return primitive_; }

  LatticeVector negated() const;

  std::string to_string() const;

  friend bool operator==(LatticeVector const& a, LatticeVector const& b) {
    return a.coords_ == b.coords_;
  }
  // Lexicographic on coordinates.
  friend bool operator<(LatticeVector const& a, LatticeVector const& b) {
    return a.coords_ < b.coords_;
  }

 private:
  friend class GramLattice;
  LatticeVector(std::vector<Integer> coords, Integer norm);

  std::vector<Integer> coords_;
  Integer norm_ = 0;
  bool primitive_ = false;
};

struct Signature {
  std::size_t pos = 0;
  std::size_t neg = 0;
  std::size_t zero = 0;

  std::size_t rank() const { return pos + neg + zero; }
  bool is_hyperbolic() const { return pos == 1 && zero == 0; }
  std::string to_string() const;
  friend bool operator==(Signature const&, Signature const&) = default;
};

// Elementary divisors d₁ | d₂ | ... of the Gram matrix, restricted to the
// non-unit ones. D(Λ) ≅ ⊕ Z/dᵢ.
struct DiscriminantData {
  std::vector<Integer> elementary_divisors;

  Integer order() const;
  std::string to_string() const;
};

enum class IsotropyVerdict { kCertifiedNone, kInconclusive };

std::string to_string(IsotropyVerdict verdict);

Integer norm(GramLattice const& lattice, LatticeVector const& v);
Integer bilinear(GramLattice const& lattice,
                 LatticeVector const& v1,
                 LatticeVector const& v2);

// Coefficients c₀..c_r of det(t·I − gram), lowest degree first.
std::vector<Integer> characteristic_polynomial(GramLattice const& lattice);

// Exact inertia: sign changes of the characteristic polynomial (all roots
// of a symmetric matrix are real, so Descartes' rule is exact) with the
// zero count taken from the exact matrix rank.
Signature signature(GramLattice const& lattice);

// Gram matrix of the given generators. Dependent generators are allowed
// and simply give a degenerate form.
GramLattice restrict(GramLattice const& lattice,
                     std::span<LatticeVector const> generators);

// Smith normal form diagonal of an integer matrix (non-negative, each entry
// dividing the next, zeros last).
std::vector<Integer> smith_invariants(
    std::vector<std::vector<Integer>> matrix);

// Throws DegenerateLattice when det(gram) = 0.
DiscriminantData discriminant(GramLattice const& lattice);

bool is_prime(std::int64_t n);

// dim over F_p of D(Λ) ⊗ F_p. Throws NotPrime.
std::size_t disc_fp_dimension(GramLattice const& lattice, std::int64_t p);

// Searches the residues v mod p^depth with v ≢ 0 (mod p) and
// q(v) ≡ 0 (mod p^depth), lifting one p-adic digit at a time. Every primitive
// isotropic lattice vector reduces to such a residue, so an empty search
// certifies that the lattice has no non-zero isotropic vector. A residue
// with non-vanishing gradient mod an odd p lifts to a p-adic zero (Hensel),
// and the search stops early as inconclusive. So does a search whose state
// exceeds `max_states`.
IsotropyVerdict isotropic_mod_p_certificate(GramLattice const& lattice,
                                            std::int64_t p,
                                            int depth = 2,
                                            std::size_t max_states = 50'000'000);

// All primitive isotropic v with 0 < max|vᵢ| ≤ bound, one per ±pair (first
// non-zero coordinate positive), sorted lexicographically.
std::vector<LatticeVector> isotropic_search(GramLattice const& lattice,
                                            std::int64_t bound);

// x − (2⟨x,v⟩/q(v))·v. Throws NonIntegralReflection if the coefficient is
// not an integer and InvalidArgument if q(v) = 0.
LatticeVector reflect(GramLattice const& lattice,
                      LatticeVector const& x,
                      LatticeVector const& v);

// Whether v₁, v₂ span a space of dimension < 2.
bool proportional(LatticeVector const& v1, LatticeVector const& v2);

}  // namespace carpet
