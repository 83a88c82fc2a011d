#include "carpet/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "norm_solver.hpp"

namespace carpet {

namespace {

Integer gcd_of(std::vector<Integer> const& xs) {
  Integer g = 0;
  for (auto const& x : xs) g = boost::multiprecision::gcd(g, x);
  return g;
}

void check_dimension(GramLattice const& lattice, LatticeVector const& v) {
  if (v.size() != lattice.rank()) {
    throw DimensionMismatch("vector has " + std::to_string(v.size()) +
                            " coordinates, lattice rank is " +
                            std::to_string(lattice.rank()));
  }
}

// Fraction-free Gaussian elimination. Returns (rank, determinant-if-square).
std::pair<std::size_t, Integer> bareiss(std::vector<Integer> m,
                                        std::size_t rows,
                                        std::size_t cols) {
  auto at = [&](std::size_t i, std::size_t j) -> Integer& {
    return m[i * cols + j];
  };
  Integer prev = 1;
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        at(i, j) = (at(rank, col) * at(i, j) - at(i, col) * at(rank, j)) / prev;
      }
      at(i, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  Integer det = 0;
  if (rows == cols && rank == rows) det = sign * prev;
  return {rank, det};
}

}  // namespace

GramLattice::GramLattice(std::vector<std::vector<Integer>> rows)
    : rank_(rows.size()) {
  if (rank_ == 0) throw InvalidArgument("Gram matrix is empty");
  gram_.reserve(rank_ * rank_);
  for (auto& row : rows) {
    if (row.size() != rank_) {
      throw InvalidArgument("Gram matrix is not square");
    }
    for (auto& x : row) gram_.push_back(std::move(x));
  }
  for (std::size_t i = 0; i < rank_; ++i) {
    for (std::size_t j = i + 1; j < rank_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) {
        throw InvalidArgument("Gram matrix is not symmetric at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
      }
    }
  }
}

GramLattice GramLattice::FromRows(
    std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<Integer>> m;
  for (auto const& row : rows) m.emplace_back(row.begin(), row.end());
  return GramLattice(std::move(m));
}

GramLattice GramLattice::Diagonal(std::initializer_list<std::int64_t> entries) {
  std::size_t const n = entries.size();
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n, 0));
  std::size_t i = 0;
  for (auto e : entries) {
    m[i][i] = e;
    ++i;
  }
  return GramLattice(std::move(m));
}

std::vector<std::vector<Integer>> GramLattice::rows() const {
  std::vector<std::vector<Integer>> out(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    out[i].assign(gram_.begin() + i * rank_, gram_.begin() + (i + 1) * rank_);
  }
  return out;
}

Integer GramLattice::determinant() const {
  return bareiss(gram_, rank_, rank_).second;
}

std::size_t GramLattice::matrix_rank() const {
  return bareiss(gram_, rank_, rank_).first;
}

Integer GramLattice::max_abs_entry() const {
  Integer best = 0;
  for (auto const& x : gram_) best = std::max(best, Integer(abs(x)));
  return best;
}

LatticeVector GramLattice::vector(std::vector<Integer> coords) const {
  if (coords.size() != rank_) {
    throw DimensionMismatch("vector has " + std::to_string(coords.size()) +
                            " coordinates, lattice rank is " +
                            std::to_string(rank_));
  }
  Integer n = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (coords[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < rank_; ++j) row += (*this)(i, j) * coords[j];
    n += coords[i] * row;
  }
  return LatticeVector(std::move(coords), std::move(n));
}

LatticeVector GramLattice::vector(
    std::initializer_list<std::int64_t> coords) const {
  return vector(std::vector<Integer>(coords.begin(), coords.end()));
}

LatticeVector::LatticeVector(std::vector<Integer> coords, Integer norm)
    : coords_(std::move(coords)), norm_(std::move(norm)) {
  primitive_ = gcd_of(coords_) == 1;
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](Integer const& x) { return x == 0; });
}

LatticeVector LatticeVector::negated() const {
  std::vector<Integer> c(coords_);
  for (auto& x : c) x = -x;
  return LatticeVector(std::move(c), norm_);
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

std::string Signature::to_string() const {
  return "(" + std::to_string(pos) + "," + std::to_string(neg) + "," +
         std::to_string(zero) + ")";
}

Integer DiscriminantData::order() const {
  Integer n = 1;
  for (auto const& d : elementary_divisors) n *= d;
  return n;
}

std::string DiscriminantData::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < elementary_divisors.size(); ++i) {
    if (i) os << ',';
    os << elementary_divisors[i];
  }
  os << ']';
  return os.str();
}

std::string to_string(IsotropyVerdict verdict) {
  return verdict == IsotropyVerdict::kCertifiedNone ? "certified-none"
                                                    : "inconclusive";
}

Integer norm(GramLattice const& lattice, LatticeVector const& v) {
  return bilinear(lattice, v, v);
}

Integer bilinear(GramLattice const& lattice,
                 LatticeVector const& v1,
                 LatticeVector const& v2) {
  check_dimension(lattice, v1);
  check_dimension(lattice, v2);
  Integer sum = 0;
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    if (v1[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < lattice.rank(); ++j) {
      row += lattice(i, j) * v2[j];
    }
    sum += v1[i] * row;
  }
  return sum;
}

// Faddeev–LeVerrier. The divisions by k are exact because every coefficient
// of an integer matrix's characteristic polynomial is an integer.
std::vector<Integer> characteristic_polynomial(GramLattice const& lattice) {
  std::size_t const n = lattice.rank();
  std::vector<Integer> coeff(n + 1, 0);
  coeff[n] = 1;
  std::vector<Integer> m(n * n, 0);  // M_0 = 0
  std::vector<Integer> am(n * n, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A·M_{k-1} + c_{n-k+1}·I
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Integer s = 0;
        for (std::size_t l = 0; l < n; ++l) s += lattice(i, l) * m[l * n + j];
        am[i * n + j] = s;
      }
    }
    for (std::size_t i = 0; i < n; ++i) am[i * n + i] += coeff[n - k + 1];
    m = am;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) trace += lattice(i, l) * m[l * n + i];
    }
    coeff[n - k] = -trace / static_cast<long>(k);
  }
  return coeff;
}

Signature signature(GramLattice const& lattice) {
  std::size_t const n = lattice.rank();
  auto const coeff = characteristic_polynomial(lattice);
  std::size_t const zero = n - lattice.matrix_rank();

  std::size_t low = 0;
  while (low <= n && coeff[low] == 0) ++low;
  if (low != zero) {
    throw std::logic_error("characteristic polynomial disagrees with rank");
  }

  auto sign_changes = [&](bool negate_odd) {
    std::size_t changes = 0;
    int last = 0;
    for (std::size_t k = low; k <= n; ++k) {
      int s = coeff[k].sign();
      if (s == 0) continue;
      if (negate_odd && (k % 2 == 1)) s = -s;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  };
  Signature sig{sign_changes(false), sign_changes(true), zero};
  if (sig.rank() != n) {
    throw std::logic_error("Descartes counts do not add up to the rank");
  }
  return sig;
}

GramLattice restrict(GramLattice const& lattice,
                     std::span<LatticeVector const> generators) {
  if (generators.empty()) throw InvalidArgument("no generators to restrict to");
  std::size_t const k = generators.size();
  std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      m[i][j] = m[j][i] = bilinear(lattice, generators[i], generators[j]);
    }
  }
  return GramLattice(std::move(m));
}

DiscriminantData discriminant(GramLattice const& lattice) {
  if (lattice.determinant() == 0) {
    throw DegenerateLattice("Gram matrix is degenerate");
  }
  DiscriminantData data;
  for (auto& d : smith_invariants(lattice.rows())) {
    if (d != 1) data.elementary_divisors.push_back(std::move(d));
  }
  return data;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

std::size_t disc_fp_dimension(GramLattice const& lattice, std::int64_t p) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  auto const data = discriminant(lattice);
  return static_cast<std::size_t>(
      std::count_if(data.elementary_divisors.begin(),
                    data.elementary_divisors.end(),
                    [p](Integer const& d) { return d % p == 0; }));
}

IsotropyVerdict isotropic_mod_p_certificate(GramLattice const& lattice,
                                            std::int64_t p,
                                            int depth,
                                            std::size_t max_states) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (depth < 1) throw InvalidArgument("certificate depth must be >= 1");
  if (lattice.determinant() == 0) {
    throw DegenerateLattice("Gram matrix is degenerate");
  }
  std::size_t const r = lattice.rank();
  using Residues = std::vector<Integer>;

  Integer modulus = 1;
  for (int i = 0; i < depth; ++i) modulus *= p;

  std::vector<Integer> a(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      Integer x = lattice(i, j) % modulus;
      if (x < 0) x += modulus;
      a[i * r + j] = x;
    }
  }
  auto quad = [&](Residues const& v) {
    Integer s = 0;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) s += v[i] * a[i * r + j] * v[j];
    }
    return s;
  };
  // Gradient 2·A·v mod p vanishes identically.
  auto singular = [&](Residues const& v) {
    for (std::size_t i = 0; i < r; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < r; ++j) s += a[i * r + j] * v[j];
      if ((2 * s) % p != 0) return false;
    }
    return true;
  };

  // Level 1: non-zero residues mod p.
  std::vector<Residues> level;
  {
    Residues v(r, 0);
    while (true) {
      std::size_t i = 0;
      while (i < r && v[i] == p - 1) v[i++] = 0;
      if (i == r) break;
      ++v[i];
      if (quad(v) % p == 0) {
        if (p != 2 && !singular(v)) return IsotropyVerdict::kInconclusive;
        level.push_back(v);
        if (level.size() > max_states) return IsotropyVerdict::kInconclusive;
      }
    }
  }

  Integer step = p;  // p^j
  for (int j = 1; j < depth && !level.empty(); ++j) {
    Integer const next_mod = step * p;
    std::vector<Residues> lifted;
    for (auto const& base : level) {
      Residues u(r, 0);
      while (true) {
        Residues v(base);
        for (std::size_t i = 0; i < r; ++i) v[i] += step * u[i];
        if (quad(v) % next_mod == 0) {
          if (p != 2 && !singular(v)) return IsotropyVerdict::kInconclusive;
          lifted.push_back(std::move(v));
          if (lifted.size() > max_states) return IsotropyVerdict::kInconclusive;
        }
        std::size_t i = 0;
        while (i < r && u[i] == p - 1) u[i++] = 0;
        if (i == r) break;
        ++u[i];
      }
    }
    level = std::move(lifted);
    step = next_mod;
  }
  return level.empty() ? IsotropyVerdict::kCertifiedNone
                       : IsotropyVerdict::kInconclusive;
}

std::vector<LatticeVector> isotropic_search(GramLattice const& lattice,
                                            std::int64_t bound) {
  if (bound < 1) throw InvalidArgument("search bound must be >= 1");
  auto const raw = detail::solve_norm_in_box(lattice, 0, bound, 0);
  std::vector<LatticeVector> out;
  for (auto const& c : raw) {
    auto first = std::find_if(c.begin(), c.end(),
                              [](std::int64_t x) { return x != 0; });
    if (first == c.end() || *first < 0) continue;
    auto v = lattice.vector(std::vector<Integer>(c.begin(), c.end()));
    if (v.primitive()) out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticeVector reflect(GramLattice const& lattice,
                      LatticeVector const& x,
                      LatticeVector const& v) {
  Integer const qv = norm(lattice, v);
  if (qv == 0) throw InvalidArgument("cannot reflect in an isotropic vector");
  Integer const twice = 2 * bilinear(lattice, x, v);
  if (twice % qv != 0) {
    throw NonIntegralReflection("reflection of " + x.to_string() + " in " +
                                v.to_string() + " is not integral");
  }
  Integer const k = twice / qv;
  std::vector<Integer> c(x.coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= k * v[i];
  return lattice.vector(std::move(c));
}

bool proportional(LatticeVector const& v1, LatticeVector const& v2) {
  if (v1.size() != v2.size()) {
    throw DimensionMismatch("vectors of different length");
  }
  for (std::size_t i = 0; i < v1.size(); ++i) {
    for (std::size_t j = i + 1; j < v1.size(); ++j) {
      if (v1[i] * v2[j] != v1[j] * v2[i]) return false;
    }
  }
  return true;
}

}  // namespace carpet
