#include "carpet/chamber.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "norm_solver.hpp"

namespace carpet {

namespace {

constexpr double kContainmentTolerance = 1e-9;

double dist(Vec2 const& a, Vec2 const& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double normal_length(DiscRegion const& h) {
  return std::hypot(h.normal[0], h.normal[1]);
}

// Signed distance of z from the boundary line of a half-plane, positive
// inside.
double line_depth(DiscRegion const& h, Vec2 const& z) {
  return (h.normal[0] * z[0] + h.normal[1] * z[1] - h.offset) / normal_length(h);
}

// Containment margin of a in b: positive when a ⊂ b with room to spare.
std::optional<double> containment_margin(DiscRegion const& a,
                                         DiscRegion const& b) {
  using K = RegionKind;
  switch (a.kind) {
    case K::kInteriorDisc:
      switch (b.kind) {
        case K::kInteriorDisc:
          return b.radius - a.radius - dist(a.center, b.center);
        case K::kExteriorHole:
          return dist(a.center, b.center) - a.radius - b.radius;
        case K::kHalfPlane:
          return line_depth(b, a.center) - a.radius;
      }
      break;
    case K::kExteriorHole:
      if (b.kind == K::kExteriorHole) {
        return a.radius - b.radius - dist(a.center, b.center);
      }
      return std::nullopt;
    case K::kHalfPlane:
      if (b.kind == K::kExteriorHole) {
        return -line_depth(a, b.center) - b.radius;
      }
      if (b.kind == K::kHalfPlane) {
        double const na = normal_length(a), nb = normal_length(b);
        double const cosine =
            (a.normal[0] * b.normal[0] + a.normal[1] * b.normal[1]) / (na * nb);
        if (cosine < 1 - 1e-12) return std::nullopt;
        return a.offset / na - b.offset / nb;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  unsigned const workers =
      std::min<unsigned>(detail::resolve_threads(threads),
                         static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<std::int64_t> prime_factors(Integer n) {
  std::vector<std::int64_t> out;
  n = abs(n);
  for (std::int64_t f = 2; Integer(f) * f <= n; ++f) {
    if (n % f != 0) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n.convert_to<std::int64_t>());
  return out;
}

ChamberBoundary boundary_from(std::vector<DiscRegion> regions,
                              GramLattice const& lattice, unsigned threads) {
  ChamberBoundary boundary;
  boundary.wall_count = regions.size();
  for (auto i : maximal_region_indices(regions, &lattice, threads)) {
    boundary.maximal_discs.push_back(std::move(regions[i]));
  }
  return boundary;
}

}  // namespace

std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::kDisjoint: return "disjoint";
    case PairClass::kTangent: return "tangent";
    case PairClass::kTransversal: return "transversal";
    case PairClass::kNestedOrEqual: return "nested-or-equal";
  }
  return "?";
}

std::string to_string(ComponentVerdict v) {
  switch (v) {
    case ComponentVerdict::kBaragar: return "baragar";
    case ComponentVerdict::kCarpetNonBaragar: return "carpet-non-baragar";
    case ComponentVerdict::kNotComponent: return "not-component";
    case ComponentVerdict::kInconclusiveAtBound: return "inconclusive-at-bound";
  }
  return "?";
}

std::string to_string(Justification j) {
  switch (j) {
    case Justification::kWitness: return "witness";
    case Justification::kBoundedSearch: return "bounded-search";
    case Justification::kDiscriminantCriterion: return "discriminant-criterion";
  }
  return "?";
}

PairClass classify_pair(GramLattice const& lattice,
                        LatticeVector const& v1,
                        LatticeVector const& v2) {
  if (!(norm(lattice, v1) < 0) || !(norm(lattice, v2) < 0)) {
    throw InvalidArgument("classify_pair needs vectors of negative norm");
  }
  if (proportional(v1, v2)) return PairClass::kNestedOrEqual;
  LatticeVector const gens[] = {v1, v2};
  Signature const sig = signature(restrict(lattice, gens));
  if (sig == Signature{1, 1, 0}) return PairClass::kDisjoint;
  if (sig == Signature{0, 1, 1}) return PairClass::kTangent;
  if (sig == Signature{0, 2, 0}) return PairClass::kTransversal;
  throw std::logic_error("unexpected signature " + sig.to_string() +
                         " for two negative vectors");
}

PairClass classify_circles(DiscRegion const& a, DiscRegion const& b,
                           double tol) {
  if (a.is_circle() && b.is_circle()) {
    double const d = dist(a.center, b.center);
    double const outer = a.radius + b.radius;
    double const inner = std::abs(a.radius - b.radius);
    if (d <= tol && inner <= tol) return PairClass::kNestedOrEqual;
    if (std::abs(d - outer) <= tol || std::abs(d - inner) <= tol) {
      return PairClass::kTangent;
    }
    return (inner < d && d < outer) ? PairClass::kTransversal
                                    : PairClass::kDisjoint;
  }
  if (!a.is_circle() && !b.is_circle()) {
    // Both lines pass through the pole: parallel lines touch only there.
    double const na = normal_length(a), nb = normal_length(b);
    double const cross =
        (a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0]) / (na * nb);
    return std::abs(cross) > tol ? PairClass::kTransversal : PairClass::kTangent;
  }
  DiscRegion const& line = a.is_circle() ? b : a;
  DiscRegion const& circle = a.is_circle() ? a : b;
  double const depth = std::abs(line_depth(line, circle.center));
  if (std::abs(depth - circle.radius) <= tol) return PairClass::kTangent;
  return depth < circle.radius ? PairClass::kTransversal : PairClass::kDisjoint;
}

std::vector<std::int64_t> discriminant_primes(GramLattice const& lattice) {
  auto const data = discriminant(lattice);
  std::set<std::int64_t> primes;
  for (auto const& d : data.elementary_divisors) {
    for (auto p : prime_factors(d)) primes.insert(p);
  }
  return {primes.begin(), primes.end()};
}

bool discriminant_excludes_transversal(GramLattice const& lattice,
                                       std::int64_t p,
                                       Integer const& n1,
                                       Integer const& n2) {
  std::size_t const r = lattice.rank();
  if (r < 3 || !(n1 < 0) || !(n2 < 0)) return false;
  if (!(signature(lattice) == Signature{1, r - 1, 0})) return false;
  if (disc_fp_dimension(lattice, p) != r - 1) return false;
  return n1 * n2 < p;
}

MbmCandidates mbm_candidates(GramLattice const& lattice,
                             std::set<Integer> const& mbm_squares,
                             ComponentSearch const& search) {
  if (mbm_squares.empty()) throw InvalidArgument("mbm_squares is empty");
  if (search.bound < 1) throw InvalidArgument("search bound must be >= 1");
  for (auto const& m : mbm_squares) {
    if (!(m < 0)) throw InvalidArgument("MBM squares must be negative");
  }
  MbmCandidates out;
  out.mbm_squares = mbm_squares;
  for (auto const& m : mbm_squares) {
    auto const raw =
        detail::solve_norm_in_box(lattice, m, search.bound, search.threads);
    for (auto const& c : raw) {
      auto first = std::find_if(c.begin(), c.end(),
                                [](std::int64_t x) { return x != 0; });
      if (first == c.end() || *first < 0) continue;
      auto eta = lattice.vector(std::vector<Integer>(c.begin(), c.end()));
      if (!eta.primitive()) continue;
      if (search.frame && search.min_disc_radius) {
        MinkowskiVector const x = search.frame->to_minkowski(eta);
        double const gap = std::abs(x[1] - x[0]);
        double const root = std::sqrt(std::abs(m.convert_to<double>()));
        if (root < *search.min_disc_radius * gap) {
          out.pruned = true;
          continue;
        }
      }
      out.vectors.push_back(std::move(eta));
    }
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

ComponentClass classify_component(GramLattice const& lattice,
                                  LatticeVector const& w,
                                  std::set<Integer> const& mbm_squares,
                                  ComponentSearch const& search) {
  return classify_component(lattice, w,
                            mbm_candidates(lattice, mbm_squares, search));
}

ComponentClass classify_component(GramLattice const& lattice,
                                  LatticeVector const& w,
                                  MbmCandidates const& candidates) {
  Integer const nw = norm(lattice, w);
  if (!(nw < 0)) throw InvalidArgument("wall vector must have negative norm");
  auto const& mbm_squares = candidates.mbm_squares;
  if (mbm_squares.empty()) throw InvalidArgument("mbm_squares is empty");

  ComponentClass result;
  result.pruned = candidates.pruned;
  for (auto const& eta : candidates.vectors) {
    if (proportional(eta, w)) continue;
    if (classify_pair(lattice, w, eta) == PairClass::kTransversal) {
      result.witnesses.push_back(eta);
    }
  }

  std::optional<std::int64_t> criterion;
  if (lattice.determinant() != 0) {
    for (auto p : discriminant_primes(lattice)) {
      bool all = true;
      for (auto const& m : mbm_squares) {
        all = all && discriminant_excludes_transversal(lattice, p, nw, m);
      }
      if (all) {
        criterion = p;
        break;
      }
    }
  }

  bool const is_mbm = mbm_squares.count(nw) > 0;
  if (!result.witnesses.empty()) {
    if (criterion) {
      throw std::logic_error("transversal witness contradicts the "
                             "discriminant criterion");
    }
    result.verdict = ComponentVerdict::kNotComponent;
    result.justification = Justification::kWitness;
    return result;
  }
  if (criterion) {
    result.justification = Justification::kDiscriminantCriterion;
    result.prime = criterion;
  } else if (result.pruned) {
    result.verdict = ComponentVerdict::kInconclusiveAtBound;
    result.justification = Justification::kBoundedSearch;
    return result;
  }
  result.verdict = is_mbm ? ComponentVerdict::kBaragar
                          : ComponentVerdict::kCarpetNonBaragar;
  return result;
}

bool region_contained(DiscRegion const& a, DiscRegion const& b,
                      GramLattice const* exact) {
  auto const margin = containment_margin(a, b);
  if (!margin) return false;
  if (*margin > kContainmentTolerance) return true;
  if (*margin < -kContainmentTolerance) return false;
  if (exact && a.source && b.source) {
    return classify_pair(*exact, *a.source, *b.source) == PairClass::kTangent;
  }
  return false;
}

std::vector<std::size_t> maximal_region_indices(
    std::span<DiscRegion const> regions, GramLattice const* exact,
    unsigned threads) {
  std::size_t const n = regions.size();
  std::vector<char> dominated(n, 0);
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !region_contained(regions[i], regions[j], exact)) continue;
      // Mutual containment only happens for equal regions: keep the first.
      if (j > i && region_contained(regions[j], regions[i], exact)) continue;
      dominated[i] = 1;
      return;
    }
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!dominated[i]) out.push_back(i);
  }
  return out;
}

ChamberBoundary maximal_discs(WallSet const& walls, MinkowskiFrame const& frame,
                              unsigned threads) {
  if (walls.vectors.empty()) throw InvalidArgument("wall set is empty");
  std::vector<DiscRegion> regions;
  regions.reserve(walls.vectors.size());
  for (auto const& v : walls.vectors) regions.push_back(disc_region(frame, v));
  ChamberBoundary boundary = boundary_from(std::move(regions), frame.lattice(), threads);
  boundary.pruned = walls.pruned;
  return boundary;
}

ChamberBoundary adjacent_chamber(WallSet const& walls,
                                 MinkowskiFrame const& frame,
                                 std::vector<std::size_t> const& word,
                                 unsigned threads) {
  if (walls.vectors.empty()) throw InvalidArgument("wall set is empty");
  for (auto i : word) {
    if (i >= walls.vectors.size()) {
      throw InvalidArgument("chamber word index " + std::to_string(i) +
                            " is out of range");
    }
  }
  GramLattice const& lattice = frame.lattice();
  std::vector<DiscRegion> regions;
  regions.reserve(walls.vectors.size());
  for (auto const& v : walls.vectors) {
    LatticeVector image = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      image = reflect(lattice, image, walls.vectors[*it]);
    }
    regions.push_back(disc_region(frame, image));
  }
  ChamberBoundary boundary = boundary_from(std::move(regions), lattice, threads);
  boundary.pruned = walls.pruned;
  boundary.chamber_id = word;
  return boundary;
}

double density_probe(ChamberBoundary const& boundary, std::size_t samples,
                     double eps, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("density probe needs samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    Vec2 z;
    do {
      z = {uniform(rng), uniform(rng)};
    } while (z[0] * z[0] + z[1] * z[1] > 1);
    for (auto const& region : boundary.maximal_discs) {
      if (region.distance(z) <= eps) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace carpet
