#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>
#include <sstream>

#include "carpet/enumerate.hpp"

namespace carpet::testing {

std::vector<Integer> Gen::coords(std::size_t r, std::int64_t bound) {
  std::vector<Integer> c(r);
  for (auto& x : c) x = integer(-bound, bound);
  return c;
}

GramLattice Gen::symmetric(std::size_t r, std::int64_t bound) {
  std::vector<std::vector<Integer>> m(r, std::vector<Integer>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      m[i][j] = m[j][i] = integer(-bound, bound);
    }
  }
  return GramLattice(m);
}

GramLattice example0() {
  return GramLattice::FromRows(
      {{-1, 1, 1, 1}, {1, -1, 1, 1}, {1, 1, -1, 1}, {1, 1, 1, -1}});
}

GramLattice example1() {
  return GramLattice::FromRows(
      {{-1, 2, 0, 0}, {2, -1, 1, 0}, {0, 1, -2, 1}, {0, 0, 1, -2}});
}

GramLattice example4() { return GramLattice::Diagonal({3, -1, -63, -63}); }

std::vector<Golden> golden_lattices() {
  return {
      {"example-0", example0(), -1, 8},
      {"example-1", example1(), -1, 6},
      {"example-2", GramLattice::Diagonal({5, -1, -5, -5}), -1, 6},
      {"example-3", GramLattice::Diagonal({125, -25, -5, -1}), -1, 8},
      {"example-4", example4(), -1, 8},
      {"example-5",
       GramLattice::FromRows(
           {{-2, 5, 0, 0}, {5, 0, 0, 0}, {0, 0, -10, 5}, {0, 0, 5, -10}}),
       -2, 6},
      {"example-6",
       GramLattice::FromRows(
           {{-1, 2, 0, 0}, {2, 0, 0, 0}, {0, 0, -2, 0}, {0, 0, 0, -2}}),
       -1, 6},
  };
}

std::vector<std::vector<std::int64_t>> box_solutions(GramLattice const& lattice,
                                                     std::int64_t n,
                                                     std::int64_t bound) {
  std::size_t const r = lattice.rank();
  std::vector<std::int64_t> g(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      g[i * r + j] = lattice(i, j).convert_to<std::int64_t>();
    }
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> c(r, -bound);
  while (true) {
    std::int64_t q = 0;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) q += c[i] * g[i * r + j] * c[j];
    }
    if (q == n) {
      std::int64_t gcd = 0;
      for (auto x : c) gcd = std::gcd(gcd, x);
      auto first = std::find_if(c.begin(), c.end(), [](auto x) { return x != 0; });
      if (gcd == 1 && first != c.end() && *first > 0) out.push_back(c);
    }
    std::size_t k = r;
    while (k > 0 && c[k - 1] == bound) c[--k] = -bound;
    if (k == 0) break;
    ++c[k - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Integer det_exact(std::vector<std::vector<Integer>> m) {
  // Cofactor expansion; the matrices here are at most 5×5.
  std::size_t const n = m.size();
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Integer>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[i][j]);
      }
      sub.push_back(std::move(row));
    }
    Integer const term = m[0][c] * det_exact(std::move(sub));
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start,
             std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

Integer gcd_int(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::vector<Integer> minors_invariants(std::vector<std::vector<Integer>> const& m) {
  std::size_t const rows = m.size();
  std::size_t const cols = rows ? m[0].size() : 0;
  std::size_t const n = std::min(rows, cols);
  std::vector<Integer> g(n + 1, 0);
  g[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    Integer acc = 0;
    for (auto const& ri : rs) {
      for (auto const& ci : cs) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t a = 0; a < k; ++a) {
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m[ri[a]][ci[b]];
        }
        acc = gcd_int(acc, det_exact(std::move(sub)));
      }
    }
    g[k] = acc;
  }
  std::vector<Integer> out(n, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    if (g[k] == 0) break;
    out[k - 1] = g[k] / g[k - 1];
  }
  return out;
}

Signature float_signature(GramLattice const& lattice) {
  std::size_t const n = lattice.rank();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = lattice(i, j).convert_to<double>();
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    }
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        double const theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double const t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        double const c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double const akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double const apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(),
            [](double x, double y) { return std::abs(x) > std::abs(y); });
  Signature s;
  std::size_t const rank = lattice.matrix_rank();
  s.zero = n - rank;
  for (std::size_t i = 0; i < rank; ++i) (ev[i] > 0 ? s.pos : s.neg)++;
  return s;
}

PixelOracle::PixelOracle(std::size_t n, double lo, double hi, bool unit_disc_only)
    : n_(n), lo_(lo), step_((hi - lo) / static_cast<double>(n)),
      disc_only_(unit_disc_only) {}

Vec2 PixelOracle::point(std::size_t k) const {
  std::size_t const i = k % n_, j = k / n_;
  return {lo_ + (static_cast<double>(i) + 0.5) * step_,
          lo_ + (static_cast<double>(j) + 0.5) * step_};
}

bool PixelOracle::in_scope(std::size_t k) const {
  if (!disc_only_) return true;
  Vec2 const p = point(k);
  return p[0] * p[0] + p[1] * p[1] <= 1;
}

std::vector<std::uint64_t> PixelOracle::mask(DiscRegion const& r) const {
  std::vector<std::uint64_t> bits((n_ * n_ + 63) / 64, 0);
  for (std::size_t k = 0; k < n_ * n_; ++k) {
    if (in_scope(k) && r.contains(point(k))) bits[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  return bits;
}

std::vector<std::size_t> PixelOracle::antichain(
    std::vector<DiscRegion> const& regions, std::vector<std::size_t>* empty) const {
  std::vector<std::vector<std::uint64_t>> masks;
  std::vector<bool> nonempty;
  for (auto const& r : regions) {
    masks.push_back(mask(r));
    nonempty.push_back(std::any_of(masks.back().begin(), masks.back().end(),
                                   [](std::uint64_t w) { return w != 0; }));
  }
  auto subset = [&](std::size_t a, std::size_t b) {
    for (std::size_t w = 0; w < masks[a].size(); ++w) {
      if (masks[a][w] & ~masks[b][w]) return false;
    }
    return true;
  };
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (!nonempty[i]) {
      if (empty) empty->push_back(i);
      continue;
    }
    bool maximal = true;
    for (std::size_t j = 0; j < regions.size() && maximal; ++j) {
      if (i == j || !subset(i, j)) continue;
      if (!subset(j, i) || j < i) maximal = false;
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

SvgRaster::SvgRaster(std::string const& svg) {
  auto const start = svg.find("<g id=\"layer-0\"");
  if (start == std::string::npos) return;
  auto const stop = svg.find("</g>", start);
  std::string const body = svg.substr(start, stop - start);
  std::regex const circle(R"re(<circle cx="([-0-9.]+)" cy="([-0-9.]+)" r="([-0-9.]+)")re");
  std::regex const hole(
      R"re(<path d="M[-0-9. ]+H[-0-9.]+ V[-0-9.]+ H[-0-9.]+ Z M([-0-9.]+) ([-0-9.]+) A([-0-9.]+) [-0-9.]+ 0 1 0 ([-0-9.]+) )re");
  std::regex const polygon(R"re(<polygon points="([^"]*)")re");
  std::istringstream lines(body);
  std::string line;
  std::smatch m;
  while (std::getline(lines, line)) {
    if (std::regex_search(line, m, circle)) {
      shapes_.push_back({0, std::stod(m[1]), std::stod(m[2]), std::stod(m[3]), {}});
    } else if (std::regex_search(line, m, hole)) {
      double const x0 = std::stod(m[1]), y = std::stod(m[2]);
      double const r = std::stod(m[3]), x1 = std::stod(m[4]);
      shapes_.push_back({1, (x0 + x1) / 2, y, r, {}});
    } else if (std::regex_search(line, m, polygon)) {
      Shape s{2, 0, 0, 0, {}};
      std::istringstream pts(m[1].str());
      std::string pair;
      while (pts >> pair) {
        auto const comma = pair.find(',');
        s.pts.emplace_back(std::stod(pair.substr(0, comma)),
                           std::stod(pair.substr(comma + 1)));
      }
      shapes_.push_back(std::move(s));
    }
  }
}

bool SvgRaster::covered(Vec2 z) const {
  // Document coordinates flip the second axis.
  double const x = z[0], y = -z[1];
  for (auto const& s : shapes_) {
    double const dx = x - s.cx, dy = y - s.cy;
    if (s.kind == 0 && dx * dx + dy * dy < s.r * s.r) return true;
    if (s.kind == 1 && dx * dx + dy * dy > s.r * s.r) return true;
    if (s.kind == 2 && s.pts.size() >= 3) {
      bool inside = false;
      for (std::size_t i = 0, j = s.pts.size() - 1; i < s.pts.size(); j = i++) {
        auto const [xi, yi] = s.pts[i];
        auto const [xj, yj] = s.pts[j];
        if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) {
          inside = !inside;
        }
      }
      if (inside) return true;
    }
  }
  return false;
}

Fixture make_fixture(GramLattice const& lattice, Integer const& d,
                     std::int64_t bound, unsigned threads) {
  MinkowskiFrame frame = build_frame(lattice);
  EnumRequest req{lattice, d, bound, std::nullopt, threads};
  WallSet walls = enumerate(req, frame);
  return {lattice, std::move(frame), std::move(walls)};
}

}  // namespace carpet::testing
