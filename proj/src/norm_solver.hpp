#pragma once

// Box solver shared by the isotropic search and the wall enumeration: every
// c ∈ [−B, B]^r with cᵀ·A·c = target. The first r − 1 coordinates are
// enumerated with interval pruning; the last one is solved exactly from the
// quadratic it satisfies.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "carpet/lattice.hpp"

namespace carpet::detail {

using Coords = std::vector<std::int64_t>;

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned const hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

inline bool exact_sqrt(__int128 n, __int128& root) {
  if (n < 0) return false;
  auto s = static_cast<__int128>(std::sqrt(static_cast<long double>(n)));
  while (s > 0 && s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  root = s;
  return s * s == n;
}

inline bool exact_sqrt(Integer const& n, Integer& root) {
  if (n < 0) return false;
  Integer rem;
  root = boost::multiprecision::sqrt(n, rem);
  return rem == 0;
}

template <class T>
T to_scalar(Integer const& x) {
  if constexpr (std::is_same_v<T, Integer>) {
    return x;
  } else {
    // Callers only pick __int128 when every entry fits in 64 bits.
    return static_cast<T>(static_cast<std::int64_t>(x));
  }
}

template <class T>
class BoxSolver {
 public:
  BoxSolver(GramLattice const& lattice, Integer const& target,
            std::int64_t bound)
      : r_(lattice.rank()), bound_(bound), target_(to_scalar<T>(target)) {
    a_.reserve(r_ * r_);
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < r_; ++j) {
        a_.push_back(to_scalar<T>(lattice(i, j)));
      }
    }
    T const b = bound_;
    T const b2 = b * b;
    quad_min_.assign(r_ + 1, T(0));
    quad_max_.assign(r_ + 1, T(0));
    for (std::size_t k = 0; k < r_; ++k) {
      T lo = 0, hi = 0;
      for (std::size_t j = k; j < r_; ++j) {
        T const d = at(j, j) * b2;
        if (d < 0) lo += d; else hi += d;
        for (std::size_t l = j + 1; l < r_; ++l) {
          T const off = abs(at(j, l)) * b2 * 2;
          lo -= off;
          hi += off;
        }
      }
      quad_min_[k] = lo;
      quad_max_[k] = hi;
    }
  }

  std::vector<Coords> solve(unsigned threads) const {
    if (r_ == 1) {
      std::vector<Coords> out;
      Coords c(1, 0);
      std::vector<T> lin(1, T(0));
      solve_last(c, T(0), lin, out);
      return out;
    }
    std::size_t const slices = static_cast<std::size_t>(2 * bound_ + 1);
    std::vector<std::vector<Coords>> per_slice(slices);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t s = next++; s < slices; s = next++) {
        std::int64_t const c0 = static_cast<std::int64_t>(s) - bound_;
        Coords c(r_, 0);
        std::vector<T> lin(r_, T(0));
        descend(0, c0, c, T(0), lin, per_slice[s]);
      }
    };
    unsigned const n = std::min<unsigned>(resolve_threads(threads),
                                          static_cast<unsigned>(slices));
    if (n <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(n);
      for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    std::vector<Coords> out;
    for (auto& slice : per_slice) {
      for (auto& c : slice) out.push_back(std::move(c));
    }
    return out;
  }

 private:
  static T abs(T const& x) { return x < 0 ? T(-x) : x; }
  T const& at(std::size_t i, std::size_t j) const { return a_[i * r_ + j]; }

  // Fix coordinate k to `value` on top of the prefix summarized by
  // (value_so_far, lin), where lin[j] = Σ_{i<k} A_ji·c_i.
  void descend(std::size_t k, std::int64_t value, Coords& c, T q,
               std::vector<T> const& lin, std::vector<Coords>& out) const {
    T const t = value;
    c[k] = value;
    T const q_next = q + T(2) * t * lin[k] + at(k, k) * t * t;
    std::vector<T> lin_next(lin);
    for (std::size_t j = k + 1; j < r_; ++j) lin_next[j] += at(j, k) * t;

    std::size_t const next = k + 1;
    if (next == r_ - 1) {
      solve_last(c, q_next, lin_next, out);
      return;
    }
    if (unreachable(next, q_next, lin_next)) return;
    for (std::int64_t v = -bound_; v <= bound_; ++v) {
      descend(next, v, c, q_next, lin_next, out);
    }
  }

  bool unreachable(std::size_t k, T const& q, std::vector<T> const& lin) const {
    T linear = 0;
    for (std::size_t j = k; j < r_; ++j) linear += abs(lin[j]);
    linear *= T(2) * T(bound_);
    return target_ < q + quad_min_[k] - linear ||
           target_ > q + quad_max_[k] + linear;
  }

  // a·t² + 2β·t + (q − target) = 0 for the last coordinate t.
  void solve_last(Coords& c, T const& q, std::vector<T> const& lin,
                  std::vector<Coords>& out) const {
    std::size_t const m = r_ - 1;
    T const a = at(m, m);
    T const beta = lin[m];
    T const rest = q - target_;
    auto emit = [&](T const& t) {
      if (t < -T(bound_) || t > T(bound_)) return;
      c[m] = static_cast<std::int64_t>(t);
      out.push_back(c);
    };
    if (a == 0) {
      if (beta == 0) {
        if (rest == 0) {
          for (std::int64_t t = -bound_; t <= bound_; ++t) emit(T(t));
        }
        return;
      }
      T const num = -rest;
      T const den = T(2) * beta;
      if (num % den == 0) emit(num / den);
      return;
    }
    T const disc = beta * beta - a * rest;
    T root;
    if (!exact_sqrt(disc, root)) return;
    T const n1 = -beta + root;
    if (n1 % a == 0) emit(n1 / a);
    if (root != 0) {
      T const n2 = -beta - root;
      if (n2 % a == 0) emit(n2 / a);
    }
  }

  std::size_t r_;
  std::int64_t bound_;
  T target_;
  std::vector<T> a_;
  std::vector<T> quad_min_;
  std::vector<T> quad_max_;
};

// Dispatches to 128-bit arithmetic when every intermediate provably fits and
// to arbitrary precision otherwise.
inline std::vector<Coords> solve_norm_in_box(GramLattice const& lattice,
                                             Integer const& target,
                                             std::int64_t bound,
                                             unsigned threads) {
  Integer const scale = Integer(lattice.rank()) * lattice.max_abs_entry() *
                        Integer(bound);
  Integer const limit = Integer(1) << 58;
  bool const narrow = scale < limit && abs(target) < limit &&
                      lattice.max_abs_entry() < limit;
  if (narrow) {
    return BoxSolver<__int128>(lattice, target, bound).solve(threads);
  }
  return BoxSolver<Integer>(lattice, target, bound).solve(threads);
}

}  // namespace carpet::detail
