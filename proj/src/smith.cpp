#include <algorithm>
#include <optional>
#include <utility>

#include "carpet/lattice.hpp"

namespace carpet {

namespace {

class SmithReducer {
 public:
  explicit SmithReducer(std::vector<std::vector<Integer>> m)
      : m_(std::move(m)),
        rows_(m_.size()),
        cols_(rows_ == 0 ? 0 : m_.front().size()) {
    for (auto const& row : m_) {
      if (row.size() != cols_) throw InvalidArgument("ragged matrix");
    }
  }

  std::vector<Integer> run() {
    std::size_t const n = std::min(rows_, cols_);
    std::vector<Integer> diag;
    for (std::size_t t = 0; t < n; ++t) {
      if (!move_smallest_to(t)) break;  // remaining block is zero
      while (true) {
        if (!clear_row_and_column(t)) continue;
        // Pivot must divide the whole remaining block.
        auto bad = find_non_multiple(t);
        if (!bad) break;
        for (std::size_t j = t; j < cols_; ++j) m_[t][j] += m_[*bad][j];
      }
      diag.push_back(abs(m_[t][t]));
    }
    diag.resize(n, Integer(0));
    return diag;
  }

 private:
  bool move_smallest_to(std::size_t t) {
    std::size_t bi = rows_, bj = cols_;
    for (std::size_t i = t; i < rows_; ++i) {
      for (std::size_t j = t; j < cols_; ++j) {
        if (m_[i][j] == 0) continue;
        if (bi == rows_ || abs(m_[i][j]) < abs(m_[bi][bj])) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == rows_) return false;
    std::swap(m_[t], m_[bi]);
    for (auto& row : m_) std::swap(row[t], row[bj]);
    return true;
  }

  // Reduces row t and column t modulo the pivot. Returns false when a
  // smaller remainder appeared and became the new pivot.
  bool clear_row_and_column(std::size_t t) {
    Integer const pivot = m_[t][t];
    for (std::size_t i = t + 1; i < rows_; ++i) {
      if (m_[i][t] == 0) continue;
      Integer const q = m_[i][t] / pivot;
      for (std::size_t j = t; j < cols_; ++j) m_[i][j] -= q * m_[t][j];
    }
    for (std::size_t j = t + 1; j < cols_; ++j) {
      if (m_[t][j] == 0) continue;
      Integer const q = m_[t][j] / pivot;
      for (std::size_t i = t; i < rows_; ++i) m_[i][j] -= q * m_[i][t];
    }
    bool clean = true;
    for (std::size_t i = t + 1; i < rows_; ++i) clean = clean && m_[i][t] == 0;
    for (std::size_t j = t + 1; j < cols_; ++j) clean = clean && m_[t][j] == 0;
    if (!clean) move_smallest_to_line(t);
    return clean;
  }

  // Brings the smallest non-zero entry of row t / column t to (t, t).
  void move_smallest_to_line(std::size_t t) {
    std::size_t bi = t, bj = t;
    for (std::size_t i = t + 1; i < rows_; ++i) {
      if (m_[i][t] != 0 && abs(m_[i][t]) < abs(m_[bi][bj])) {
        bi = i;
        bj = t;
      }
    }
    for (std::size_t j = t + 1; j < cols_; ++j) {
      if (m_[t][j] != 0 && abs(m_[t][j]) < abs(m_[bi][bj])) {
        bi = t;
        bj = j;
      }
    }
    if (bi != t) std::swap(m_[t], m_[bi]);
    if (bj != t) {
      for (auto& row : m_) std::swap(row[t], row[bj]);
    }
  }

  std::optional<std::size_t> find_non_multiple(std::size_t t) const {
    Integer const& pivot = m_[t][t];
    for (std::size_t i = t + 1; i < rows_; ++i) {
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (m_[i][j] % pivot != 0) return i;
      }
    }
    return std::nullopt;
  }

  std::vector<std::vector<Integer>> m_;
  std::size_t rows_;
  std::size_t cols_;
};

}  // namespace

std::vector<Integer> smith_invariants(
    std::vector<std::vector<Integer>> matrix) {
  return SmithReducer(std::move(matrix)).run();
}

}  // namespace carpet
