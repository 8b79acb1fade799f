#ifndef DISTINCT_PATTERN_HPP
#define DISTINCT_PATTERN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "distinct/error.hpp"
#include "distinct/linalg.hpp"

namespace distinct {

/// A (0,1) matrix; S(P) is the subspace of matrices supported on its 1-cells.
class Pattern {
 public:
  Pattern(std::size_t m, std::size_t n) : m_(m), n_(n), cells_(m * n, 0) {
    require(m > 0 && n > 0, "pattern dimensions must be positive");
  }
  Pattern(std::size_t m, std::size_t n, std::vector<std::uint8_t> cells) : m_(m), n_(n), cells_(std::move(cells)) {
    require(m > 0 && n > 0, "pattern dimensions must be positive");
    require(cells_.size() == m * n, "pattern cell count must equal m * n");
    for (auto c : cells_) require(c <= 1, "pattern cells must be 0 or 1");
  }

  static Pattern identity(std::size_t n) {
    Pattern p(n, n);
    for (std::size_t i = 0; i < n; ++i) p.set(i, i, true);
    return p;
  }

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return cells_.at(i * n_ + j) != 0; }
  void set(std::size_t i, std::size_t j, bool on) { cells_.at(i * n_ + j) = on ? 1 : 0; }
  const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<std::uint8_t> cells_;
};

/// Injective column -> row assignment along 1-cells (0-based). A deleted
/// column maps to nothing.
struct DiagonalWitness {
  std::vector<std::optional<std::size_t>> row_of_column;
};

/// Whether S(P) has a dense subset of matrices with distinct singular values.
struct DensityVerdict {
  enum class Kind { FullDiagonal, DeletedDiagonal, None };

  bool dense = false;
  Kind kind = Kind::None;
  /// For DeletedDiagonal: the 0-based index i of the deleted row and column.
  std::optional<std::size_t> deleted;
  std::optional<DiagonalWitness> witness;
};

inline Pattern pattern_of(const ComplexMatrix& a, double tol = 0.0) {
  Pattern p(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      p.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), std::abs(a(i, j)) > tol);
  return p;
}

namespace detail {

/// Augmenting-path maximum matching of columns into rows, skipping one row
/// and one column when requested.
class ColumnMatcher {
 public:
  ColumnMatcher(const Pattern& p, std::optional<std::size_t> skip)
      : p_(p), skip_(skip), row_owner_(p.rows()), col_row_(p.cols()) {}

  std::optional<DiagonalWitness> saturating_matching() {
    for (std::size_t j = 0; j < p_.cols(); ++j) {
      if (skip_ == j) continue;
      visited_.assign(p_.rows(), false);
      if (!augment(j)) return std::nullopt;
    }
    return DiagonalWitness{col_row_};
  }

 private:
  bool augment(std::size_t col) {
    for (std::size_t row = 0; row < p_.rows(); ++row) {
      if (skip_ == row || visited_[row] || !p_(row, col)) continue;
      visited_[row] = true;
      if (!row_owner_[row] || augment(*row_owner_[row])) {
        row_owner_[row] = col;
        col_row_[col] = row;
        return true;
      }
    }
    return false;
  }

  const Pattern& p_;
  std::optional<std::size_t> skip_;
  std::vector<std::optional<std::size_t>> row_owner_;
  std::vector<std::optional<std::size_t>> col_row_;
  std::vector<bool> visited_;
};

}  // namespace detail

/// A witness iff every column can be matched to its own row along 1-cells.
inline std::optional<DiagonalWitness> has_nonzero_diagonal(const Pattern& p) {
  return detail::ColumnMatcher(p, std::nullopt).saturating_matching();
}

/// Same question for P_ii, the pattern with row i and column i removed.
/// Labels in the witness stay those of the original pattern.
inline std::optional<DiagonalWitness> has_nonzero_diagonal_deleted(const Pattern& p, std::size_t i) {
  require(i < p.cols() && i < p.rows(), "deleted index out of range");
  return detail::ColumnMatcher(p, i).saturating_matching();
}

/// S(P)_d is dense in S(P) iff P or some P_ii has a nonzero diagonal.
inline DensityVerdict density_distinct_singular(const Pattern& p) {
  require(p.rows() >= p.cols(), "patterns assume m >= n");
  if (auto w = has_nonzero_diagonal(p)) return {true, DensityVerdict::Kind::FullDiagonal, std::nullopt, std::move(w)};
  for (std::size_t i = 0; i < p.cols(); ++i)
    if (auto w = has_nonzero_diagonal_deleted(p, i)) return {true, DensityVerdict::Kind::DeletedDiagonal, i, std::move(w)};
  return {};
}

/// Integer matrix in S(P) with pairwise distinct singular values.
///
/// Column k (1-based) carries the value k in the row the witness assigns to
/// it and zeros elsewhere, so the Gram matrix is diag(1, 4, ..., n^2), with a
/// zero in place of the deleted column for a DeletedDiagonal verdict.
inline ComplexMatrix witness_matrix(const DensityVerdict& verdict, const Pattern& p) {
  require(verdict.dense && verdict.witness, "witness_matrix requires a dense verdict");
  const auto& rows = verdict.witness->row_of_column;
  require(rows.size() == p.cols(), "witness does not match the pattern");
  ComplexMatrix a = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.rows()), static_cast<Eigen::Index>(p.cols()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!rows[k]) continue;
    require(p(*rows[k], k), "witness uses a cell outside the pattern");
    a(static_cast<Eigen::Index>(*rows[k]), static_cast<Eigen::Index>(k)) = static_cast<double>(k + 1);
  }
  return a;
}

/// Exact diagonal of W^* W for the witness matrix: k^2, or 0 for the deleted column.
inline std::vector<long long> witness_gram_diagonal(const DensityVerdict& verdict) {
  require(verdict.dense && verdict.witness, "witness_gram_diagonal requires a dense verdict");
  std::vector<long long> d;
  const auto& rows = verdict.witness->row_of_column;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto v = static_cast<long long>(k + 1);
    d.push_back(rows[k] ? v * v : 0);
  }
  return d;
}

}  // namespace distinct

#endif  // DISTINCT_PATTERN_HPP
