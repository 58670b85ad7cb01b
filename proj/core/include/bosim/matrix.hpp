#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bosim {

using cxd = std::complex<double>;

/// Dense row-major complex matrix carrying global row/column labels.
///
/// Labels are the identity of rows and columns across submatrix extraction,
/// tree decompositions, and DP tables: a "row 4" means the same physical row
/// wherever it appears. Freshly constructed matrices use identity labels
/// 0..n-1. Labels on one axis never repeat.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  /// Zero matrix with identity labels.
  ComplexMatrix(int rows, int cols);

  /// Matrix from row-major entries (size must be rows*cols); identity labels.
  /// Entries must be finite: NaN/Inf are refused.
  ComplexMatrix(int rows, int cols, std::vector<cxd> entries);

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cxd& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cxd& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<cxd>& entries() const { return entries_; }

  const std::vector<int>& row_labels() const { return row_labels_; }
  const std::vector<int>& col_labels() const { return col_labels_; }

  /// Replace labels; sizes must match the dimensions and labels must be
  /// duplicate-free.
  void set_row_labels(std::vector<int> labels);
  void set_col_labels(std::vector<int> labels);

  bool has_row_label(int label) const;
  bool has_col_label(int label) const;

  /// Position of a global label; throws a lookup error when absent.
  int row_position(int label) const;
  int col_position(int label) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cxd> entries_;
  std::vector<int> row_labels_;
  std::vector<int> col_labels_;
};

/// Label-based extraction: result row l is M's row with label rows[l] (same
/// for columns). Requested ids must exist. Repeating an id is allowed and
/// copies the row/column once per mention; since labels on an axis may not
/// repeat, an axis with repeated requests gets fresh positional labels
/// 0..k-1, otherwise the original labels are preserved.
ComplexMatrix submatrix(const ComplexMatrix& m, std::span<const int> rows,
                        std::span<const int> cols);

/// Matrix product a*b (positional); result labels: a's rows, b's columns.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose; labels swap axes.
ComplexMatrix adjoint(const ComplexMatrix& m);

/// max_ij |(U^dagger U - I)_ij|, the unitarity defect.
double unitarity_defect(const ComplexMatrix& u);

/// Lower/upper bandwidth pair: entries (i,j) may be nonzero only when
/// i - j <= w1 and j - i <= w2. Width w = w1 + w2 + 1 bounds the number of
/// nonzero entries in any column.
struct Bandwidths {
  int w1 = 0;  ///< reach below the diagonal
  int w2 = 0;  ///< reach above the diagonal
  int w() const { return w1 + w2 + 1; }
};

/// Bandwidths of the widest column of a square matrix: among all columns,
/// finds the one whose nonzero rows span the largest interval (ties: lowest
/// column index) and reports its (below-diagonal, above-diagonal) reach, so
/// that w() equals the maximum number of nonzero entries in any column.
/// Entries with magnitude <= tol count as zero.
Bandwidths bandwidths_of(const ComplexMatrix& m, double tol = 1e-12);

/// Smallest uniform band enclosing every nonzero of the matrix:
/// w1 = max(i - j), w2 = max(j - i) over entries with |m_ij| > tol. Unlike
/// bandwidths_of, the returned pair covers all columns simultaneously, which
/// is what a column-path tree decomposition of an arbitrary matrix needs.
Bandwidths enclosing_bandwidths(const ComplexMatrix& m, double tol = 1e-12);

}  // namespace bosim
