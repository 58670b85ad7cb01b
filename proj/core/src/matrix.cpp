#include "bosim/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "bosim/errors.hpp"

namespace bosim {

namespace {

void check_dims(int rows, int cols) {
  if (rows < 0 || cols < 0) fail(errc::size_mismatch, "matrix dimensions must be nonnegative");
}

std::vector<int> identity_labels(int n) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i;
  return labels;
}

void check_labels(const std::vector<int>& labels, int expected, const char* axis) {
  if (static_cast<int>(labels.size()) != expected)
    fail(errc::size_mismatch, std::string(axis) + " label count does not match dimension");
  std::unordered_set<int> seen;
  for (int label : labels) {
    if (!seen.insert(label).second)
      fail(errc::domain, std::string("duplicate ") + axis + " label " + std::to_string(label));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cxd{});
  row_labels_ = identity_labels(rows);
  col_labels_ = identity_labels(cols);
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cxd> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dims(rows, cols);
  if (entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    fail(errc::size_mismatch, "entry count does not match dimensions");
  for (const cxd& v : entries_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(errc::domain, "matrix entries must be finite");
  }
  row_labels_ = identity_labels(rows);
  col_labels_ = identity_labels(cols);
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void ComplexMatrix::set_row_labels(std::vector<int> labels) {
  check_labels(labels, rows_, "row");
  row_labels_ = std::move(labels);
}

void ComplexMatrix::set_col_labels(std::vector<int> labels) {
  check_labels(labels, cols_, "column");
  col_labels_ = std::move(labels);
}

bool ComplexMatrix::has_row_label(int label) const {
  return std::find(row_labels_.begin(), row_labels_.end(), label) != row_labels_.end();
}

bool ComplexMatrix::has_col_label(int label) const {
  return std::find(col_labels_.begin(), col_labels_.end(), label) != col_labels_.end();
}

int ComplexMatrix::row_position(int label) const {
  const auto it = std::find(row_labels_.begin(), row_labels_.end(), label);
  if (it == row_labels_.end()) fail(errc::lookup, "unknown row label " + std::to_string(label));
  return static_cast<int>(it - row_labels_.begin());
}

int ComplexMatrix::col_position(int label) const {
  const auto it = std::find(col_labels_.begin(), col_labels_.end(), label);
  if (it == col_labels_.end()) fail(errc::lookup, "unknown column label " + std::to_string(label));
  return static_cast<int>(it - col_labels_.begin());
}

ComplexMatrix submatrix(const ComplexMatrix& m, std::span<const int> rows,
                        std::span<const int> cols) {
  std::vector<int> row_pos;
  row_pos.reserve(rows.size());
  for (int label : rows) row_pos.push_back(m.row_position(label));
  std::vector<int> col_pos;
  col_pos.reserve(cols.size());
  for (int label : cols) col_pos.push_back(m.col_position(label));

  ComplexMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < row_pos.size(); ++i)
    for (std::size_t j = 0; j < col_pos.size(); ++j)
      out(static_cast<int>(i), static_cast<int>(j)) =
          m(row_pos[i], col_pos[static_cast<std::size_t>(j)]);

  const auto has_repeats = [](std::span<const int> ids) {
    std::unordered_set<int> seen;
    for (int id : ids)
      if (!seen.insert(id).second) return true;
    return false;
  };
  if (!has_repeats(rows)) out.set_row_labels(std::vector<int>(rows.begin(), rows.end()));
  if (!has_repeats(cols)) out.set_col_labels(std::vector<int>(cols.begin(), cols.end()));
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) fail(errc::size_mismatch, "inner dimensions differ in matmul");
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const cxd aik = a(i, k);
      if (aik == cxd{}) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  out.set_row_labels(a.row_labels());
  out.set_col_labels(b.col_labels());
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  out.set_row_labels(m.col_labels());
  out.set_col_labels(m.row_labels());
  return out;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) fail(errc::size_mismatch, "unitarity defect needs a square matrix");
  const ComplexMatrix gram = matmul(adjoint(u), u);
  double worst = 0.0;
  for (int i = 0; i < gram.rows(); ++i) {
    for (int j = 0; j < gram.cols(); ++j) {
      const cxd expect = (i == j) ? cxd{1.0, 0.0} : cxd{};
      worst = std::max(worst, std::abs(gram(i, j) - expect));
    }
  }
  return worst;
}

Bandwidths bandwidths_of(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) fail(errc::size_mismatch, "bandwidths_of needs a square matrix");
  Bandwidths best{0, 0};
  int best_span = 0;  // nonzero-row span of the widest column seen so far
  for (int j = 0; j < m.cols(); ++j) {
    int lo = -1;
    int hi = -1;
    for (int i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > tol) {
        if (lo < 0) lo = i;
        hi = i;
      }
    }
    if (lo < 0) continue;  // all-zero column spans nothing
    const int span = hi - lo + 1;
    if (span > best_span) {
      best_span = span;
      best = Bandwidths{std::max(hi - j, 0), std::max(j - lo, 0)};
    }
  }
  return best;
}

Bandwidths enclosing_bandwidths(const ComplexMatrix& m, double tol) {
  Bandwidths b{0, 0};
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) > tol) {
        b.w1 = std::max(b.w1, i - j);
        b.w2 = std::max(b.w2, j - i);
      }
    }
  }
  return b;
}

}  // namespace bosim
