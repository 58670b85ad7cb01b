#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "bosim/matrix.hpp"
#include "bosim/treedec.hpp"

namespace bosim {

/// Counts of DP tables computed: one Q per fresh local-permanent table, one P
/// per subset convolution. Reading or restricting an existing table is not a
/// computation and is not counted.
struct TableCounters {
  std::int64_t q_tables = 0;
  std::int64_t p_tables = 0;

  std::int64_t total() const { return q_tables + p_tables; }
  void reset() { q_tables = p_tables = 0; }
};

/// Process-wide table counters (single-owner mutation; reset between
/// measurements).
TableCounters& table_stats();

/// Dense DP table over subsets of a node's sorted row and column labels.
/// Entry (R, C) is addressed by a pair of bitmasks in the local orderings;
/// slots the DP never fills stay zero, which is exactly the "undefined
/// entries are 0" convention the convolution needs.
class NodeTable {
 public:
  NodeTable() = default;
  NodeTable(std::vector<int> row_labels, std::vector<int> col_labels);

  const std::vector<int>& row_labels() const { return rows_; }
  const std::vector<int>& col_labels() const { return cols_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  int col_count() const { return static_cast<int>(cols_.size()); }

  cxd at(std::uint32_t row_mask, std::uint32_t col_mask) const {
    return values_[index(row_mask, col_mask)];
  }
  cxd& slot(std::uint32_t row_mask, std::uint32_t col_mask) {
    return values_[index(row_mask, col_mask)];
  }

  /// Local bitmask of a sorted subset of this table's labels; every label
  /// must be present (lookup error otherwise).
  std::uint32_t row_mask_of(const std::vector<int>& labels) const;
  std::uint32_t col_mask_of(const std::vector<int>& labels) const;

  /// Value at full row set x full column set: the table's headline entry.
  cxd root_value() const;

 private:
  std::size_t index(std::uint32_t row_mask, std::uint32_t col_mask) const {
    return (static_cast<std::size_t>(row_mask) << cols_.size()) | col_mask;
  }

  std::vector<int> rows_;
  std::vector<int> cols_;
  std::vector<cxd> values_;
};

/// Local-permanent table of a node: entry (R, C) with |R| = |C| holds the
/// permanent of the submatrix of M on labels (R, C), filled by Laplace
/// recursion on the minimum row; non-square entries are zero, (0,0) is 1.
/// Counted as one Q-table computation.
NodeTable compute_Q(const std::vector<int>& rho, const std::vector<int>& kappa,
                    const ComplexMatrix& m, TableCounters* extra = nullptr);

/// View of an existing table on subsets of its labels: entries are copied,
/// nothing is recomputed, and no table counter moves. `rows` and `cols` must
/// be sorted subsets of the source's labels.
NodeTable restrict_table(const NodeTable& source, const std::vector<int>& rows,
                         const std::vector<int>& cols);

/// Link from a node to one child in the DP: the shared label sets (lambda)
/// index the helper views, the child-only sets (delta) shift reads into the
/// child's P-table.
struct ChildLink {
  std::vector<int> lambda_rho;
  std::vector<int> lambda_kappa;
  std::vector<int> delta_rho;
  std::vector<int> delta_kappa;
  const NodeTable* child_p = nullptr;
};

/// Splits a child's labels against its parent's into the shared/child-only
/// sets of the DP link. Inputs must be sorted.
ChildLink make_child_link(const std::vector<int>& parent_rho, const std::vector<int>& parent_kappa,
                          const std::vector<int>& child_rho, const std::vector<int>& child_kappa,
                          const NodeTable* child_p);

/// Subset convolution: combines the node's local table with, per child, the
/// sign-twisted shared view (-1)^|R| Q(R,C) and the child read
/// P[child](R u delta_rho, C u delta_kappa), summed over all ways to
/// partition each (R, C) among the participating tables. With no children
/// this is P = Q. Counted as one P-table computation.
NodeTable subset_convolution(const NodeTable& q, const std::vector<ChildLink>& links,
                             TableCounters* extra = nullptr);

/// Permanent of M evaluated through the decomposition: Q and P tables
/// leaves-to-root, then the root's full-set entry. Returns 0 without running
/// the DP when the tree does not cover every row/column label of M (the
/// represented matrix then has an uncovered all-zero row/column). Throws a
/// validation error when the decomposition is structurally invalid for M's
/// graph.
cxd permanent_from_tree(const TreeDecomposition& t, const ComplexMatrix& m,
                        TableCounters* extra = nullptr);

}  // namespace bosim
