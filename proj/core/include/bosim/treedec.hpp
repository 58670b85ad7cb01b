#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bosim/matrix.hpp"
#include "bosim/photonics.hpp"

namespace bosim {

/// Bipartite graph of a matrix: row vertices, column vertices, and one
/// weighted edge per (structurally) nonzero entry.
struct BipartiteGraph {
  struct Edge {
    int row = 0;
    int col = 0;
    cxd weight;
  };

  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<Edge> edges;

  bool has_edge(int row, int col) const;
};

/// Graph with an edge wherever |m_ij| > tol. Vertices are the matrix labels.
BipartiteGraph graph_of(const ComplexMatrix& m, double tol = 1e-12);

/// Graph with an edge wherever the band structure marks the slot as
/// structurally reachable, regardless of the numeric value. The matrix must
/// carry identity labels matching the band's size.
BipartiteGraph graph_of(const ComplexMatrix& m, const BandStructure& mask);

/// One node of a tree decomposition: its tree links plus the row labels
/// (rho) and column labels (kappa) it carries. Label lists are sorted.
struct TreeNode {
  int parent = -1;
  std::vector<int> children;
  std::vector<int> rho;
  std::vector<int> kappa;
};

/// Rooted tree whose nodes carry row/column label sets. Satisfies, with
/// respect to a declared graph (checkable via validate):
///   T1  every graph vertex appears in some node,
///   T2  every edge has a node containing both endpoints,
///   T3  the nodes containing any fixed label form a connected subtree.
class TreeDecomposition {
 public:
  /// Adds the root; only valid once. Returns its id.
  int add_root(std::vector<int> rho, std::vector<int> kappa);

  /// Adds a child of an existing node. Returns its id.
  int add_child(int parent, std::vector<int> rho, std::vector<int> kappa);

  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return root_; }
  const TreeNode& node(int id) const;

  /// True when every node has at most one child (the tree is a path).
  bool is_path() const;

  /// Node ids from the root down; requires a path.
  std::vector<int> path_order() const;

 private:
  std::vector<TreeNode> nodes_;
  int root_ = -1;
};

/// First violated axiom, if any, with a human-readable witness.
struct ValidationIssue {
  enum class Kind { structure, vertex_cover, edge_cover, connectivity };
  Kind kind;
  std::string witness;
};

/// Checks T1-T3 of the decomposition against the graph (and that the node
/// labels stay within the graph's vertices). Returns the first violation or
/// nullopt when the decomposition is valid.
std::optional<ValidationIssue> validate(const TreeDecomposition& t, const BipartiteGraph& g);

/// max over nodes of |rho| + |kappa|, minus one.
int treewidth(const TreeDecomposition& t);

/// Column-path decomposition of a uniformly banded matrix: node t_c (root
/// t_0, one node per column, each the child of the previous) carries column
/// label c and the row labels at positions [c - b.w2, c + b.w1] clipped to
/// the row range.
TreeDecomposition linear_banded_decomposition(const ComplexMatrix& m, const Bandwidths& b);

/// Column-path decomposition from exact per-column structural intervals
/// (the circuit case): node t_c carries rows [band.col_lo[c], band.col_hi[c]].
TreeDecomposition linear_banded_decomposition(const ComplexMatrix& m, const BandStructure& band);

/// Relabels column labels j -> alpha^{-1}(j); tree shape and rows unchanged.
/// alpha[c] is the image of c; it must be a bijection on {0..|alpha|-1} and
/// cover every column label used by the tree.
TreeDecomposition permute_columns(const TreeDecomposition& t, const std::vector<int>& alpha);

/// Keeps only the given row/column labels in every node; tree shape
/// unchanged. Represents the submatrix on (rows_keep, cols_keep).
TreeDecomposition restrict(const TreeDecomposition& t, const std::vector<int>& rows_keep,
                           const std::vector<int>& cols_keep);

/// Splices out a node that carries no columns and whose rows all appear
/// elsewhere (the redundant-node rule): a leaf is dropped, a single-child
/// node is bridged (parent adopts the child, or the child becomes the new
/// root). Refuses nodes failing the precondition (redundancy error: the
/// caller must treat the represented permanent as 0) and nodes with two or
/// more children (domain error).
TreeDecomposition remove_redundant(const TreeDecomposition& t, int node_id);

/// On a path decomposition, deletes the node at `position` (0-based along
/// the path from the root) and re-roots at a fresh column-free dummy node:
/// the dummy's children are the two neighbours, the left segment is reversed
/// (t_{j-1} child of the dummy, t_{j-2} below it, ..), the right segment is
/// unchanged. The dummy's rows are the intersection of both neighbours' rows
/// when both exist, empty otherwise.
TreeDecomposition replace_with_dummy(const TreeDecomposition& t, int position);

/// One line per node: "id: rho=[..] kappa=[..] parent=id".
std::string dump(const TreeDecomposition& t);

}  // namespace bosim
