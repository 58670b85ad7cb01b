#include "bosim/treedec.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "bosim/errors.hpp"

namespace bosim {

namespace {

std::vector<int> sorted_unique(std::vector<int> v, const char* what) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    fail(errc::domain, std::string("duplicate label in ") + what);
  return v;
}

bool sorted_contains(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string label_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

}  // namespace

bool BipartiteGraph::has_edge(int row, int col) const {
  for (const Edge& e : edges)
    if (e.row == row && e.col == col) return true;
  return false;
}

BipartiteGraph graph_of(const ComplexMatrix& m, double tol) {
  BipartiteGraph g;
  g.rows = m.row_labels();
  g.cols = m.col_labels();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > tol)
        g.edges.push_back({m.row_labels()[static_cast<std::size_t>(i)],
                           m.col_labels()[static_cast<std::size_t>(j)], m(i, j)});
  return g;
}

BipartiteGraph graph_of(const ComplexMatrix& m, const BandStructure& mask) {
  if (mask.size() != m.cols())
    fail(errc::domain, "band structure does not match the matrix column count");
  BipartiteGraph g;
  g.rows = m.row_labels();
  g.cols = m.col_labels();
  for (int j = 0; j < m.cols(); ++j)
    for (int i = mask.col_lo[static_cast<std::size_t>(j)];
         i <= mask.col_hi[static_cast<std::size_t>(j)]; ++i)
      g.edges.push_back({m.row_labels()[static_cast<std::size_t>(i)],
                         m.col_labels()[static_cast<std::size_t>(j)], m(i, j)});
  return g;
}

int TreeDecomposition::add_root(std::vector<int> rho, std::vector<int> kappa) {
  if (root_ >= 0) fail(errc::domain, "tree already has a root");
  TreeNode node;
  node.rho = sorted_unique(std::move(rho), "rho");
  node.kappa = sorted_unique(std::move(kappa), "kappa");
  nodes_.push_back(std::move(node));
  root_ = 0;
  return 0;
}

int TreeDecomposition::add_child(int parent, std::vector<int> rho, std::vector<int> kappa) {
  if (parent < 0 || parent >= size()) fail(errc::lookup, "unknown parent node");
  TreeNode node;
  node.parent = parent;
  node.rho = sorted_unique(std::move(rho), "rho");
  node.kappa = sorted_unique(std::move(kappa), "kappa");
  const int id = size();
  nodes_.push_back(std::move(node));
  nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
  return id;
}

const TreeNode& TreeDecomposition::node(int id) const {
  if (id < 0 || id >= size()) fail(errc::lookup, "unknown node id " + std::to_string(id));
  return nodes_[static_cast<std::size_t>(id)];
}

bool TreeDecomposition::is_path() const {
  for (const TreeNode& n : nodes_)
    if (n.children.size() > 1) return false;
  return true;
}

std::vector<int> TreeDecomposition::path_order() const {
  if (!is_path()) fail(errc::domain, "decomposition is not a path");
  std::vector<int> order;
  if (root_ < 0) return order;
  int id = root_;
  while (true) {
    order.push_back(id);
    const TreeNode& n = nodes_[static_cast<std::size_t>(id)];
    if (n.children.empty()) break;
    id = n.children.front();
  }
  return order;
}

std::optional<ValidationIssue> validate(const TreeDecomposition& t, const BipartiteGraph& g) {
  using Kind = ValidationIssue::Kind;

  // Structure: a single root, consistent parent/child links, all nodes
  // reachable (connected and acyclic).
  if (t.size() == 0) {
    if (!g.rows.empty() || !g.cols.empty())
      return ValidationIssue{Kind::vertex_cover, "empty decomposition for a nonempty graph"};
    return std::nullopt;
  }
  int roots = 0;
  for (int id = 0; id < t.size(); ++id) {
    const TreeNode& n = t.node(id);
    if (n.parent < 0) {
      ++roots;
      if (id != t.root()) return ValidationIssue{Kind::structure, "parentless node is not the root"};
    } else {
      const auto& siblings = t.node(n.parent).children;
      if (std::find(siblings.begin(), siblings.end(), id) == siblings.end())
        return ValidationIssue{Kind::structure, "node " + std::to_string(id) + " missing from its parent's children"};
    }
    for (int child : n.children)
      if (child < 0 || child >= t.size() || t.node(child).parent != id)
        return ValidationIssue{Kind::structure, "child link of node " + std::to_string(id) + " is inconsistent"};
  }
  if (roots != 1) return ValidationIssue{Kind::structure, "tree must have exactly one root"};
  std::vector<int> stack{t.root()};
  std::vector<bool> seen(static_cast<std::size_t>(t.size()), false);
  seen[static_cast<std::size_t>(t.root())] = true;
  int reached = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    ++reached;
    for (int child : t.node(id).children) {
      if (seen[static_cast<std::size_t>(child)])
        return ValidationIssue{Kind::structure, "cycle through node " + std::to_string(child)};
      seen[static_cast<std::size_t>(child)] = true;
      stack.push_back(child);
    }
  }
  if (reached != t.size())
    return ValidationIssue{Kind::structure, "tree is disconnected"};

  const std::unordered_set<int> graph_rows(g.rows.begin(), g.rows.end());
  const std::unordered_set<int> graph_cols(g.cols.begin(), g.cols.end());

  // T1 in both directions: graph vertices covered, node labels known.
  for (int id = 0; id < t.size(); ++id) {
    for (int r : t.node(id).rho)
      if (!graph_rows.count(r))
        return ValidationIssue{Kind::vertex_cover, "row label " + std::to_string(r) + " is not a graph vertex"};
    for (int c : t.node(id).kappa)
      if (!graph_cols.count(c))
        return ValidationIssue{Kind::vertex_cover, "column label " + std::to_string(c) + " is not a graph vertex"};
  }
  const auto covered = [&t](int label, bool is_row) {
    for (int id = 0; id < t.size(); ++id) {
      const TreeNode& n = t.node(id);
      if (sorted_contains(is_row ? n.rho : n.kappa, label)) return true;
    }
    return false;
  };
  for (int r : g.rows)
    if (!covered(r, true))
      return ValidationIssue{Kind::vertex_cover, "row " + std::to_string(r) + " appears in no node"};
  for (int c : g.cols)
    if (!covered(c, false))
      return ValidationIssue{Kind::vertex_cover, "column " + std::to_string(c) + " appears in no node"};

  // T2: every edge is contained in some node.
  for (const BipartiteGraph::Edge& e : g.edges) {
    bool found = false;
    for (int id = 0; id < t.size() && !found; ++id) {
      const TreeNode& n = t.node(id);
      found = sorted_contains(n.rho, e.row) && sorted_contains(n.kappa, e.col);
    }
    if (!found)
      return ValidationIssue{Kind::edge_cover,
                             "edge (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") covered by no node"};
  }

  // T3: the nodes holding any fixed label form a connected subtree.
  const auto connected = [&t](const std::vector<bool>& member) {
    int first = -1;
    int count = 0;
    for (int id = 0; id < t.size(); ++id)
      if (member[static_cast<std::size_t>(id)]) {
        if (first < 0) first = id;
        ++count;
      }
    if (count <= 1) return true;
    std::vector<int> stack{first};
    std::vector<bool> visited(static_cast<std::size_t>(t.size()), false);
    visited[static_cast<std::size_t>(first)] = true;
    int reached = 0;
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      ++reached;
      const TreeNode& n = t.node(id);
      std::vector<int> adjacent = n.children;
      if (n.parent >= 0) adjacent.push_back(n.parent);
      for (int other : adjacent) {
        if (!member[static_cast<std::size_t>(other)] || visited[static_cast<std::size_t>(other)]) continue;
        visited[static_cast<std::size_t>(other)] = true;
        stack.push_back(other);
      }
    }
    return reached == count;
  };
  const auto check_labels = [&](const std::vector<int>& labels, bool is_row)
      -> std::optional<ValidationIssue> {
    for (int label : labels) {
      std::vector<bool> member(static_cast<std::size_t>(t.size()), false);
      for (int id = 0; id < t.size(); ++id) {
        const TreeNode& n = t.node(id);
        member[static_cast<std::size_t>(id)] = sorted_contains(is_row ? n.rho : n.kappa, label);
      }
      if (!connected(member))
        return ValidationIssue{Kind::connectivity,
                               std::string(is_row ? "row" : "column") + " label " + std::to_string(label) +
                                   " spans a disconnected set of nodes"};
    }
    return std::nullopt;
  };
  if (auto issue = check_labels(g.rows, true)) return issue;
  if (auto issue = check_labels(g.cols, false)) return issue;
  return std::nullopt;
}

int treewidth(const TreeDecomposition& t) {
  int largest = 0;
  for (int id = 0; id < t.size(); ++id) {
    const TreeNode& n = t.node(id);
    largest = std::max(largest, static_cast<int>(n.rho.size() + n.kappa.size()));
  }
  return largest - 1;
}

namespace {

TreeDecomposition column_path(const ComplexMatrix& m,
                              const std::vector<std::pair<int, int>>& row_ranges) {
  TreeDecomposition t;
  int previous = -1;
  for (int c = 0; c < m.cols(); ++c) {
    std::vector<int> rho;
    const auto [lo, hi] = row_ranges[static_cast<std::size_t>(c)];
    for (int i = lo; i <= hi; ++i) rho.push_back(m.row_labels()[static_cast<std::size_t>(i)]);
    std::vector<int> kappa{m.col_labels()[static_cast<std::size_t>(c)]};
    previous = (previous < 0) ? t.add_root(std::move(rho), std::move(kappa))
                              : t.add_child(previous, std::move(rho), std::move(kappa));
  }
  return t;
}

}  // namespace

TreeDecomposition linear_banded_decomposition(const ComplexMatrix& m, const Bandwidths& b) {
  std::vector<std::pair<int, int>> ranges;
  ranges.reserve(static_cast<std::size_t>(m.cols()));
  for (int c = 0; c < m.cols(); ++c) {
    const int lo = std::max(0, c - b.w2);
    const int hi = std::min(m.rows() - 1, c + b.w1);
    ranges.emplace_back(lo, hi);
  }
  return column_path(m, ranges);
}

TreeDecomposition linear_banded_decomposition(const ComplexMatrix& m, const BandStructure& band) {
  if (band.size() != m.cols())
    fail(errc::domain, "band structure does not match the matrix column count");
  std::vector<std::pair<int, int>> ranges;
  ranges.reserve(static_cast<std::size_t>(m.cols()));
  for (int c = 0; c < m.cols(); ++c) {
    const int lo = band.col_lo[static_cast<std::size_t>(c)];
    const int hi = band.col_hi[static_cast<std::size_t>(c)];
    if (lo < 0 || hi >= m.rows() || lo > hi + 1)
      fail(errc::domain, "band interval of column " + std::to_string(c) + " is out of range");
    ranges.emplace_back(lo, hi);
  }
  return column_path(m, ranges);
}

TreeDecomposition permute_columns(const TreeDecomposition& t, const std::vector<int>& alpha) {
  const int universe = static_cast<int>(alpha.size());
  std::vector<int> inverse(static_cast<std::size_t>(universe), -1);
  for (int c = 0; c < universe; ++c) {
    const int image = alpha[static_cast<std::size_t>(c)];
    if (image < 0 || image >= universe || inverse[static_cast<std::size_t>(image)] >= 0)
      fail(errc::domain, "alpha is not a permutation of the column-id universe");
    inverse[static_cast<std::size_t>(image)] = c;
  }

  TreeDecomposition out = t;
  // Rebuild with relabeled kappa, preserving ids and shape.
  TreeDecomposition relabeled;
  for (int id = 0; id < t.size(); ++id) {
    const TreeNode& n = t.node(id);
    std::vector<int> kappa;
    kappa.reserve(n.kappa.size());
    for (int c : n.kappa) {
      if (c < 0 || c >= universe)
        fail(errc::domain, "column label " + std::to_string(c) + " outside alpha's universe");
      kappa.push_back(inverse[static_cast<std::size_t>(c)]);
    }
    if (n.parent < 0)
      relabeled.add_root(n.rho, std::move(kappa));
    else
      relabeled.add_child(n.parent, n.rho, std::move(kappa));
  }
  return relabeled;
}

TreeDecomposition restrict(const TreeDecomposition& t, const std::vector<int>& rows_keep,
                           const std::vector<int>& cols_keep) {
  std::vector<int> rows = rows_keep;
  std::sort(rows.begin(), rows.end());
  std::vector<int> cols = cols_keep;
  std::sort(cols.begin(), cols.end());
  TreeDecomposition out;
  for (int id = 0; id < t.size(); ++id) {
    const TreeNode& n = t.node(id);
    std::vector<int> rho = sorted_intersection(n.rho, rows);
    std::vector<int> kappa = sorted_intersection(n.kappa, cols);
    if (n.parent < 0)
      out.add_root(std::move(rho), std::move(kappa));
    else
      out.add_child(n.parent, std::move(rho), std::move(kappa));
  }
  return out;
}

TreeDecomposition remove_redundant(const TreeDecomposition& t, int node_id) {
  const TreeNode& victim = t.node(node_id);
  if (!victim.kappa.empty())
    fail(errc::redundancy, "node " + std::to_string(node_id) + " still carries columns");
  for (int r : victim.rho) {
    bool elsewhere = false;
    for (int id = 0; id < t.size() && !elsewhere; ++id)
      elsewhere = id != node_id && sorted_contains(t.node(id).rho, r);
    if (!elsewhere)
      fail(errc::redundancy, "row " + std::to_string(r) + " appears only in node " +
                                 std::to_string(node_id) + "; the represented permanent is 0");
  }
  if (victim.children.size() > 1)
    fail(errc::domain, "cannot splice a node with more than one child");

  TreeDecomposition out;
  // add_root/add_child expect parents to exist, so emit in an order where
  // every surviving ancestor precedes its descendants; walking the original
  // tree from its root does exactly that (the splice never reverses an edge).
  std::vector<int> order;
  std::vector<int> stack{t.root()};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    for (int child : t.node(id).children) stack.push_back(child);
  }
  std::vector<int> remap(static_cast<std::size_t>(t.size()), -1);
  for (int id : order) {
    if (id == node_id) continue;
    const TreeNode& n = t.node(id);
    // New parent: the old one, except the victim's child bridges to the
    // victim's parent (or becomes the root).
    int parent = n.parent;
    if (parent == node_id) parent = victim.parent;
    const int new_id = (parent < 0) ? out.add_root(n.rho, n.kappa)
                                    : out.add_child(remap[static_cast<std::size_t>(parent)],
                                                    n.rho, n.kappa);
    remap[static_cast<std::size_t>(id)] = new_id;
  }
  if (out.size() != t.size() - 1) fail(errc::domain, "splice left the tree inconsistent");
  return out;
}

TreeDecomposition replace_with_dummy(const TreeDecomposition& t, int position) {
  const std::vector<int> path = t.path_order();
  const int len = static_cast<int>(path.size());
  if (position < 0 || position >= len) fail(errc::domain, "dummy position outside the path");

  std::vector<int> dummy_rho;
  if (position > 0 && position < len - 1)
    dummy_rho = sorted_intersection(t.node(path[static_cast<std::size_t>(position) - 1]).rho,
                                    t.node(path[static_cast<std::size_t>(position) + 1]).rho);

  TreeDecomposition out;
  const int dummy = out.add_root(std::move(dummy_rho), {});
  int attach = dummy;
  for (int i = position - 1; i >= 0; --i) {
    const TreeNode& n = t.node(path[static_cast<std::size_t>(i)]);
    attach = out.add_child(attach, n.rho, n.kappa);
  }
  attach = dummy;
  for (int i = position + 1; i < len; ++i) {
    const TreeNode& n = t.node(path[static_cast<std::size_t>(i)]);
    attach = out.add_child(attach, n.rho, n.kappa);
  }
  return out;
}

std::string dump(const TreeDecomposition& t) {
  std::ostringstream out;
  for (int id = 0; id < t.size(); ++id) {
    const TreeNode& n = t.node(id);
    out << id << ": rho=" << label_list(n.rho) << " kappa=" << label_list(n.kappa)
        << " parent=" << n.parent << "\n";
  }
  return out.str();
}

}  // namespace bosim
