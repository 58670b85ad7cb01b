#include "bosim/cp_permanent.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "bosim/errors.hpp"

namespace bosim {

namespace {

constexpr int kMaxTableBits = 22;  // dense-table memory ceiling (2^22 entries)

std::uint32_t full_mask(int bits) { return bits == 0 ? 0u : ((1u << bits) - 1u); }

std::uint32_t mask_of(const std::vector<int>& universe, const std::vector<int>& labels,
                      const char* what) {
  std::uint32_t mask = 0;
  for (int label : labels) {
    const auto it = std::lower_bound(universe.begin(), universe.end(), label);
    if (it == universe.end() || *it != label)
      fail(errc::lookup, std::string(what) + " label " + std::to_string(label) +
                             " not in the table's universe");
    mask |= 1u << (it - universe.begin());
  }
  return mask;
}

void bump_q(TableCounters* extra) {
  ++table_stats().q_tables;
  if (extra) ++extra->q_tables;
}

void bump_p(TableCounters* extra) {
  ++table_stats().p_tables;
  if (extra) ++extra->p_tables;
}

}  // namespace

TableCounters& table_stats() {
  static TableCounters counters;
  return counters;
}

NodeTable::NodeTable(std::vector<int> row_labels, std::vector<int> col_labels)
    : rows_(std::move(row_labels)), cols_(std::move(col_labels)) {
  if (!std::is_sorted(rows_.begin(), rows_.end()) || !std::is_sorted(cols_.begin(), cols_.end()))
    fail(errc::domain, "table labels must be sorted");
  const int bits = static_cast<int>(rows_.size() + cols_.size());
  if (bits > kMaxTableBits)
    fail(errc::capacity, "dense DP table over " + std::to_string(bits) + " labels exceeds 2^" +
                             std::to_string(kMaxTableBits) + " entries");
  values_.assign(std::size_t{1} << bits, cxd{});
}

std::uint32_t NodeTable::row_mask_of(const std::vector<int>& labels) const {
  return mask_of(rows_, labels, "row");
}

std::uint32_t NodeTable::col_mask_of(const std::vector<int>& labels) const {
  return mask_of(cols_, labels, "column");
}

cxd NodeTable::root_value() const {
  return at(full_mask(row_count()), full_mask(col_count()));
}

NodeTable compute_Q(const std::vector<int>& rho, const std::vector<int>& kappa,
                    const ComplexMatrix& m, TableCounters* extra) {
  NodeTable q(rho, kappa);
  bump_q(extra);
  const int nr = q.row_count();
  const int nc = q.col_count();
  std::vector<int> row_pos(static_cast<std::size_t>(nr));
  std::vector<int> col_pos(static_cast<std::size_t>(nc));
  for (int i = 0; i < nr; ++i) row_pos[static_cast<std::size_t>(i)] = m.row_position(rho[static_cast<std::size_t>(i)]);
  for (int j = 0; j < nc; ++j) col_pos[static_cast<std::size_t>(j)] = m.col_position(kappa[static_cast<std::size_t>(j)]);

  q.slot(0, 0) = {1.0, 0.0};
  // Laplace recursion on the minimum row of each subset; ascending row masks
  // guarantee the smaller subproblems are already filled. Non-square
  // combinations stay zero.
  for (std::uint32_t rmask = 1; rmask <= full_mask(nr); ++rmask) {
    const int size = std::popcount(rmask);
    const int pivot = std::countr_zero(rmask);
    const std::uint32_t rest = rmask ^ (1u << pivot);
    for (std::uint32_t cmask = 0; cmask <= full_mask(nc); ++cmask) {
      if (std::popcount(cmask) != size) continue;
      cxd sum{};
      for (std::uint32_t bits = cmask; bits != 0; bits &= bits - 1) {
        const int c = std::countr_zero(bits);
        sum += m(row_pos[static_cast<std::size_t>(pivot)], col_pos[static_cast<std::size_t>(c)]) *
               q.at(rest, cmask ^ (1u << c));
      }
      q.slot(rmask, cmask) = sum;
    }
    if (rmask == full_mask(nr)) break;  // avoid wraparound when nr == 32
  }
  return q;
}

NodeTable restrict_table(const NodeTable& source, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
  NodeTable out(rows, cols);
  // Positions of the kept labels inside the source (lookup error when a
  // label is not there), reused to translate every local mask.
  const std::uint32_t src_rows = source.row_mask_of(rows);
  const std::uint32_t src_cols = source.col_mask_of(cols);
  std::vector<std::uint32_t> row_bits;
  for (std::uint32_t bits = src_rows; bits != 0; bits &= bits - 1)
    row_bits.push_back(bits & (~bits + 1));
  std::vector<std::uint32_t> col_bits;
  for (std::uint32_t bits = src_cols; bits != 0; bits &= bits - 1)
    col_bits.push_back(bits & (~bits + 1));

  const auto expand = [](std::uint32_t mask, const std::vector<std::uint32_t>& bit_of) {
    std::uint32_t out_mask = 0;
    for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1)
      out_mask |= bit_of[static_cast<std::size_t>(std::countr_zero(bits))];
    return out_mask;
  };

  const std::uint32_t full_r = full_mask(out.row_count());
  const std::uint32_t full_c = full_mask(out.col_count());
  for (std::uint32_t rmask = 0;; ++rmask) {
    const std::uint32_t sr = expand(rmask, row_bits);
    for (std::uint32_t cmask = 0;; ++cmask) {
      out.slot(rmask, cmask) = source.at(sr, expand(cmask, col_bits));
      if (cmask == full_c) break;
    }
    if (rmask == full_r) break;
  }
  return out;
}

ChildLink make_child_link(const std::vector<int>& parent_rho, const std::vector<int>& parent_kappa,
                          const std::vector<int>& child_rho, const std::vector<int>& child_kappa,
                          const NodeTable* child_p) {
  ChildLink link;
  link.child_p = child_p;
  std::set_intersection(child_rho.begin(), child_rho.end(), parent_rho.begin(), parent_rho.end(),
                        std::back_inserter(link.lambda_rho));
  std::set_intersection(child_kappa.begin(), child_kappa.end(), parent_kappa.begin(),
                        parent_kappa.end(), std::back_inserter(link.lambda_kappa));
  std::set_difference(child_rho.begin(), child_rho.end(), parent_rho.begin(), parent_rho.end(),
                      std::back_inserter(link.delta_rho));
  std::set_difference(child_kappa.begin(), child_kappa.end(), parent_kappa.begin(),
                      parent_kappa.end(), std::back_inserter(link.delta_kappa));
  return link;
}

namespace {

/// Iterates sub = every submask of mask (including 0 and mask itself).
template <typename F>
void for_each_submask(std::uint32_t mask, F&& body) {
  std::uint32_t sub = mask;
  while (true) {
    body(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

/// Translates a parent-local mask (subset of the shared labels) into the
/// child-local mask via a per-bit lookup.
std::uint32_t translate(std::uint32_t mask, const std::vector<std::uint32_t>& bit_map) {
  std::uint32_t out = 0;
  for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1)
    out |= bit_map[static_cast<std::size_t>(std::countr_zero(bits))];
  return out;
}

}  // namespace

NodeTable subset_convolution(const NodeTable& q, const std::vector<ChildLink>& links,
                             TableCounters* extra) {
  bump_p(extra);
  NodeTable acc = q;  // with no children P = Q

  const int nr = q.row_count();
  const int nc = q.col_count();
  for (const ChildLink& link : links) {
    if (link.child_p == nullptr) fail(errc::ordering, "child table missing in subset convolution");
    const NodeTable& child = *link.child_p;

    const std::uint32_t lam_r = q.row_mask_of(link.lambda_rho);
    const std::uint32_t lam_c = q.col_mask_of(link.lambda_kappa);
    // Parent-local bit -> child-local bit for every shared label.
    std::vector<std::uint32_t> row_bit_map(static_cast<std::size_t>(nr), 0);
    for (int label : link.lambda_rho)
      row_bit_map[static_cast<std::size_t>(std::countr_zero(q.row_mask_of({label})))] =
          child.row_mask_of({label});
    std::vector<std::uint32_t> col_bit_map(static_cast<std::size_t>(nc), 0);
    for (int label : link.lambda_kappa)
      col_bit_map[static_cast<std::size_t>(std::countr_zero(q.col_mask_of({label})))] =
          child.col_mask_of({label});
    const std::uint32_t delta_r = child.row_mask_of(link.delta_rho);
    const std::uint32_t delta_c = child.col_mask_of(link.delta_kappa);

    // Pair table of this child over subsets of the shared labels:
    // H(R, C) = sum over R = Ra u Rb, C = Ca u Cb (disjoint) of
    //           (-1)^|Ra| Q(Ra, Ca) * P[child](Rb u delta_rho, Cb u delta_kappa).
    NodeTable pair(q.row_labels(), q.col_labels());
    for_each_submask(lam_r, [&](std::uint32_t rmask) {
      for_each_submask(lam_c, [&](std::uint32_t cmask) {
        cxd sum{};
        for_each_submask(rmask, [&](std::uint32_t ra) {
          const double sign = (std::popcount(ra) & 1) ? -1.0 : 1.0;
          const std::uint32_t rb = rmask ^ ra;
          for_each_submask(cmask, [&](std::uint32_t ca) {
            const cxd qv = q.at(ra, ca);
            if (qv == cxd{}) return;
            const std::uint32_t cb = cmask ^ ca;
            sum += sign * qv *
                   child.at(translate(rb, row_bit_map) | delta_r,
                            translate(cb, col_bit_map) | delta_c);
          });
        });
        pair.slot(rmask, cmask) = sum;
      });
    });

    // Fold the pair table into the accumulator: one more disjoint split of
    // every (R, C), with the pair factor drawing only from shared labels.
    NodeTable next(q.row_labels(), q.col_labels());
    const std::uint32_t full_r = full_mask(nr);
    const std::uint32_t full_c = full_mask(nc);
    for (std::uint32_t rmask = 0;; ++rmask) {
      for (std::uint32_t cmask = 0;; ++cmask) {
        cxd sum{};
        for_each_submask(rmask & lam_r, [&](std::uint32_t r1) {
          for_each_submask(cmask & lam_c, [&](std::uint32_t c1) {
            const cxd h = pair.at(r1, c1);
            if (h == cxd{}) return;
            sum += acc.at(rmask ^ r1, cmask ^ c1) * h;
          });
        });
        next.slot(rmask, cmask) = sum;
        if (cmask == full_c) break;
      }
      if (rmask == full_r) break;
    }
    acc = std::move(next);
  }
  return acc;
}

cxd permanent_from_tree(const TreeDecomposition& t, const ComplexMatrix& m,
                        TableCounters* extra) {
  if (t.size() == 0) return (m.rows() == 0 && m.cols() == 0) ? cxd{1.0, 0.0} : cxd{};

  // A row or column of the matrix that no node carries is an uncovered line:
  // the represented matrix has an all-zero line there, so the permanent is 0.
  const auto covered = [&t](int label, bool is_row) {
    for (int id = 0; id < t.size(); ++id) {
      const TreeNode& n = t.node(id);
      const auto& labels = is_row ? n.rho : n.kappa;
      if (std::binary_search(labels.begin(), labels.end(), label)) return true;
    }
    return false;
  };
  for (int label : m.row_labels())
    if (!covered(label, true)) return {};
  for (int label : m.col_labels())
    if (!covered(label, false)) return {};

  if (const auto issue = validate(t, graph_of(m)))
    fail(errc::validation, "invalid decomposition: " + issue->witness);

  // Parents always have smaller ids than their children (construction
  // invariant), so descending id order visits children first.
  std::vector<NodeTable> p_tables(static_cast<std::size_t>(t.size()));
  for (int id = t.size() - 1; id >= 0; --id) {
    const TreeNode& n = t.node(id);
    const NodeTable q = compute_Q(n.rho, n.kappa, m, extra);
    std::vector<ChildLink> links;
    links.reserve(n.children.size());
    for (int child : n.children)
      links.push_back(make_child_link(n.rho, n.kappa, t.node(child).rho, t.node(child).kappa,
                                      &p_tables[static_cast<std::size_t>(child)]));
    p_tables[static_cast<std::size_t>(id)] = subset_convolution(q, links, extra);
  }
  return p_tables[static_cast<std::size_t>(t.root())].root_value();
}

}  // namespace bosim
