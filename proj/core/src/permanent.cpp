#include "bosim/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>

#include "bosim/errors.hpp"

namespace bosim {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    fail(errc::size_mismatch, std::string(who) + " needs a square matrix, got " +
                                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

}  // namespace

cxd per_naive(const ComplexMatrix& m) {
  require_square(m, "per_naive");
  const int n = m.rows();
  if (n > 12) fail(errc::capacity, "per_naive capped at n <= 12, got n = " + std::to_string(n));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  cxd total{};
  do {
    cxd prod{1.0, 0.0};
    for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

cxd per_ryser_glynn(const ComplexMatrix& m) {
  require_square(m, "per_ryser_glynn");
  const int n = m.rows();
  if (n > 30)
    fail(errc::capacity, "per_ryser_glynn capped at n <= 30, got n = " + std::to_string(n));
  if (n == 0) return {1.0, 0.0};

  // Glynn: per M = 2^(1-n) * sum over delta in {+-1}^n with delta_0 = +1 of
  // (prod_i delta_i) * prod_j (sum_i delta_i M_ij). The Gray code walks
  // delta_1..delta_{n-1}, so each step updates the column sums with one row.
  std::vector<cxd> colsum(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    cxd s{};
    for (int i = 0; i < n; ++i) s += m(i, j);
    colsum[static_cast<std::size_t>(j)] = s;
  }
  const auto product = [&colsum] {
    cxd p{1.0, 0.0};
    for (const cxd& c : colsum) p *= c;
    return p;
  };

  cxd total = product();
  std::uint64_t gray = 0;  // bit b set means delta_{b+1} == -1
  const std::uint64_t steps = 1ULL << (n - 1);
  for (std::uint64_t g = 1; g < steps; ++g) {
    const int bit = std::countr_zero(g);
    gray ^= 1ULL << bit;
    const int row = bit + 1;
    const double step = ((gray >> bit) & 1ULL) ? -2.0 : 2.0;
    for (int j = 0; j < n; ++j) colsum[static_cast<std::size_t>(j)] += step * m(row, j);
    const double sign = (std::popcount(gray) & 1) ? -1.0 : 1.0;
    total += sign * product();
  }
  return total / static_cast<double>(steps);
}

cxd per_rect(const ComplexMatrix& m) {
  if (m.rows() == 0 && m.cols() == 0) return {1.0, 0.0};
  if (m.rows() != m.cols()) return {};
  return per_ryser_glynn(m);
}

std::atomic<std::int64_t>& subpermanent_family_count() {
  static std::atomic<std::int64_t> count{0};
  return count;
}

std::vector<cxd> subpermanent_family(const ComplexMatrix& w) {
  if (w.rows() + 1 != w.cols())
    fail(errc::size_mismatch, "subpermanent_family needs k-1 rows and k columns, got " +
                                  std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  subpermanent_family_count().fetch_add(1, std::memory_order_relaxed);
  const int k = w.cols();
  if (k == 1) return {cxd{1.0, 0.0}};  // removing the only column leaves the 0x0 matrix
  const int rows = w.rows();
  if (rows > 30) fail(errc::capacity, "subpermanent_family capped at k <= 31");

  // One Glynn sweep over the k-1 rows, shared by all k column-deleted
  // permanents: keep per-column signed sums g_c, and per delta form all k
  // "products without column j" using prefix/suffix partial products.
  std::vector<cxd> g(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    cxd s{};
    for (int i = 0; i < rows; ++i) s += w(i, c);
    g[static_cast<std::size_t>(c)] = s;
  }
  std::vector<cxd> acc(static_cast<std::size_t>(k));
  std::vector<cxd> prefix(static_cast<std::size_t>(k) + 1);
  std::vector<cxd> suffix(static_cast<std::size_t>(k) + 1);
  const auto accumulate = [&](double sign) {
    prefix[0] = {1.0, 0.0};
    for (int c = 0; c < k; ++c) prefix[static_cast<std::size_t>(c) + 1] = prefix[static_cast<std::size_t>(c)] * g[static_cast<std::size_t>(c)];
    suffix[static_cast<std::size_t>(k)] = {1.0, 0.0};
    for (int c = k - 1; c >= 0; --c) suffix[static_cast<std::size_t>(c)] = g[static_cast<std::size_t>(c)] * suffix[static_cast<std::size_t>(c) + 1];
    for (int j = 0; j < k; ++j)
      acc[static_cast<std::size_t>(j)] += sign * (prefix[static_cast<std::size_t>(j)] * suffix[static_cast<std::size_t>(j) + 1]);
  };

  accumulate(1.0);
  std::uint64_t gray = 0;
  const std::uint64_t steps = rows >= 1 ? (1ULL << (rows - 1)) : 1;
  for (std::uint64_t gidx = 1; gidx < steps; ++gidx) {
    const int bit = std::countr_zero(gidx);
    gray ^= 1ULL << bit;
    const int row = bit + 1;
    const double step = ((gray >> bit) & 1ULL) ? -2.0 : 2.0;
    for (int c = 0; c < k; ++c) g[static_cast<std::size_t>(c)] += step * w(row, c);
    accumulate((std::popcount(gray) & 1) ? -1.0 : 1.0);
  }
  const double norm = static_cast<double>(steps);
  for (cxd& v : acc) v /= norm;
  return acc;
}

cxd laplace_extend(std::span<const cxd> coeff_row, std::span<const cxd> subperms) {
  if (coeff_row.size() != subperms.size())
    fail(errc::size_mismatch, "laplace_extend needs equal-length coefficient and subpermanent lists");
  cxd total{};
  for (std::size_t j = 0; j < coeff_row.size(); ++j) total += coeff_row[j] * subperms[j];
  return total;
}

}  // namespace bosim
