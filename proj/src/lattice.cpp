#include "rfgrowth/lattice.hpp"

#include <algorithm>

#include "rfgrowth/error.hpp"

namespace rfg {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row echelon reduction shared by hnf() and hnf_with_transform(). With
// Track = true the unimodular transform and its inverse are maintained.
template <bool Track>
std::size_t echelonize(IntMatrix& h, std::size_t columns, IntMatrix* u, IntMatrix* u_inv,
                       std::vector<std::size_t>* pivots) {
  const std::size_t m = h.size();

  auto swap_rows = [&](std::size_t r, std::size_t s) {
    if (r == s) return;
    std::swap(h[r], h[s]);
    if constexpr (Track) {
      std::swap((*u)[r], (*u)[s]);
      for (auto& row : *u_inv) std::swap(row[r], row[s]);
    }
  };
  // row r -= q * row s
  auto add_multiple = [&](std::size_t r, std::size_t s, const Int& q) {
    for (std::size_t c = 0; c < columns; ++c)
      if (h[s][c] != 0) h[r][c] -= q * h[s][c];
    if constexpr (Track) {
      for (std::size_t c = 0; c < m; ++c)
        if ((*u)[s][c] != 0) (*u)[r][c] -= q * (*u)[s][c];
      for (auto& row : *u_inv)
        if (row[r] != 0) row[s] += q * row[r];
    }
  };
  auto negate_row = [&](std::size_t r) {
    for (auto& x : h[r]) x = -x;
    if constexpr (Track) {
      for (auto& x : (*u)[r]) x = -x;
      for (auto& row : *u_inv) row[r] = -row[r];
    }
  };

  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m; ++col) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t r = row; r < m; ++r)
        if (h[r][col] != 0 && (best == m || abs(h[r][col]) < abs(h[best][col]))) best = r;
      if (best == m) break;
      swap_rows(row, best);
      bool cleared = true;
      for (std::size_t r = row + 1; r < m; ++r) {
        if (h[r][col] == 0) continue;
        add_multiple(r, row, floor_div(h[r][col], h[row][col]));
        if (h[r][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h[row][col] == 0) continue;
    if (h[row][col] < 0) negate_row(row);
    for (std::size_t r = 0; r < row; ++r) {
      Int q = floor_div(h[r][col], h[row][col]);
      if (q != 0) add_multiple(r, row, q);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return row;
}

void check_rows(const IntMatrix& rows, std::size_t columns) {
  for (const auto& r : rows)
    if (r.size() != columns)
      fail("dimension", "row of length " + std::to_string(r.size()) + " in a matrix with " +
                            std::to_string(columns) + " columns");
}

void check_same_ambient(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    fail("dimension", "lattices in Z^" + std::to_string(a.ambient_rank()) + " and Z^" +
                          std::to_string(b.ambient_rank()));
}

}  // namespace

Lattice hnf(const IntMatrix& rows, std::size_t ambient_rank) {
  check_rows(rows, ambient_rank);
  IntMatrix h = rows;
  Lattice out(ambient_rank);
  std::size_t rank = echelonize<false>(h, ambient_rank, nullptr, nullptr, &out.pivots_);
  h.resize(rank);
  out.basis_ = std::move(h);
  return out;
}

Lattice full_lattice(std::size_t n) { return scaled_full_lattice(n, 1); }

Lattice scaled_full_lattice(std::size_t n, const Int& k) {
  IntMatrix rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(scale(k, unit_vector(n, i)));
  return hnf(rows, n);
}

Lattice scale(const Int& k, const Lattice& a) {
  IntMatrix rows;
  for (const auto& r : a.basis()) rows.push_back(scale(k, r));
  return hnf(rows, a.ambient_rank());
}

std::optional<IntVec> Lattice::coordinates(const IntVec& v) const {
  if (v.size() != ambient_)
    fail("dimension", "vector of length " + std::to_string(v.size()) + " tested against a lattice in Z^" +
                          std::to_string(ambient_));
  IntVec rest = v;
  IntVec coords(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto c = pivots_[i];
    const Int& pivot = basis_[i][c];
    if (!mpz_divisible_p(rest[c].get_mpz_t(), pivot.get_mpz_t())) return std::nullopt;
    coords[i] = rest[c] / pivot;
    if (coords[i] != 0)
      for (std::size_t j = c; j < ambient_; ++j) rest[j] -= coords[i] * basis_[i][j];
  }
  if (!rfg::is_zero(rest)) return std::nullopt;
  return coords;
}

bool Lattice::contains(const Lattice& sub) const {
  check_same_ambient(*this, sub);
  for (const auto& r : sub.basis())
    if (!contains(r)) return false;
  return true;
}

std::string Lattice::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ";";
    out += join(basis_[i]);
  }
  return out;
}

HnfWithTransform hnf_with_transform(const IntMatrix& a, std::size_t columns) {
  check_rows(a, columns);
  HnfWithTransform t;
  const std::size_t m = a.size();
  t.h = a;
  t.u.assign(m, int_zero(m));
  t.u_inv.assign(m, int_zero(m));
  for (std::size_t i = 0; i < m; ++i) t.u[i][i] = t.u_inv[i][i] = 1;
  t.rank = echelonize<true>(t.h, columns, &t.u, &t.u_inv, nullptr);
  return t;
}

IntMatrix left_kernel(const IntMatrix& a, std::size_t columns) {
  auto t = hnf_with_transform(a, columns);
  return IntMatrix(t.u.begin() + static_cast<std::ptrdiff_t>(t.rank), t.u.end());
}

IntMatrix transpose(const IntMatrix& a, std::size_t columns) {
  IntMatrix t(columns, int_zero(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < columns; ++j) t[j][i] = a[i][j];
  return t;
}

IntVec row_times(const IntVec& x, const IntMatrix& a, std::size_t columns) {
  IntVec out = int_zero(columns);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < columns; ++j) out[j] += x[i] * a[i][j];
  }
  return out;
}

std::vector<Int> elementary_divisors(const IntMatrix& a, std::size_t columns) {
  IntMatrix m = a;
  std::size_t cols = columns;
  for (;;) {
    Lattice l = hnf(m, cols);
    m = l.basis();
    bool diagonal = true;
    for (std::size_t i = 0; i < m.size() && diagonal; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (j != i && m[i][j] != 0) {
          diagonal = false;
          break;
        }
    if (diagonal) break;
    m = transpose(m, cols);
    cols = l.rank();
  }
  std::vector<Int> d;
  for (std::size_t i = 0; i < m.size(); ++i) d.push_back(abs(m[i][i]));
  // Enforce the divisibility chain d_0 | d_1 | ...
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Int g = gcd(d[i], d[j]);
      Int l = lcm(d[i], d[j]);
      d[i] = g;
      d[j] = l;
    }
  return d;
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  check_same_ambient(a, b);
  const std::size_t n = a.ambient_rank();
  if (a.is_zero() || b.is_zero()) return Lattice(n);
  IntMatrix stacked = a.basis();
  stacked.insert(stacked.end(), b.basis().begin(), b.basis().end());
  IntMatrix rows;
  for (const auto& k : left_kernel(stacked, n)) {
    IntVec x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.rank()));
    rows.push_back(row_times(x, a.basis(), n));
  }
  return hnf(rows, n);
}

Lattice sum(const Lattice& a, const Lattice& b) {
  check_same_ambient(a, b);
  IntMatrix rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return hnf(rows, a.ambient_rank());
}

Lattice saturate(const Lattice& a) {
  const std::size_t n = a.ambient_rank();
  if (a.is_zero()) return a;
  // Integer vectors orthogonal to the rational span, then their orthogonal.
  IntMatrix ortho = left_kernel(transpose(a.basis(), n), a.rank());
  if (ortho.empty()) return full_lattice(n);
  return hnf(left_kernel(transpose(ortho, n), ortho.size()), n);
}

bool member(const IntVec& v, const Lattice& a) { return a.contains(v); }

std::optional<Int> index(const Lattice& sub, const Lattice& sup) {
  check_same_ambient(sub, sup);
  IntMatrix coords;
  for (const auto& r : sub.basis()) {
    auto c = sup.coordinates(r);
    if (!c) fail("containment", "lattice [" + sub.to_string() + "] is not contained in [" + sup.to_string() + "]");
    coords.push_back(*c);
  }
  if (sub.rank() < sup.rank()) return std::nullopt;
  Int det = 1;
  for (const auto& d : elementary_divisors(coords, sup.rank())) det *= d;
  return det;
}

std::optional<Int> index(const Lattice& sub) { return index(sub, full_lattice(sub.ambient_rank())); }

}  // namespace rfg
