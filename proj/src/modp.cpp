#include "rfgrowth/modp.hpp"

#include <limits>

#include "rfgrowth/error.hpp"

namespace rfg::modp {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t narrow(__int128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    fail("overflow", "intermediate value exceeds 64 bits in modular lattice arithmetic");
  return static_cast<std::int64_t>(x);
}

std::string row_key(const std::vector<Row>& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ";";
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) out += ",";
      out += std::to_string(rows[i][j]);
    }
  }
  return out;
}

}  // namespace

Subspace span(std::vector<Row> rows, std::size_t n, std::int64_t p) {
  Subspace s(n, p);
  for (auto& r : rows) {
    if (r.size() != n) fail("dimension", "vector length does not match the ambient space");
    for (auto& x : r) x = mod(x, p);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    auto& pr = rows[rank];
    std::int64_t inv = inv_mod(pr[col], p);
    for (auto& x : pr) x = mulmod(x, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      std::int64_t f = rows[r][col];
      for (std::size_t j = col; j < n; ++j) rows[r][j] = mod(rows[r][j] - mulmod(f, pr[j], p), p);
    }
    s.pivots_.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  s.rows_ = std::move(rows);
  return s;
}

Subspace whole(std::size_t n, std::int64_t p) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Row r(n, 0);
    r[i] = 1;
    rows.push_back(r);
  }
  return span(rows, n, p);
}

Subspace zero(std::size_t n, std::int64_t p) { return span({}, n, p); }

bool Subspace::contains(const Row& v) const {
  if (v.size() != n_) fail("dimension", "vector length does not match the ambient space");
  Row w(n_);
  for (std::size_t j = 0; j < n_; ++j) w[j] = mod(v[j], p_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::int64_t f = w[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t j = pivots_[i]; j < n_; ++j) w[j] = mod(w[j] - mulmod(f, rows_[i][j], p_), p_);
  }
  for (auto x : w)
    if (x != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& r : other.rows())
    if (!contains(r)) return false;
  return true;
}

Row Subspace::coordinates(const Row& v) const {
  Row c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = mod(v[pivots_[i]], p_);
  return c;
}

std::string Subspace::key() const { return row_key(rows_); }

Subspace annihilator(const Subspace& s) {
  const std::size_t n = s.ambient();
  std::vector<bool> is_pivot(n, false);
  for (auto c : s.pivots()) is_pivot[c] = true;
  std::vector<Row> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Row phi(n, 0);
    phi[f] = 1;
    for (std::size_t i = 0; i < s.dim(); ++i) phi[s.pivots()[i]] = mod(-s.rows()[i][f], s.prime());
    out.push_back(phi);
  }
  return span(out, n, s.prime());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  return annihilator(sum(annihilator(a), annihilator(b)));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  std::vector<Row> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return span(rows, a.ambient(), a.prime());
}

void for_each_functional(const Subspace& w, const std::function<bool(const Row&)>& visit) {
  const std::size_t n = w.ambient();
  const std::int64_t p = w.prime();
  Subspace ann = annihilator(w);
  const auto& a = ann.rows();
  const std::size_t d = a.size();
  for (std::size_t lead = 0; lead < d; ++lead) {
    // t = (0, ..., 0, 1, t_{lead+1}, ..., t_{d-1}) counted in base p
    std::vector<std::int64_t> t(d - lead - 1, 0);
    for (;;) {
      Row phi = a[lead];
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) phi[j] = mod(phi[j] + mulmod(t[k], a[lead + 1 + k][j], p), p);
      }
      // Since ann is in RREF, the first nonzero entry of phi is the pivot of a[lead], equal to 1.
      if (!visit(phi)) return;
      std::size_t k = 0;
      while (k < t.size() && t[k] == p - 1) t[k++] = 0;
      if (k == t.size()) break;
      ++t[k];
    }
  }
}

// --- modular HNF ------------------------------------------------------------

namespace {

// g = x a + y b with g = gcd(a, b) >= 0.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

}  // namespace

ModLattice hnf_mod(const std::vector<Row>& gens, std::size_t n, std::int64_t m) {
  if (m < 1) fail("modulus", "modular HNF needs a positive modulus");
  std::vector<Row> work;
  for (const auto& g : gens) {
    if (g.size() != n) fail("dimension", "vector length does not match the ambient rank");
    Row r(n);
    bool nonzero = false;
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = mod(g[j], m);
      nonzero = nonzero || r[j] != 0;
    }
    if (nonzero) work.push_back(std::move(r));
  }
  ModLattice out;
  out.rows_.assign(n, Row(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    Row pivot(n, 0);
    pivot[j] = m;
    for (auto& w : work) {
      if (w[j] == 0) continue;
      std::int64_t a = pivot[j], b = w[j], x, y;
      std::int64_t g = ext_gcd(a, b, x, y);
      std::int64_t ag = a / g, bg = b / g;
      Row np(n, 0), nw(n, 0);
      np[j] = g;
      for (std::size_t k = j + 1; k < n; ++k) {
        __int128 s = static_cast<__int128>(x) * pivot[k] + static_cast<__int128>(y) * w[k];
        __int128 t = static_cast<__int128>(ag) * w[k] - static_cast<__int128>(bg) * pivot[k];
        np[k] = mod(static_cast<std::int64_t>(s % m), m);
        nw[k] = mod(static_cast<std::int64_t>(t % m), m);
      }
      pivot = std::move(np);
      w = std::move(nw);
    }
    out.rows_[j] = std::move(pivot);
  }
  // Reduce entries above each pivot.
  auto& r = out.rows_;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::int64_t q = r[i][j] / r[j][j];
      if (q == 0) continue;
      for (std::size_t k = j; k < n; ++k) {
        std::int64_t v = narrow(static_cast<__int128>(r[i][k]) - static_cast<__int128>(q) * r[j][k]);
        r[i][k] = k == j ? v : mod(v, m);
      }
    }
  return out;
}

ModLattice full_mod_lattice(std::size_t n) { return hnf_mod({}, n, 1); }

std::int64_t ModLattice::index() const {
  __int128 d = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    d *= rows_[i][i];
    narrow(d);
  }
  return static_cast<std::int64_t>(d);
}

std::optional<Row> ModLattice::coordinates(const Row& v) const {
  const std::size_t n = rows_.size();
  if (v.size() != n) fail("dimension", "vector length does not match the ambient rank");
  Row rest = v, c(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t d = rows_[j][j];
    if (rest[j] % d != 0) return std::nullopt;
    c[j] = rest[j] / d;
    if (c[j] == 0) continue;
    for (std::size_t k = j; k < n; ++k)
      rest[k] = narrow(static_cast<__int128>(rest[k]) - static_cast<__int128>(c[j]) * rows_[j][k]);
  }
  return c;
}

bool ModLattice::contains(const Row& v) const {
  const std::int64_t m = index();
  Row w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) w[j] = mod(v[j], m);
  return coordinates(w).has_value();
}

std::string ModLattice::key() const { return row_key(rows_); }

}  // namespace rfg::modp
