#include "rfgrowth/bch.hpp"

#include <array>
#include <mutex>

#include "rfgrowth/error.hpp"

namespace rfg {

namespace {

void check_class(const LieRing& L, const BCHTable& table) {
  if (L.nilpotency_class() > table.cls)
    fail("class", "ring '" + L.name() + "' has class " + std::to_string(L.nilpotency_class()) +
                      " but the BCH table only has class " + std::to_string(table.cls));
}

Int denominator_lcm(const RatVec& a, Int acc = 1) {
  for (const auto& x : a) acc = lcm(acc, Int(x.get_den()));
  return acc;
}

RatVec combine(const RatVec& coeffs, const std::vector<RatVec>& vals, std::size_t n) {
  RatVec out = rat_zero(n);
  for (std::size_t h = 0; h < coeffs.size(); ++h) {
    if (coeffs[h] == 0 || vals[h].empty()) continue;
    for (std::size_t k = 0; k < n; ++k)
      if (vals[h][k] != 0) out[k] += coeffs[h] * vals[h][k];
  }
  return out;
}

// kappa_h(u, v) for every Hall element, computed in L.
std::vector<RatVec> commutator_words(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v) {
  const auto& hall = *table.hall;
  std::vector<RatVec> k(hall.size());
  for (std::size_t h = 0; h < hall.size(); ++h) {
    const auto& e = hall[h];
    if (e.weight == 1)
      k[h] = e.letter == 0 ? u : v;
    else if (e.weight > L.nilpotency_class())
      k[h] = rat_zero(L.rank());
    else
      k[h] = group_commutator(L, table, k[e.left], k[e.right]);
  }
  return k;
}

// Peels the weight-k discrepancies between p and target, k = first..c, by
// right-multiplying p with rational powers of the commutator words.
RatVec peel(const LieRing& F, const BCHTable& table, const std::vector<RatVec>& kappa, RatVec p,
            const RatVec& target, int first, RatVec& exponents) {
  const auto& hall = *table.hall;
  for (int w = first; w <= table.cls; ++w) {
    RatVec d = sub(target, p);
    for (std::size_t h = 0; h < hall.size(); ++h) {
      if (hall[h].weight < w && d[h] != 0)
        fail("internal", "inverse BCH collection left a discrepancy below weight " + std::to_string(w));
      if (hall[h].weight == w) exponents[h] = d[h];
    }
    for (std::size_t h = 0; h < hall.size(); ++h)
      if (hall[h].weight == w && exponents[h] != 0) p = star(F, table, p, scale(exponents[h], kappa[h]));
  }
  if (p != target) fail("internal", "inverse BCH collection did not converge");
  return p;
}

}  // namespace

std::vector<Int> f_values(const Int& lambda, int cls) {
  std::vector<Int> f{Int(1)};
  Int lc;
  mpz_pow_ui(lc.get_mpz_t(), lambda.get_mpz_t(), static_cast<unsigned long>(cls));
  for (int i = 0; i < cls; ++i) {
    Int base = f.back() * lc, next;
    mpz_pow_ui(next.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(cls));
    f.push_back(next);
  }
  return f;
}

BCHTable build_bch_table(int cls) {
  if (cls < 1 || cls > kMaxBchClass)
    fail("class", "BCH tables are supported for class 1.." + std::to_string(kMaxBchClass) + ", got " + std::to_string(cls));
  using namespace freelie;
  BCHTable t;
  t.cls = cls;
  auto hall = std::make_shared<HallBasis>(2, cls);
  t.hall = hall;
  Poly x = letter(0), y = letter(1);
  t.star_coeffs = hall->coordinates(log_of_exp_product({x, y}, cls));
  t.comm_coeffs = hall->coordinates(log_of_exp_product({scale(-1, x), scale(-1, y), x, y}, cls));
  t.delta = denominator_lcm(t.comm_coeffs, denominator_lcm(t.star_coeffs));

  // Inverse formulas by collection in the free nilpotent ring, whose basis is
  // the same Hall basis.
  LieRing F = free_nilpotent_ring(2, cls);
  const std::size_t n = hall->size();
  RatVec ex = to_rat(unit_vector(n, 0)), ey = to_rat(unit_vector(n, 1));
  auto kappa = commutator_words(F, t, ex, ey);
  t.r = rat_zero(n);
  t.s = rat_zero(n);
  peel(F, t, kappa, star(F, t, ex, ey), add(ex, ey), 2, t.r);
  if (cls >= 2) {
    RatVec lie = F.bracket(ex, ey);
    peel(F, t, kappa, group_commutator(F, t, ex, ey), lie, 3, t.s);
  }
  t.lambda = denominator_lcm(t.s, denominator_lcm(t.r));
  t.f = f_values(t.lambda, cls);
  return t;
}

const BCHTable& bch_table(int cls) {
  static std::mutex mu;
  static std::array<std::unique_ptr<BCHTable>, kMaxBchClass + 1> cache;
  if (cls < 1 || cls > kMaxBchClass)
    fail("class", "BCH tables are supported for class 1.." + std::to_string(kMaxBchClass) + ", got " + std::to_string(cls));
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[cls]) cache[cls] = std::make_unique<BCHTable>(build_bch_table(cls));
  return *cache[cls];
}

std::vector<RatVec> evaluate_hall(const LieRing& L, const freelie::HallBasis& hall, const RatVec& u,
                                  const RatVec& v) {
  if (u.size() != L.rank() || v.size() != L.rank()) fail("dimension", "vector length does not match the ring rank");
  std::vector<RatVec> vals(hall.size());
  for (std::size_t h = 0; h < hall.size(); ++h) {
    const auto& e = hall[h];
    if (e.weight == 1)
      vals[h] = e.letter == 0 ? u : v;
    else if (e.weight <= L.nilpotency_class() && !vals[e.left].empty() && !vals[e.right].empty()) {
      RatVec b = L.bracket(vals[e.left], vals[e.right]);
      if (!is_zero(b)) vals[h] = std::move(b);
    }
  }
  return vals;
}

RatVec star(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v) {
  check_class(L, table);
  return combine(table.star_coeffs, evaluate_hall(L, *table.hall, u, v), L.rank());
}

RatVec star_inverse(const RatVec& u) { return neg(u); }

RatVec group_commutator(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v) {
  check_class(L, table);
  return combine(table.comm_coeffs, evaluate_hall(L, *table.hall, u, v), L.rank());
}

RatVec group_commutator_by_composition(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v) {
  return star(L, table, star_inverse(u), star(L, table, star_inverse(v), star(L, table, u, v)));
}

RatVec star_power(const LieRing& L, const BCHTable& table, const RatVec& u, long m) {
  RatVec step = m < 0 ? star_inverse(u) : u;
  RatVec out = rat_zero(L.rank());
  for (long i = 0; i < (m < 0 ? -m : m); ++i) out = star(L, table, out, step);
  return out;
}

RatVec inverse_bch_sum(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v) {
  check_class(L, table);
  auto kappa = commutator_words(L, table, u, v);
  RatVec p = star(L, table, u, v);
  for (std::size_t h = 0; h < kappa.size(); ++h)
    if (table.r[h] != 0) p = star(L, table, p, scale(table.r[h], kappa[h]));
  return p;
}

RatVec inverse_bch_bracket(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v) {
  check_class(L, table);
  auto kappa = commutator_words(L, table, u, v);
  RatVec p = group_commutator(L, table, u, v);
  for (std::size_t h = 0; h < kappa.size(); ++h)
    if (table.s[h] != 0) p = star(L, table, p, scale(table.s[h], kappa[h]));
  return p;
}

// --- matrices --------------------------------------------------------------

namespace {

std::size_t check_square(const RatMatrix& m) {
  const std::size_t n = m.size();
  if (n < 1 || n > 8) fail("shape", "matrix size must be between 1 and 8, got " + std::to_string(n));
  for (const auto& row : m)
    if (row.size() != n) fail("shape", "matrix is not square");
  return n;
}

RatMatrix identity(std::size_t n) {
  RatMatrix id(n, rat_zero(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  RatMatrix c(n, rat_zero(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatMatrix mat_exp(const RatMatrix& m) {
  const std::size_t n = check_square(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m[i][j] != 0) fail("shape", "exp expects a strictly upper triangular matrix");
  RatMatrix out = identity(n), term = identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    term = mat_mul(term, m);
    for (auto& row : term)
      for (auto& x : row) x /= static_cast<long>(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += term[i][j];
  }
  return out;
}

RatMatrix mat_log(const RatMatrix& u) {
  const std::size_t n = check_square(u);
  RatMatrix nil = u;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (u[i][j] != 0) fail("shape", "log expects a unitriangular matrix");
    if (u[i][i] != 1) fail("shape", "log expects a unitriangular matrix");
    nil[i][i] = 0;
  }
  RatMatrix out(n, rat_zero(n)), power = identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    power = mat_mul(power, nil);
    Rat c(k % 2 ? 1 : -1, static_cast<long>(k));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += c * power[i][j];
  }
  return out;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> upper_positions(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pos.emplace_back(i, j);
  return pos;
}

}  // namespace

LieRing upper_triangular_ring(std::size_t n) {
  if (n < 2) fail("shape", "upper triangular ring needs n >= 2");
  auto pos = upper_positions(n);
  const std::size_t d = pos.size();
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      RatMatrix ea(n, rat_zero(n)), eb(n, rat_zero(n));
      ea[pos[a].first][pos[a].second] = 1;
      eb[pos[b].first][pos[b].second] = 1;
      RatMatrix ab = mat_mul(ea, eb), ba = mat_mul(eb, ea);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ab[i][j] -= ba[i][j];
      IntVec c = to_int(matrix_to_coords(ab));
      if (!is_zero(c)) entries.push_back({a, b, c});
    }
  return LieRing::from_brackets("upper_triangular_" + std::to_string(n), d, entries);
}

RatVec matrix_to_coords(const RatMatrix& m) {
  RatVec out;
  for (const auto& [i, j] : upper_positions(m.size())) out.push_back(m[i][j]);
  return out;
}

RatMatrix coords_to_matrix(const RatVec& v, std::size_t n) {
  auto pos = upper_positions(n);
  if (v.size() != pos.size()) fail("dimension", "coordinate vector does not match matrix size");
  RatMatrix m(n, rat_zero(n));
  for (std::size_t k = 0; k < pos.size(); ++k) m[pos[k].first][pos[k].second] = v[k];
  return m;
}

}  // namespace rfg
