#include "rfgrowth/finite_ideals.hpp"

#include <chrono>
#include <map>
#include <set>

#include "rfgrowth/error.hpp"
#include "rfgrowth/parallel.hpp"

namespace rfg {

namespace {

using modp::Row;
using modp::Subspace;

Row unit_row(std::size_t n, std::size_t j) {
  Row r(n, 0);
  r[j] = 1;
  return r;
}

// [b, e_j] reduced into [0, m), from a list of structure constants.
Row bracket_with_basis(const std::vector<LieRing::Term>& terms, std::size_t n, const Row& b, std::size_t j,
                       std::int64_t m) {
  std::vector<__int128> acc(n, 0);
  for (const auto& t : terms) {
    if (t.j == j && b[t.i] != 0) acc[t.k] += static_cast<__int128>(b[t.i]) * mod(t.coef, m);
    if (t.i == j && b[t.j] != 0) acc[t.k] -= static_cast<__int128>(b[t.j]) * mod(t.coef, m);
    acc[t.k] %= m;
  }
  Row out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = mod(static_cast<std::int64_t>(acc[k] % m), m);
  return out;
}

modp::Subspace constraint_from_terms(const std::vector<LieRing::Term>& terms, std::size_t n,
                                     const modp::ModLattice& I, std::int64_t p, std::int64_t modulus) {
  const std::int64_t m = I.index() * p;
  std::vector<Row> rows;
  for (const auto& b : I.rows())
    for (std::size_t j = 0; j < n; ++j) {
      Row br = bracket_with_basis(terms, n, b, j, m);
      bool nonzero = false;
      for (auto x : br) nonzero = nonzero || x != 0;
      if (nonzero) rows.push_back(coordinates_mod(I, br, p));
    }
  if (modulus > 0)
    for (std::size_t k = 0; k < n; ++k) {
      Row e(n, 0);
      e[k] = modulus % m;
      rows.push_back(coordinates_mod(I, e, p));
    }
  return modp::span(rows, n, p);
}

}  // namespace

// --- subspaces mod p --------------------------------------------------------

bool is_ideal_mod_p(const FiniteLieAlgebra& A, const Subspace& I) {
  for (const auto& b : I.rows())
    for (std::size_t j = 0; j < A.rank; ++j)
      if (!I.contains(A.bracket(b, unit_row(A.rank, j)))) return false;
  return true;
}

std::vector<Subspace> child_subspaces(const FiniteLieAlgebra& A, const Subspace& I) {
  const std::size_t n = A.rank, m = I.dim();
  const std::int64_t p = A.p;
  std::vector<Subspace> out;
  if (m == 0) return out;
  std::vector<Row> w;
  for (const auto& b : I.rows())
    for (std::size_t j = 0; j < n; ++j) w.push_back(I.coordinates(A.bracket(b, unit_row(n, j))));
  Subspace W = modp::span(w, m, p);
  const auto& b = I.rows();
  modp::for_each_functional(W, [&](const Row& phi) {
    std::size_t t = 0;
    while (phi[t] == 0) ++t;
    std::vector<Row> rows;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == t) continue;
      Row r(n);
      for (std::size_t k = 0; k < n; ++k) r[k] = mod(b[j][k] - phi[j] * b[t][k], p);
      rows.push_back(r);
    }
    out.push_back(modp::span(rows, n, p));
    return true;
  });
  return out;
}

namespace {

void require_prime(const FiniteLieAlgebra& A) {
  if (A.l != 1) fail("modulus", "enumerate_ideals needs a prime modulus, got " + std::to_string(A.q));
}

std::vector<Subspace> next_level(const FiniteLieAlgebra& A, const std::vector<Subspace>& level) {
  std::set<Subspace> seen;
  for (const auto& I : level)
    for (auto& J : child_subspaces(A, I)) seen.insert(std::move(J));
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<Subspace> enumerate_ideal_subspaces(const FiniteLieAlgebra& A, int max_codim) {
  require_prime(A);
  std::vector<Subspace> out;
  std::vector<Subspace> level{modp::whole(A.rank, A.p)};
  for (int d = 0; d <= max_codim && !level.empty(); ++d) {
    out.insert(out.end(), level.begin(), level.end());
    if (d < max_codim) level = next_level(A, level);
  }
  return out;
}

std::vector<IdealModQ> enumerate_ideals(const FiniteLieAlgebra& A, int max_codim) {
  std::vector<IdealModQ> out;
  for (const auto& s : enumerate_ideal_subspaces(A, max_codim))
    out.push_back({A.p, 1, modp::hnf_mod(s.rows(), A.rank, A.p), static_cast<int>(s.codim())});
  return out;
}

std::vector<IdealModQ> enumerate_ideals_prime_power(const FiniteLieAlgebra& A, int max_index_exponent) {
  const std::size_t n = A.rank;
  std::vector<IdealModQ> out;
  std::vector<modp::ModLattice> level{modp::full_mod_lattice(n)};
  for (int e = 0; e <= max_index_exponent && !level.empty(); ++e) {
    for (const auto& I : level) out.push_back({A.p, A.l, I, e});
    if (e == max_index_exponent) break;
    std::set<modp::ModLattice> seen;
    for (const auto& I : level) {
      Subspace W = constraint_from_terms(A.terms, n, I, A.p, A.q);
      modp::for_each_functional(W, [&](const Row& phi) {
        seen.insert(child_lattice(I, A.p, phi));
        return true;
      });
    }
    level.assign(seen.begin(), seen.end());
  }
  return out;
}

// --- lattice chains ---------------------------------------------------------

modp::Subspace child_constraint(const LieRing& L, const modp::ModLattice& I, std::int64_t p, std::int64_t modulus) {
  return constraint_from_terms(L.terms(), L.rank(), I, p, modulus);
}

Row coordinates_mod(const modp::ModLattice& I, const Row& v, std::int64_t p) {
  const std::int64_t m = I.index() * p;
  Row w(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) w[k] = mod(v[k], m);
  auto c = I.coordinates(w);
  if (!c) fail("internal", "vector is not in the ideal");
  for (auto& x : *c) x = mod(x, p);
  return *c;
}

Row coordinates_mod(const modp::ModLattice& I, const IntVec& v, std::int64_t p) {
  const std::int64_t m = I.index() * p;
  Row w(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) w[k] = mod(v[k], m);
  return coordinates_mod(I, w, p);
}

modp::ModLattice child_lattice(const modp::ModLattice& I, std::int64_t p, const Row& phi) {
  const std::size_t n = I.ambient();
  const std::int64_t m = I.index() * p;
  const auto& b = I.rows();
  std::size_t t = 0;
  while (t < n && phi[t] == 0) ++t;
  if (t == n) fail("internal", "zero functional");
  const std::int64_t inv = inv_mod(phi[t], p);
  std::vector<Row> gens;
  for (std::size_t j = 0; j < n; ++j) {
    Row r(n);
    if (j == t) {
      for (std::size_t k = 0; k < n; ++k) r[k] = mod(static_cast<std::int64_t>(static_cast<__int128>(p) * b[t][k] % m), m);
    } else {
      std::int64_t c = mod(static_cast<std::int64_t>(static_cast<__int128>(phi[j]) * inv % p), p);
      for (std::size_t k = 0; k < n; ++k)
        r[k] = mod(static_cast<std::int64_t>((static_cast<__int128>(b[j][k]) - static_cast<__int128>(c) * b[t][k]) % m), m);
    }
    gens.push_back(std::move(r));
  }
  return modp::hnf_mod(gens, n, m);
}

bool is_ideal_lattice(const LieRing& L, const modp::ModLattice& I) {
  const std::int64_t m = I.index();
  for (const auto& b : I.rows())
    for (std::size_t j = 0; j < L.rank(); ++j)
      if (!I.contains(bracket_with_basis(L.terms(), L.rank(), b, j, m))) return false;
  return true;
}

// --- delta ------------------------------------------------------------------

Subspace small_codim_intersection(const FiniteLieAlgebra& A, int k) {
  require_prime(A);
  Subspace inter = modp::whole(A.rank, A.p);
  std::vector<Subspace> level{inter};
  for (int d = 1; d <= k && !level.empty() && inter.dim() > 0; ++d) {
    level = next_level(A, level);
    for (const auto& J : level) inter = modp::intersect(inter, J);
  }
  return inter;
}

namespace {

struct DeltaResult {
  int delta = 0;
  Subspace before;  // intersection of ideals of codim < delta
};

DeltaResult compute_delta(const LieRing& L, std::int64_t p) {
  if (!is_prime(p)) fail("modulus", std::to_string(p) + " is not prime");
  FiniteLieAlgebra A = reduce_mod(L, p);
  Subspace inter = modp::whole(A.rank, p);
  std::vector<Subspace> level{inter};
  for (int k = 1; k <= static_cast<int>(A.rank); ++k) {
    Subspace before = inter;
    level = next_level(A, level);
    for (const auto& J : level) inter = modp::intersect(inter, J);
    if (inter.dim() == 0) return {k, before};
  }
  fail("internal", "ideals of codimension <= rank do not intersect in zero");
}

}  // namespace

int delta_p(const LieRing& L, std::int64_t p) { return compute_delta(L, p).delta; }

Subspace delta_ideal_mod_p(const LieRing& L, std::int64_t p, std::optional<int> delta) {
  if (!delta) return compute_delta(L, p).before;
  if (!is_prime(p)) fail("modulus", std::to_string(p) + " is not prime");
  return small_codim_intersection(reduce_mod(L, p), *delta - 1);
}

DeltaSweep delta_sweep(const LieRing& L, const std::vector<std::int64_t>& primes) {
  if (primes.empty()) fail("primes", "delta sweep needs at least one prime");
  DeltaSweep sweep;
  sweep.rows.resize(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) {
    auto start = std::chrono::steady_clock::now();
    DeltaResult r = compute_delta(L, primes[i]);
    auto stop = std::chrono::steady_clock::now();
    sweep.rows[i] = {primes[i], r.delta, r.before.dim(), r.before,
                     std::chrono::duration<double, std::milli>(stop - start).count()};
  });
  std::map<int, int> counts;
  for (const auto& r : sweep.rows) ++counts[r.delta];
  int best = 0;
  for (const auto& [d, c] : counts)
    if (c > best) {
      best = c;
      sweep.stabilized = d;
    }
  for (const auto& r : sweep.rows)
    if (r.delta != sweep.stabilized) sweep.dissenting.push_back(r.p);
  return sweep;
}

}  // namespace rfg
