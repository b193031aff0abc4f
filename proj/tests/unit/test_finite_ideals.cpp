#include <doctest.h>

#include "../oracles/oracles.hpp"
#include "rfgrowth/error.hpp"
#include "rfgrowth/finite_ideals.hpp"

using namespace rfg;

namespace {

std::set<std::vector<oracle::Row>> chain_ideals(const LieRing& L, std::int64_t p) {
  std::set<std::vector<oracle::Row>> out;
  for (const auto& s : enumerate_ideal_subspaces(reduce_mod(L, p), static_cast<int>(L.rank())))
    out.insert(oracle::rref(s.rows(), p));
  return out;
}

bool in_span(const std::vector<oracle::Row>& rows, const oracle::Row& v, std::int64_t p) {
  auto ext = rows;
  ext.push_back(v);
  return oracle::rref(ext, p).size() == rows.size();
}

// Smallest k such that no nonzero vector lies in every ideal of codim <= k.
int brute_delta(const LieRing& L, std::int64_t p) {
  const std::size_t n = L.rank();
  auto ideals = oracle::ideals_mod_p(L, p);
  for (int k = 1; k <= static_cast<int>(n); ++k) {
    bool zero = true;
    oracle::Row v(n, 0);
    for (;;) {
      std::size_t i = 0;
      while (i < n && ++v[i] == p) v[i++] = 0;
      if (i == n) break;
      bool everywhere = true;
      for (const auto& I : ideals)
        if (static_cast<int>(n - I.size()) <= k && !in_span(I, v, p)) {
          everywhere = false;
          break;
        }
      if (everywhere) {
        zero = false;
        break;
      }
    }
    if (zero) return k;
  }
  return -1;
}

std::set<IntMatrix> brute_ideals_mod_q(const LieRing& L, long q) {
  const std::size_t n = L.rank();
  long bound = 1;
  for (std::size_t i = 0; i < n; ++i) bound *= q;
  std::set<IntMatrix> out;
  for (const auto& b : oracle::sublattices(n, bound)) {
    bool contains_q = true;
    for (std::size_t i = 0; i < n; ++i) contains_q = contains_q && oracle::in_triangular(b, scale(Int(q), unit_vector(n, i)));
    if (contains_q && oracle::is_ideal_triangular(L, b)) out.insert(hnf(b, n).basis());
  }
  return out;
}

std::set<IntMatrix> chain_ideals_mod_q(const LieRing& L, long q) {
  const std::size_t n = L.rank();
  auto A = reduce_mod(L, q);
  std::set<IntMatrix> out;
  for (const auto& I : enumerate_ideals_prime_power(A, static_cast<int>(n) * A.l)) {
    IntMatrix rows;
    for (const auto& r : I.lattice.rows()) rows.push_back(IntVec(r.begin(), r.end()));
    out.insert(hnf(rows, n).basis());
  }
  return out;
}

}  // namespace

TEST_SUITE("finite-ideals") {
  TEST_CASE("codimension one ideals") {
    for (std::int64_t p : {2, 3, 5}) {
      std::size_t hyper = 0;
      for (const auto& s : enumerate_ideal_subspaces(reduce_mod(catalog("abelian_3"), p), 1)) hyper += s.codim() == 1;
      CHECK(hyper == static_cast<std::size_t>(p * p + p + 1));
      std::size_t heis = 0;
      for (const auto& s : enumerate_ideal_subspaces(reduce_mod(catalog("heisenberg_3"), p), 1)) {
        if (s.codim() != 1) continue;
        ++heis;
        CHECK(s.contains(modp::Row{0, 0, 1}));
      }
      CHECK(heis == static_cast<std::size_t>(p + 1));
    }
    for (const auto& s : enumerate_ideal_subspaces(reduce_mod(catalog("heisenberg_3"), 2), 2))
      if (s.dim() > 0) CHECK(s.contains(modp::Row{0, 0, 1}));
  }

  TEST_CASE("enumeration matches the brute-force subspace scan") {
    for (const auto& name : catalog_names()) {
      LieRing L = catalog(name);
      if (L.rank() > 4) continue;
      for (std::int64_t p : {2, 3, 5}) {
        auto chain = chain_ideals(L, p);
        CHECK(chain == oracle::ideals_mod_p(L, p));
        for (const auto& s : enumerate_ideal_subspaces(reduce_mod(L, p), 4)) CHECK(is_ideal_mod_p(reduce_mod(L, p), s));
      }
    }
  }

  TEST_CASE("prime power enumeration matches brute-force sublattices") {
    auto Z4 = enumerate_ideals_prime_power(reduce_mod(catalog("abelian_1"), 4), 2);
    CHECK(Z4.size() == 3);
    auto whole = enumerate_ideals_prime_power(reduce_mod(catalog("heisenberg_3"), 4), 0);
    CHECK(whole.size() == 1);
    CHECK(whole[0].index() == 1);
    CHECK(chain_ideals_mod_q(catalog("heisenberg_3"), 4) == brute_ideals_mod_q(catalog("heisenberg_3"), 4));
    CHECK(chain_ideals_mod_q(catalog("abelian_2"), 9) == brute_ideals_mod_q(catalog("abelian_2"), 9));
    CHECK(chain_ideals_mod_q(catalog("heisenberg_3"), 3) == brute_ideals_mod_q(catalog("heisenberg_3"), 3));
    LieRing D = LieRing::from_brackets("d", 3, {{0, 1, {0, 0, 2}}});
    CHECK(chain_ideals_mod_q(D, 4) == brute_ideals_mod_q(D, 4));
  }

  TEST_CASE("small codimension intersections") {
    auto H2 = reduce_mod(catalog("heisenberg_3"), 2);
    CHECK(small_codim_intersection(H2, 0) == modp::whole(3, 2));
    for (std::int64_t p : {2, 3}) {
      auto A = reduce_mod(catalog("heisenberg_3"), p);
      CHECK(small_codim_intersection(A, 1) == modp::span({{0, 0, 1}}, 3, p));
      CHECK(small_codim_intersection(A, 2) == modp::span({{0, 0, 1}}, 3, p));
    }
  }

  TEST_CASE("delta") {
    for (std::int64_t p : {2, 3, 5, 7}) {
      CHECK(delta_p(catalog("abelian_3"), p) == 1);
      CHECK(delta_p(catalog("heisenberg_3"), p) == 3);
      CHECK(delta_ideal_mod_p(catalog("heisenberg_3"), p) == modp::span({{0, 0, 1}}, 3, p));
      CHECK(delta_ideal_mod_p(catalog("abelian_3"), p) == modp::whole(3, p));
    }
    for (std::int64_t p : {2, 3, 5}) {
      CHECK(delta_p(catalog("filiform_4"), p) == brute_delta(catalog("filiform_4"), p));
      CHECK(delta_p(catalog("heisenberg_3"), p) == brute_delta(catalog("heisenberg_3"), p));
    }
    CHECK(delta_p(catalog("filiform_4"), 7) == 4);
    CHECK(delta_ideal_mod_p(catalog("filiform_4"), 7) == modp::span({{0, 0, 0, 1}}, 4, 7));
    CHECK_THROWS_AS(delta_p(catalog("heisenberg_3"), 4), Error);
    CHECK_THROWS_AS(enumerate_ideals(reduce_mod(catalog("heisenberg_3"), 4), 1), Error);
  }

  TEST_CASE("delta sweeps") {
    auto h = delta_sweep(catalog("heisenberg_3"), primes_up_to(31));
    CHECK(h.stabilized == 3);
    CHECK(h.dissenting.empty());
    CHECK(h.rows.size() == 11);
    CHECK(delta_sweep(catalog("abelian_3"), primes_up_to(31)).stabilized == 1);
    auto h5 = delta_sweep(catalog("heisenberg_5"), primes_up_to(13));
    CHECK(h5.stabilized == 5);
    CHECK(h5.dissenting.empty());
    auto f = delta_sweep(catalog("free_nilp_2_3"), {2, 3, 5});
    CHECK(f.stabilized == 3);
  }
}
