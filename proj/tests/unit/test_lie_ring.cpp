#include <doctest.h>

#include <random>

#include "../oracles/oracles.hpp"
#include "rfgrowth/error.hpp"
#include "rfgrowth/lie_ring.hpp"

using namespace rfg;

namespace {

std::string reason_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.reason();
  }
  return "";
}

}  // namespace

TEST_SUITE("lie-ring") {
  TEST_CASE("brackets") {
    LieRing H = catalog("heisenberg_3");
    CHECK(H.bracket(unit_vector(3, 0), unit_vector(3, 1)) == unit_vector(3, 2));
    CHECK(H.bracket(IntVec{2, 1, 0}, IntVec{0, 3, 0}) == IntVec{0, 0, 6});
    CHECK(oracle::naive_bracket(H, IntVec{2, 1, 0}, IntVec{0, 3, 0}) == IntVec{0, 0, 6});
    CHECK(is_zero(H.bracket(IntVec{4, -2, 7}, IntVec{4, -2, 7})));
  }

  TEST_CASE("property: bracket is bilinear, alternating, Jacobi, matches the naive evaluator") {
    std::mt19937_64 rng(21);
    for (const auto& name : catalog_names()) {
      LieRing L = catalog(name);
      const std::size_t n = L.rank();
      for (int t = 0; t < 40; ++t) {
        IntVec u = oracle::random_vector(rng, n, -9, 9), v = oracle::random_vector(rng, n, -9, 9),
               w = oracle::random_vector(rng, n, -9, 9);
        CHECK(L.bracket(u, v) == oracle::naive_bracket(L, u, v));
        CHECK(is_zero(add(L.bracket(u, v), L.bracket(v, u))));
        CHECK(L.bracket(add(u, w), v) == add(L.bracket(u, v), L.bracket(w, v)));
        IntVec j = add(add(L.bracket(u, L.bracket(v, w)), L.bracket(v, L.bracket(w, u))), L.bracket(w, L.bracket(u, v)));
        CHECK(is_zero(j));
        CHECK(to_rat(L.bracket(u, v)) == L.bracket(to_rat(u), to_rat(v)));
        I64Vec um(n), vm(n);
        for (std::size_t k = 0; k < n; ++k) {
          um[k] = mod(u[k], 9);
          vm[k] = mod(v[k], 9);
        }
        I64Vec bm = L.bracket_mod(um, vm, 9);
        IntVec b = L.bracket(u, v);
        for (std::size_t k = 0; k < n; ++k) CHECK(bm[k] == mod(b[k], 9));
      }
    }
  }

  TEST_CASE("lower central series") {
    LieRing A = catalog("abelian_3");
    CHECK(A.nilpotency_class() == 1);
    CHECK(A.lcs().layers[1].is_zero());
    LieRing H = catalog("heisenberg_3");
    CHECK(H.nilpotency_class() == 2);
    CHECK(H.lcs().layers[1] == hnf({{0, 0, 1}}, 3));
    LieRing F = catalog("filiform_4");
    CHECK(F.nilpotency_class() == 3);
    CHECK(F.lcs().layers[1] == hnf({{0, 0, 1, 0}, {0, 0, 0, 1}}, 4));
    CHECK(F.lcs().layers[2] == hnf({{0, 0, 0, 1}}, 4));
    LieRing N = catalog("free_nilp_2_3");
    CHECK(N.rank() == 6);
    CHECK(N.nilpotency_class() == 2);
    CHECK(N.lcs().layers[1].rank() == 3);
    // A ring whose derived layer is not saturated.
    LieRing D = LieRing::from_brackets("d", 3, {{0, 1, {0, 0, 2}}});
    CHECK(D.lcs().layers[1] == hnf({{0, 0, 2}}, 3));
    CHECK(D.lcs().saturated[1] == hnf({{0, 0, 1}}, 3));
  }

  TEST_CASE("property: lower central series by brute-force bracket closure") {
    for (const auto& name : catalog_names()) {
      LieRing L = catalog(name);
      const std::size_t n = L.rank();
      IntMatrix layer;
      for (std::size_t i = 0; i < n; ++i) layer.push_back(unit_vector(n, i));
      for (int k = 0; k <= L.nilpotency_class(); ++k) {
        CHECK(hnf(layer, n) == L.lcs().layers[k]);
        IntMatrix next;
        for (const auto& a : layer)
          for (std::size_t j = 0; j < n; ++j) next.push_back(oracle::naive_bracket(L, a, unit_vector(n, j)));
        layer = hnf(next, n).basis();
      }
    }
  }

  TEST_CASE("ideals and subrings") {
    LieRing H = catalog("heisenberg_3");
    CHECK(is_ideal(H, full_lattice(3)));
    CHECK(!is_ideal(H, hnf({{1, 0, 0}}, 3)));
    CHECK(is_ideal(H, hnf({{1, 0, 0}, {0, 0, 1}}, 3)));
    CHECK(ideal_closure(H, hnf({{1, 0, 0}}, 3)) == hnf({{1, 0, 0}, {0, 0, 1}}, 3));
    CHECK(is_subring(H, hnf({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3)));
    CHECK(!is_subring(H, hnf({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}, 3)));
    LieRing S = sub_ring(H, hnf({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, 3), "h2");
    CHECK(S.structure(0, 1) == IntVec{0, 0, 2});
    CHECK(reason_of([&] { sub_ring(H, hnf({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}, 3), "x"); }) == "subring");
  }

  TEST_CASE("property: is_ideal agrees with the brute-force check") {
    std::mt19937_64 rng(22);
    LieRing F = catalog("filiform_4");
    int ideals = 0;
    for (int t = 0; t < 200; ++t) {
      IntMatrix m;
      for (int i = 0; i < 4; ++i) m.push_back(oracle::random_vector(rng, 4, -3, 3));
      Lattice a = hnf(m, 4);
      if (!a.is_full_rank()) continue;
      std::vector<IntVec> tri = a.basis();
      bool brute = oracle::is_ideal_triangular(F, tri);
      CHECK(is_ideal(F, a) == brute);
      ideals += brute;
      CHECK(is_ideal(F, ideal_closure(F, a)));
    }
    CHECK(ideals > 0);
  }

  TEST_CASE("reduction modulo prime powers") {
    LieRing H = catalog("heisenberg_3");
    CHECK(reduce_mod(H, 2).size_log_p() == 3);
    CHECK(reduce_mod(H, 4).size_log_p() == 6);
    auto Z9 = reduce_mod(catalog("abelian_1"), 9);
    CHECK(Z9.p == 3);
    CHECK(Z9.l == 2);
    CHECK(reason_of([&] { reduce_mod(H, 6); }) == "modulus");
    CHECK(reason_of([&] { reduce_mod(H, 1); }) == "modulus");
  }

  TEST_CASE("validation") {
    CHECK(reason_of([] { LieRing::from_brackets("x", 3, {{0, 1, {0, 0, 1}}, {0, 1, {0, 0, 1}}}); }) == "duplicate");
    CHECK(reason_of([] { LieRing::from_brackets("x", 3, {{0, 3, {0, 0, 1}}}); }) == "bounds");
    CHECK(reason_of([] { LieRing::from_brackets("x", 3, {{0, 1, {0, 1}}}); }) == "dimension");
    CHECK(reason_of([] {
            LieRing::from_brackets("x", 5, {{0, 1, {0, 0, 0, 1, 0}}, {2, 3, {0, 0, 0, 0, -1}}});
          }) == "jacobi");
    CHECK(reason_of([] {
            LieRing::from_brackets("so3", 3, {{0, 1, {0, 0, 1}}, {0, 2, {0, 1, 0}}, {1, 2, {1, 0, 0}}});
          }) == "nilpotency");
    CHECK(reason_of([] { catalog("nope"); }) == "unknown-ring");
    CHECK(reason_of([] { ring_from_json("{"); }) == "parse");
  }

  TEST_CASE("json round trip and catalog") {
    CHECK(catalog_names().size() == 5);
    for (const auto& name : catalog_names()) {
      LieRing L = catalog(name);
      LieRing M = ring_from_json(ring_to_json(L));
      CHECK(M.name() == L.name());
      CHECK(M.rank() == L.rank());
      CHECK(M.terms().size() == L.terms().size());
      for (std::size_t i = 0; i < L.rank(); ++i)
        for (std::size_t j = 0; j < L.rank(); ++j) CHECK(M.structure(i, j) == L.structure(i, j));
    }
    LieRing J = ring_from_json(R"({"name": "h", "rank": 3, "brackets": [[1, 2, [0, 0, "2"]]]})");
    CHECK(J.structure(0, 1) == IntVec{0, 0, 2});
    CHECK(catalog("abelian_1").rank() == 1);
  }
}
