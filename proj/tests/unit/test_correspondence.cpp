#include <doctest.h>

#include <random>

#include "../oracles/oracles.hpp"
#include "rfgrowth/correspondence.hpp"
#include "rfgrowth/error.hpp"

using namespace rfg;

namespace {

LieRing heisenberg_lr() { return LieRing::from_brackets("heisenberg_lr", 3, {{0, 1, {0, 0, 2}}}); }

LRGroup group_of(const LieRing& L) { return validate_lr(L, bch_table(std::max(1, L.nilpotency_class()))); }

std::string reason_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.reason();
  }
  return "";
}

// Pairs from S with coordinates in [-box, box] whose product leaves S.
bool box_finds_failure(const LRGroup& G, const Lattice& S, long box) {
  const std::size_t n = S.rank();
  for (long a = -box; a <= box; ++a)
    for (long b = -box; b <= box; ++b)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          IntVec u = scale(Int(a), S.basis()[i]);
          IntVec w = add(u, S.basis()[(i + 1) % n]);
          IntVec v = scale(Int(b), S.basis()[j]);
          for (const auto& x : {u, w}) {
            RatVec p = star(G.ring, *G.table, to_rat(x), to_rat(v));
            if (!is_integral(p) || !S.contains(to_int(p))) return true;
          }
        }
  return false;
}

}  // namespace

TEST_SUITE("correspondence") {
  TEST_CASE("LR validation") {
    CHECK_NOTHROW(group_of(heisenberg_lr()));
    CHECK_NOTHROW(group_of(catalog("abelian_3")));
    CHECK(reason_of([] { group_of(catalog("heisenberg_3")); }) == "not-lr");
    auto c = check_lr(catalog("heisenberg_3"), bch_table(2));
    CHECK(!c.ok);
    CHECK(!is_integral(star(catalog("heisenberg_3"), bch_table(2), to_rat(c.u), to_rat(c.v))));
    CHECK(check_lr(upper_triangular_ring(4), bch_table(3)).ok == false);
  }

  TEST_CASE("property: closure certificates agree with direct search") {
    std::mt19937_64 rng(51);
    LRGroup G = group_of(heisenberg_lr());
    int closed = 0, open = 0;
    for (int t = 0; t < 60; ++t) {
      IntMatrix m;
      for (int i = 0; i < 3; ++i) m.push_back(oracle::random_vector(rng, 3, -4, 4));
      Lattice S = hnf(m, 3);
      if (!S.is_full_rank()) continue;
      auto c = check_star_closed(G, S);
      if (c.ok) {
        ++closed;
        CHECK(!box_finds_failure(G, S, 3));
      } else {
        ++open;
        // The counterexample is given in coordinates of the basis of S.
        IntVec u = row_times(c.u, S.basis(), 3), v = row_times(c.v, S.basis(), 3);
        RatVec p = star(G.ring, *G.table, to_rat(u), to_rat(v));
        CHECK((!is_integral(p) || !S.contains(to_int(p))));
      }
    }
    CHECK(closed > 0);
    CHECK(open > 0);
  }

  TEST_CASE("ideal to normal subgroup") {
    LRGroup A = group_of(catalog("abelian_3"));
    Lattice I = hnf({{2, 1, 0}, {0, 3, 0}, {0, 0, 5}}, 3);
    auto ra = ideal_to_normal(A, I);
    CHECK(ra.result == I);
    CHECK(ra.delta == 1);
    CHECK(ra.all_passed());

    LRGroup G = group_of(heisenberg_lr());
    auto r = ideal_to_normal(G, scaled_full_lattice(3, 2));
    CHECK(r.delta == 2);
    CHECK(r.result == hnf({{4, 0, 0}, {0, 4, 0}, {0, 0, 2}}, 3));
    CHECK(r.result_index == 32);
    CHECK(r.all_passed());
    // For I = L the first layer is still scaled by Delta.
    auto whole = ideal_to_normal(G, full_lattice(3));
    CHECK(whole.result == hnf({{2, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 3));
    CHECK(whole.all_passed());
    CHECK(reason_of([&] { ideal_to_normal(G, hnf({{1, 0, 0}, {0, 2, 0}, {0, 0, 4}}, 3)); }) == "ideal");
    CHECK(reason_of([&] { ideal_to_normal(G, hnf({{0, 0, 1}}, 3)); }) == "ideal");
  }

  TEST_CASE("cosets and indices") {
    LRGroup A = group_of(catalog("abelian_2"));
    CHECK(coset_equality_check(A, scaled_full_lattice(2, 2), 50, 1).ok);
    auto ia = index_two_ways(A, scaled_full_lattice(2, 2));
    CHECK(ia.lattice_index == 4);
    CHECK(ia.group_index == 4);

    LRGroup G = group_of(heisenberg_lr());
    Lattice IG = ideal_to_normal(G, scaled_full_lattice(3, 2)).result;
    CHECK(coset_equality_check(G, IG, 200, 7).ok);
    auto ig = index_two_ways(G, IG);
    CHECK(ig.agree());
    CHECK(ig.group_index == 32);
    CHECK(index_two_ways(G, full_lattice(3)).group_index == 1);
    auto bad = coset_equality_check(G, hnf({{1, 0, 0}}, 3), 50, 3);
    CHECK(!bad.ok);
    CHECK(reason_of([&] { index_two_ways(G, IG, 5); }) == "cap");
  }

  TEST_CASE("normal subgroup to ideal") {
    LRGroup A = group_of(catalog("abelian_3"));
    Lattice N = hnf({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}, 3);
    auto ra = normal_to_ideal(A, N);
    CHECK(ra.result == N);
    CHECK(ra.f[0] == 1);
    CHECK(ra.all_passed());

    LRGroup G = group_of(heisenberg_lr());
    auto r = normal_to_ideal(G, scaled_full_lattice(3, 2));
    CHECK(r.lambda == 2);
    CHECK(r.f[1] == 16);
    CHECK(r.result == hnf({{32, 0, 0}, {0, 32, 0}, {0, 0, 2}}, 3));
    CHECK(r.all_passed());
    CHECK(index_two_ways(G, r.result).agree());

    auto whole = normal_to_ideal(G, full_lattice(3));
    CHECK(whole.all_passed());
    CHECK(whole.result.contains(scaled_full_lattice(3, 16)));

    NormalToIdealOptions ones;
    ones.f = std::vector<Int>{1, 1, 1};
    CHECK(normal_to_ideal(G, scaled_full_lattice(3, 2), ones).result == scaled_full_lattice(3, 2));

    // e1 * 2e2 = e1 + 2e2 + 2e3 leaves span{e1, 2e2, 4e3}.
    CHECK(reason_of([&] { normal_to_ideal(G, hnf({{1, 0, 0}, {0, 2, 0}, {0, 0, 4}}, 3)); }) == "normal");

    LRGroup fake{catalog("abelian_3"), &bch_table(4), 4, guivarch_decomposition(catalog("abelian_3"))};
    CHECK(reason_of([&] { normal_to_ideal(fake, full_lattice(3)); }) == "class");
  }

  TEST_CASE("property: random ideals through both constructions") {
    std::mt19937_64 rng(52);
    LRGroup G = group_of(heisenberg_lr());
    int done = 0;
    for (int t = 0; t < 200 && done < 8; ++t) {
      IntMatrix m;
      for (int i = 0; i < 3; ++i) m.push_back(oracle::random_vector(rng, 3, -3, 3));
      Lattice I = ideal_closure(G.ring, hnf(m, 3));
      if (!I.is_full_rank() || *index(I) > 64) continue;
      ++done;
      auto r = ideal_to_normal(G, I);
      CHECK(r.all_passed());
      CHECK(index_two_ways(G, r.result).agree());
      CHECK(coset_equality_check(G, r.result, 50, t).ok);
      auto back = normal_to_ideal(G, r.result);
      CHECK(back.all_passed());
    }
    CHECK(done == 8);
  }
}
