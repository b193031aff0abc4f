#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfgrowth/bch.hpp"
#include "rfgrowth/lattice.hpp"
#include "rfgrowth/lie_ring.hpp"

namespace rfg {

// A Lie ring whose lattice is closed under the BCH product.
struct LRGroup {
  LieRing ring;
  const BCHTable* table = nullptr;
  int cls = 0;
  GuivarchDecomposition dec;
};

// Closure certificates. Each map below is a polynomial of degree <= c in
// integer coordinates, so it is integer-valued everywhere iff it is
// integer-valued on the points a in N^{2n} with a_1 + ... + a_{2n} <= c.
struct ClosureCheck {
  bool ok = true;
  IntVec u, v;        // offending pair when !ok
  std::string detail;
};

// Rejects with reason "not-lr" and the offending pair in the message.
LRGroup validate_lr(const LieRing& L, const BCHTable& table);
ClosureCheck check_lr(const LieRing& L, const BCHTable& table);
// u * v in S for all u, v in S (S full rank).
ClosureCheck check_star_closed(const LRGroup& G, const Lattice& S);
// g * s * g^-1 in S for all g in L, s in S.
ClosureCheck check_conjugation_closed(const LRGroup& G, const Lattice& S);

struct IdealToNormal {
  Lattice ideal;
  Lattice result;  // I_G
  Int delta;
  int cls = 0;
  bool is_ideal = false;
  bool star_closed = false;
  bool normal = false;
  bool sandwich = false;      // Delta^c I in I_G in I
  bool index_bound = false;   // [L:I_G] <= Delta^{cn} [L:I]
  Int ideal_index;
  Int result_index;
  Int bound;
  bool all_passed() const { return is_ideal && star_closed && normal && sandwich && index_bound; }
};

// I_G = sum_i Delta^{c-i} (saturated gamma_i cap I). Throws "ideal" unless I
// is a finite-index ideal.
IdealToNormal ideal_to_normal(const LRGroup& G, const Lattice& I);

struct CosetCheck {
  bool ok = true;
  std::size_t samples = 0;
  IntVec v, s;  // counterexample when !ok
  std::string failure;  // "star-in-sum" or "sum-in-star"
};

// For random v in [-box, box]^n and s in S checks v*s in v+S and v+s in v*S.
CosetCheck coset_equality_check(const LRGroup& G, const Lattice& S, std::size_t samples, std::uint64_t seed,
                                long box = 20);

struct IndexTwoWays {
  Int lattice_index;
  Int group_index;
  bool agree() const { return lattice_index == group_index; }
};

// Lattice index and the number of left cosets v * S, counted by breadth-first
// search over the group. Throws "cap" above cap cosets.
IndexTwoWays index_two_ways(const LRGroup& G, const Lattice& S, std::size_t cap = 200000);

struct NormalToIdealOptions {
  std::optional<std::vector<Int>> f;  // replaces f(0..c)
  bool lattice_only = false;          // allow class > 3
};

struct NormalToIdeal {
  Lattice normal;
  Lattice result;  // N_L
  std::vector<Int> f;
  Int lambda;
  int cls = 0;
  int iterations = 0;
  bool star_closed = false;
  bool is_ideal = false;
  bool normal_subgroup = false;
  bool containment = false;   // seeds in N_L in N
  bool index_bound = false;   // [L:N_L] <= f(c-1)^n [L:N]
  Int normal_index;
  Int result_index;
  Int bound;
  bool all_passed() const { return star_closed && is_ideal && normal_subgroup && containment && index_bound; }
};

// N_L: the subgroup generated by f(c-i)-th powers of the elements of
// (saturated gamma_i) cap N. Throws "normal" unless N is a finite-index normal
// subgroup, "class" for class > 3 without lattice_only.
NormalToIdeal normal_to_ideal(const LRGroup& G, const Lattice& N, const NormalToIdealOptions& options = {});

}  // namespace rfg
