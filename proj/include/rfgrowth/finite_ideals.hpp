#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfgrowth/lie_ring.hpp"
#include "rfgrowth/modp.hpp"

namespace rfg {

// An ideal of L/qL (q = p^l), stored as its preimage lattice in Z^n in
// modular Hermite normal form; [L : lattice] = p^exponent.
struct IdealModQ {
  std::int64_t p = 0;
  int l = 0;
  modp::ModLattice lattice;
  int exponent = 0;

  std::int64_t modulus() const { return checked_pow(p, l); }
  std::int64_t index() const { return lattice.index(); }
  std::string key() const { return lattice.key(); }
};

// All ideals of L/pL of codimension <= max_codim, each once, sorted by
// codimension and then canonical form. Throws "modulus" unless q is prime.
std::vector<modp::Subspace> enumerate_ideal_subspaces(const FiniteLieAlgebra& A, int max_codim);
std::vector<IdealModQ> enumerate_ideals(const FiniteLieAlgebra& A, int max_codim);
// All ideals of L/qL of index <= p^max_index_exponent (q = p^l).
std::vector<IdealModQ> enumerate_ideals_prime_power(const FiniteLieAlgebra& A, int max_index_exponent);

// Ideals of codimension exactly one inside an ideal I of L/pL that contain [I, L].
std::vector<modp::Subspace> child_subspaces(const FiniteLieAlgebra& A, const modp::Subspace& I);
bool is_ideal_mod_p(const FiniteLieAlgebra& A, const modp::Subspace& I);

// --- chains of lattices -----------------------------------------------------
// For an ideal I of L (full rank, p-power or mixed index) and a prime p, the
// children are the ideals J with [I : J] = p and J containing [I, L] + pI,
// and also modulus * Z^n when modulus > 0. They correspond to hyperplanes of
// I/pI (in I-coordinates) containing the subspace returned here.
modp::Subspace child_constraint(const LieRing& L, const modp::ModLattice& I, std::int64_t p,
                                std::int64_t modulus = 0);
// Coordinates of v in the basis of I, modulo p.
modp::Row coordinates_mod(const modp::ModLattice& I, const modp::Row& v, std::int64_t p);
modp::Row coordinates_mod(const modp::ModLattice& I, const IntVec& v, std::int64_t p);
// The child cut out by a functional phi on I/pI.
modp::ModLattice child_lattice(const modp::ModLattice& I, std::int64_t p, const modp::Row& phi);
bool is_ideal_lattice(const LieRing& L, const modp::ModLattice& I);

// Intersection of all ideals of L/pL of codimension <= k.
modp::Subspace small_codim_intersection(const FiniteLieAlgebra& A, int k);
// Smallest k such that the ideals of codimension <= k intersect in zero.
int delta_p(const LieRing& L, std::int64_t p);
// Intersection of all ideals of codimension < delta (delta_p by default).
modp::Subspace delta_ideal_mod_p(const LieRing& L, std::int64_t p, std::optional<int> delta = std::nullopt);

struct DeltaRow {
  std::int64_t p = 0;
  int delta = 0;
  std::size_t ideal_dim = 0;  // dim of delta_ideal_mod_p
  modp::Subspace ideal;
  double elapsed_ms = 0;
};

struct DeltaSweep {
  std::vector<DeltaRow> rows;  // in the order of the requested primes
  int stabilized = 0;          // modal delta, smaller value on ties
  std::vector<std::int64_t> dissenting;
};

DeltaSweep delta_sweep(const LieRing& L, const std::vector<std::int64_t>& primes);

}  // namespace rfg
