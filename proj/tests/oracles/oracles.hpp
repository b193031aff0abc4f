#pragma once

// Brute-force reference implementations used only by the tests. None of them
// call into the algorithms they are checked against.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "rfgrowth/free_lie.hpp"
#include "rfgrowth/lie_ring.hpp"
#include "rfgrowth/numeric.hpp"

namespace oracle {

using rfg::Int;
using rfg::IntVec;
using rfg::Rat;
using rfg::RatVec;
using Row = std::vector<std::int64_t>;
using Poly = std::map<std::vector<int>, Rat>;  // noncommutative polynomial in letters 0, 1

// log(e^X e^Y) truncated at degree c by the Dynkin formula.
Poly dynkin_log(int c);
// log(e^-X e^-Y e^X e^Y) truncated at degree c, from exponential and
// logarithm series.
Poly group_commutator_log(int c);
// Coordinates of a Lie polynomial in the Hall basis, with expansions rebuilt
// from the tree structure and a direct linear solve. Throws if the polynomial
// is not in the span.
RatVec hall_coordinates(const rfg::freelie::HallBasis& hall, const Poly& p);
Int denominator_lcm(const RatVec& v);

// Every subspace of F_p^n as canonical reduced echelon rows.
std::vector<std::vector<Row>> all_subspaces(std::size_t n, std::int64_t p);
std::vector<Row> rref(std::vector<Row> rows, std::int64_t p);
// Subspaces of F_p^n closed under bracketing with the basis.
std::set<std::vector<Row>> ideals_mod_p(const rfg::LieRing& L, std::int64_t p);

// Upper triangular bases with positive diagonal, entries above each pivot in
// [0, pivot), of every full-rank sublattice of Z^n with index <= bound.
std::vector<std::vector<IntVec>> sublattices(std::size_t n, long bound);
bool in_triangular(const std::vector<IntVec>& basis, IntVec v);
bool is_ideal_triangular(const rfg::LieRing& L, const std::vector<IntVec>& basis);
Int triangular_index(const std::vector<IntVec>& basis);

// Bracket by a double loop over the structure constants.
IntVec naive_bracket(const rfg::LieRing& L, const IntVec& u, const IntVec& v);

// Smallest index over ideals I with pL <= I, p <= max_prime, v not in I.
Int divisibility_p1(const rfg::LieRing& L, const IntVec& v, std::int64_t max_prime);
// Smallest index over all finite-index ideals of index <= bound not containing
// v, or 0 if there is none.
Int divisibility_all(const rfg::LieRing& L, const IntVec& v, long bound);

// Rational-span membership by exact elimination.
bool in_rational_span(const std::vector<IntVec>& rows, const IntVec& v);

// Small deterministic generators.
IntVec random_vector(std::mt19937_64& rng, std::size_t n, long lo, long hi);
Rat random_rat(std::mt19937_64& rng, long num, long den);

}  // namespace oracle
