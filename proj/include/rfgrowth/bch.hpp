#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rfgrowth/free_lie.hpp"
#include "rfgrowth/lattice.hpp"
#include "rfgrowth/lie_ring.hpp"
#include "rfgrowth/numeric.hpp"

namespace rfg {

constexpr int kMaxBchClass = 6;

// Truncated BCH data for class c, on the Hall basis in two symbols X, Y.
//   u * v          = sum_h star_coeffs[h] h(u, v)
//   [u, v]_G       = sum_h comm_coeffs[h] h(u, v)   (u^-1 v^-1 u v)
//   u + v          = u * v * prod_h kappa_h(u, v)^{r[h]}
//   [u, v]_L       = [u, v]_G * prod_h kappa_h(u, v)^{s[h]}
// kappa_h is the group commutator word obtained from h by replacing each Lie
// bracket with a group commutator; the products run over Hall elements of
// weight >= 2 (resp. >= 3) in basis order.
struct BCHTable {
  int cls = 0;
  std::shared_ptr<const freelie::HallBasis> hall;
  RatVec star_coeffs;
  RatVec comm_coeffs;
  Int delta;
  RatVec r;
  RatVec s;
  Int lambda;
  std::vector<Int> f;  // f(0..cls)
};

// Computes the table from scratch. Throws "class" outside 1..kMaxBchClass.
BCHTable build_bch_table(int cls);
// Cached, thread-safe access to build_bch_table.
const BCHTable& bch_table(int cls);

// f(0) = 1, f(i+1) = (f(i) * lambda^c)^c.
std::vector<Int> f_values(const Int& lambda, int cls);

// Values of every Hall element of weight <= L's class evaluated at (u, v).
std::vector<RatVec> evaluate_hall(const LieRing& L, const freelie::HallBasis& hall, const RatVec& u, const RatVec& v);

RatVec star(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v);
RatVec star_inverse(const RatVec& u);
RatVec group_commutator(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v);
// Same commutator as u^-1 * (v^-1 * (u * v)).
RatVec group_commutator_by_composition(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v);
// m-fold product of u with itself (m may be negative).
RatVec star_power(const LieRing& L, const BCHTable& table, const RatVec& u, long m);

// Right-hand sides of the inverse formulas evaluated in L.
RatVec inverse_bch_sum(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v);
RatVec inverse_bch_bracket(const LieRing& L, const BCHTable& table, const RatVec& u, const RatVec& v);

// Exact unipotent matrix exponential and logarithm (n <= 8).
using RatMatrix = std::vector<RatVec>;
RatMatrix mat_exp(const RatMatrix& m);
RatMatrix mat_log(const RatMatrix& u);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);

// Strictly upper triangular n x n matrices as a Lie ring under AB - BA, with
// basis E_ij (i < j) in lexicographic order.
LieRing upper_triangular_ring(std::size_t n);
RatVec matrix_to_coords(const RatMatrix& m);
RatMatrix coords_to_matrix(const RatVec& v, std::size_t n);

// Decomposition of L tensor Q along the saturated lower central series:
// an adapted unimodular basis whose block i spans a complement a_i of the
// saturated layer i+1 inside saturated layer i.
struct GuivarchDecomposition {
  std::size_t rank = 0;
  int cls = 0;
  IntMatrix basis;    // rows, block by block
  IntMatrix inverse;  // adapted coordinates = v * inverse
  std::vector<int> layer_of;                  // 1-based layer of each adapted coordinate
  std::vector<std::vector<std::size_t>> blocks;  // adapted coordinate indices per layer
};

GuivarchDecomposition guivarch_decomposition(const LieRing& L);
RatVec adapted_coordinates(const GuivarchDecomposition& dec, const RatVec& v);
IntVec adapted_coordinates(const GuivarchDecomposition& dec, const IntVec& v);
IntVec from_adapted(const GuivarchDecomposition& dec, const IntVec& coords);
// Max-norm of each layer component, layers 1..c.
std::vector<Rat> layer_norms(const GuivarchDecomposition& dec, const RatVec& v);
double guivarch_length(const GuivarchDecomposition& dec, const RatVec& v);
// Exact test l_G(v) <= r.
bool guivarch_at_most(const GuivarchDecomposition& dec, const RatVec& v, const Rat& r);
// Smallest integer r with l_G(v) <= r.
Int guivarch_ceiling(const GuivarchDecomposition& dec, const IntVec& v);

}  // namespace rfg
