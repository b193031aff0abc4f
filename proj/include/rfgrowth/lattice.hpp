#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfgrowth/numeric.hpp"

namespace rfg {

using IntMatrix = std::vector<IntVec>;  // row-major, one row per vector

// Sublattice of Z^n stored in canonical row Hermite normal form: rows are in
// echelon order with strictly increasing pivot columns, pivots positive,
// entries above each pivot reduced into [0, pivot). Two lattices are equal
// iff their bases are equal.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient_rank = 0) : ambient_(ambient_rank) {}

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_zero() const { return basis_.empty(); }
  bool is_full_rank() const { return basis_.size() == ambient_; }

  // Integer coordinates of v with respect to basis(), or nullopt if v is not
  // in the lattice.
  std::optional<IntVec> coordinates(const IntVec& v) const;
  bool contains(const IntVec& v) const { return coordinates(v).has_value(); }
  bool contains(const Lattice& sub) const;

  bool operator==(const Lattice& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

  std::string to_string() const;  // "r1;r2;..." with comma-joined coordinates

 private:
  friend Lattice hnf(const IntMatrix& rows, std::size_t ambient_rank);
  std::size_t ambient_;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

// Canonical lattice spanned by the rows. Throws "dimension" on ragged input.
Lattice hnf(const IntMatrix& rows, std::size_t ambient_rank);
inline Lattice hnf(const IntMatrix& rows) {
  return hnf(rows, rows.empty() ? 0 : rows.front().size());
}
Lattice full_lattice(std::size_t n);
Lattice scaled_full_lattice(std::size_t n, const Int& k);  // k * Z^n
Lattice scale(const Int& k, const Lattice& a);

Lattice intersect(const Lattice& a, const Lattice& b);
Lattice sum(const Lattice& a, const Lattice& b);
Lattice saturate(const Lattice& a);
bool member(const IntVec& v, const Lattice& a);

// [sup : sub]; nullopt means infinite (rank drop). Throws "containment" if
// sub is not contained in sup.
std::optional<Int> index(const Lattice& sub, const Lattice& sup);
// Index in Z^n.
std::optional<Int> index(const Lattice& sub);

// --- integer matrix helpers -------------------------------------------------

struct HnfWithTransform {
  IntMatrix h;      // echelon form including trailing zero rows (not reduced canonically)
  IntMatrix u;      // unimodular, u * a == h
  IntMatrix u_inv;  // inverse of u
  std::size_t rank = 0;
};
HnfWithTransform hnf_with_transform(const IntMatrix& a, std::size_t columns);

// Basis of {x in Z^m : x * a == 0} for an m x columns matrix a.
IntMatrix left_kernel(const IntMatrix& a, std::size_t columns);
// Elementary divisors (Smith normal form diagonal, nonzero entries only).
std::vector<Int> elementary_divisors(const IntMatrix& a, std::size_t columns);

IntMatrix transpose(const IntMatrix& a, std::size_t columns);
IntVec row_times(const IntVec& x, const IntMatrix& a, std::size_t columns);  // x * a

}  // namespace rfg
