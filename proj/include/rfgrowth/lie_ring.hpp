#pragma once

#include <string>
#include <vector>

#include "rfgrowth/lattice.hpp"
#include "rfgrowth/numeric.hpp"

namespace rfg {

// [e_i, e_j] = value, 0-based, i < j.
struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  IntVec value;
};

// Lower central series. layers[k] is gamma_{k+1}(L); the last entry is the
// zero lattice gamma_{c+1}. saturated[k] = (gamma_{k+1}(L) tensor Q) cap L.
struct LowerCentralSeries {
  std::vector<Lattice> layers;
  std::vector<Lattice> saturated;
  int nilpotency_class = 0;
};

// Nilpotent Lie ring on Z^n given by integer structure constants. Instances
// are only created through validating factories, so every LieRing satisfies
// antisymmetry, the Jacobi identity and nilpotency.
class LieRing {
 public:
  // One nonzero structure constant: [e_i, e_j] has coefficient coef on e_k (i < j).
  struct Term {
    std::size_t i, j, k;
    Int coef;
  };

  static LieRing from_brackets(std::string name, std::size_t rank, const std::vector<BracketEntry>& brackets);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return rank_; }
  int nilpotency_class() const { return lcs_.nilpotency_class; }
  const LowerCentralSeries& lcs() const { return lcs_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<BracketEntry> brackets() const;  // nonzero [e_i, e_j], i < j
  IntVec structure(std::size_t i, std::size_t j) const;

  IntVec bracket(const IntVec& u, const IntVec& v) const;
  RatVec bracket(const RatVec& u, const RatVec& v) const;
  I64Vec bracket_mod(const I64Vec& u, const I64Vec& v, std::int64_t q) const;

 private:
  LieRing() = default;
  std::string name_;
  std::size_t rank_ = 0;
  std::vector<Term> terms_;
  LowerCentralSeries lcs_;
};

LowerCentralSeries lower_central_series(const LieRing& L);

// Lattice spanned by all [a_i, b_j].
Lattice bracket_lattice(const LieRing& L, const Lattice& a, const Lattice& b);
bool is_ideal(const LieRing& L, const Lattice& a);
// Smallest ideal containing a.
Lattice ideal_closure(const LieRing& L, const Lattice& a);
bool is_subring(const LieRing& L, const Lattice& a);
// The Lie ring structure of a full-rank subring, in the HNF basis of the
// sublattice. Throws "subring" when a is not bracket-closed or not full rank.
LieRing sub_ring(const LieRing& L, const Lattice& a, std::string name);

// L / qL for a prime power q.
struct FiniteLieAlgebra {
  std::string name;
  std::size_t rank = 0;
  std::int64_t q = 0;
  std::int64_t p = 0;
  int l = 0;
  std::vector<LieRing::Term> terms;  // coefficients reduced into [0, q)

  std::int64_t size_log_p() const { return static_cast<std::int64_t>(rank) * l; }
  I64Vec bracket(const I64Vec& u, const I64Vec& v) const;
};

// Throws "modulus" unless q is a prime power >= 2.
FiniteLieAlgebra reduce_mod(const LieRing& L, std::int64_t q);

// Bundled rings: abelian_<k>, heisenberg_3, heisenberg_5, filiform_4, free_nilp_2_3.
LieRing catalog(const std::string& name);
std::vector<std::string> catalog_names();

// JSON ring format: {"name": str, "rank": n, "brackets": [[i, j, [c_1..c_n]], ...]}
// with 1-based indices and i < j.
LieRing ring_from_json(const std::string& text);
std::string ring_to_json(const LieRing& L);
// A catalog name, or a path to a JSON ring file.
LieRing load_ring(const std::string& source);

}  // namespace rfg
