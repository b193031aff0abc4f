#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rfgrowth/numeric.hpp"

namespace rfg::modp {

using Row = I64Vec;

// Subspace of F_p^n in reduced row echelon form (pivots 1, zeros above and
// below each pivot), so equal subspaces have equal rows.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t n, std::int64_t p) : n_(n), p_(p) {}

  std::size_t ambient() const { return n_; }
  std::int64_t prime() const { return p_; }
  std::size_t dim() const { return rows_.size(); }
  std::size_t codim() const { return n_ - rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Row& v) const;
  bool contains(const Subspace& other) const;
  // Coordinates of v in rows() (the pivot entries of v), assuming v is inside.
  Row coordinates(const Row& v) const;
  bool operator==(const Subspace& o) const { return n_ == o.n_ && p_ == o.p_ && rows_ == o.rows_; }
  bool operator<(const Subspace& o) const { return rows_ < o.rows_; }
  std::string key() const;

 private:
  friend Subspace span(std::vector<Row> rows, std::size_t n, std::int64_t p);
  std::size_t n_ = 0;
  std::int64_t p_ = 2;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

Subspace span(std::vector<Row> rows, std::size_t n, std::int64_t p);
Subspace whole(std::size_t n, std::int64_t p);
Subspace zero(std::size_t n, std::int64_t p);
// {x : r . x = 0 for every row r}.
Subspace annihilator(const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

// Calls visit(phi) for each nonzero functional phi in the annihilator of w,
// up to scalars (first nonzero coordinate equal to 1). Stops early if visit
// returns false.
void for_each_functional(const Subspace& w, const std::function<bool(const Row&)>& visit);

// Full-rank sublattice of Z^n containing m Z^n for m = index(), stored as an
// upper triangular Hermite normal form with nonnegative entries reduced
// modulo the pivots. All arithmetic is in 64 bits with 128-bit products.
class ModLattice {
 public:
  ModLattice() = default;

  std::size_t ambient() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  std::int64_t index() const;
  // Exact coordinates of v in rows(), or nullopt if v is not in the lattice.
  std::optional<Row> coordinates(const Row& v) const;
  bool contains(const Row& v) const;
  bool operator==(const ModLattice& o) const { return rows_ == o.rows_; }
  bool operator<(const ModLattice& o) const { return rows_ < o.rows_; }
  std::string key() const;

 private:
  friend ModLattice hnf_mod(const std::vector<Row>& gens, std::size_t n, std::int64_t m);
  std::vector<Row> rows_;
};

// Lattice generated by gens together with m Z^n (m >= 1).
ModLattice hnf_mod(const std::vector<Row>& gens, std::size_t n, std::int64_t m);
ModLattice full_mod_lattice(std::size_t n);

}  // namespace rfg::modp
