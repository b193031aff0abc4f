#pragma once

#include <map>
#include <string>
#include <vector>

#include "rfgrowth/lie_ring.hpp"
#include "rfgrowth/numeric.hpp"

namespace rfg::freelie {

// Truncated free associative algebra over Q on letters 0, 1, 2, ...
using Word = std::vector<int>;
using Poly = std::map<Word, Rat>;

Poly letter(int a);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly scale(const Rat& s, const Poly& a);
Poly mul(const Poly& a, const Poly& b, int max_degree);
Poly commutator(const Poly& a, const Poly& b, int max_degree);
Poly homogeneous_part(const Poly& a, int degree);
// exp(x) and log(1 + z) for x, z without constant term.
Poly exp_series(const Poly& x, int max_degree);
Poly log_one_plus(const Poly& z, int max_degree);
// log(exp(x_1) exp(x_2) ... exp(x_k)).
Poly log_of_exp_product(const std::vector<Poly>& factors, int max_degree);

// Basic commutator: a letter, or [left, right] of two earlier elements.
struct HallElement {
  int weight = 1;
  int letter = -1;
  int left = -1;
  int right = -1;
};

// Hall basis of the free Lie algebra on `generators` letters up to
// `max_weight`. Elements are ordered by weight and, within a weight, by the
// pair (left, right). [a, b] is basic when a < b and, if b = [c, d], c <= a.
class HallBasis {
 public:
  HallBasis(int generators, int max_weight);

  int generators() const { return generators_; }
  int max_weight() const { return max_weight_; }
  std::size_t size() const { return elements_.size(); }
  const HallElement& operator[](std::size_t i) const { return elements_[i]; }
  const Poly& expansion(std::size_t i) const { return expansions_[i]; }
  std::string label(std::size_t i, const std::string& letters = "XYZUVW") const;

  // Coordinates of a Lie polynomial (degrees 1..max_weight) in this basis.
  // Throws "internal" if the polynomial is not in the span.
  RatVec coordinates(const Poly& lie_element) const;

 private:
  struct WeightSolver {
    std::vector<std::size_t> members;  // basis indices of this weight
    std::vector<Word> pivot_words;
    std::vector<RatVec> inverse;  // members.size() x members.size()
  };
  int generators_;
  int max_weight_;
  std::vector<HallElement> elements_;
  std::vector<Poly> expansions_;
  std::vector<WeightSolver> solvers_;  // indexed by weight
};

// Free nilpotent Lie ring of the given class on `generators` letters, with
// basis the Hall basis. Its structure constants are integers.
LieRing free_nilpotent_ring(int generators, int cls, const std::string& name = "");

}  // namespace rfg::freelie
