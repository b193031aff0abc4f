#include "rfgrowth/free_lie.hpp"

#include "rfgrowth/error.hpp"

namespace rfg::freelie {

namespace {

void add_into(Poly& acc, const Word& w, const Rat& c) {
  auto [it, inserted] = acc.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  } else if (c == 0) {
    acc.erase(it);
  }
}

Poly one() { return Poly{{Word{}, Rat(1)}}; }

// Inverse of a square rational matrix by Gauss-Jordan elimination.
std::vector<RatVec> invert(std::vector<RatVec> a) {
  const std::size_t n = a.size();
  std::vector<RatVec> inv(n, rat_zero(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) fail("internal", "singular matrix in Hall basis solver");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat s = 1 / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

Poly letter(int a) { return Poly{{Word{a}, Rat(1)}}; }

Poly add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [w, c] : b) add_into(r, w, c);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [w, c] : b) add_into(r, w, -c);
  return r;
}

Poly scale(const Rat& s, const Poly& a) {
  Poly r;
  if (s == 0) return r;
  for (const auto& [w, c] : a) r.emplace(w, s * c);
  return r;
}

Poly mul(const Poly& a, const Poly& b, int max_degree) {
  Poly r;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      if (static_cast<int>(u.size() + v.size()) > max_degree) continue;
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      add_into(r, w, x * y);
    }
  return r;
}

Poly commutator(const Poly& a, const Poly& b, int max_degree) {
  return sub(mul(a, b, max_degree), mul(b, a, max_degree));
}

Poly homogeneous_part(const Poly& a, int degree) {
  Poly r;
  for (const auto& [w, c] : a)
    if (static_cast<int>(w.size()) == degree) r.emplace(w, c);
  return r;
}

Poly exp_series(const Poly& x, int max_degree) {
  Poly result = one();
  Poly term = one();
  for (int k = 1; k <= max_degree; ++k) {
    term = scale(Rat(1, k), mul(term, x, max_degree));
    if (term.empty()) break;
    result = add(result, term);
  }
  return result;
}

Poly log_one_plus(const Poly& z, int max_degree) {
  Poly result;
  Poly power = one();
  for (int k = 1; k <= max_degree; ++k) {
    power = mul(power, z, max_degree);
    if (power.empty()) break;
    result = add(result, scale(Rat(k % 2 ? 1 : -1, k), power));
  }
  return result;
}

Poly log_of_exp_product(const std::vector<Poly>& factors, int max_degree) {
  Poly p = one();
  for (const auto& f : factors) p = mul(p, exp_series(f, max_degree), max_degree);
  return log_one_plus(sub(p, one()), max_degree);
}

HallBasis::HallBasis(int generators, int max_weight) : generators_(generators), max_weight_(max_weight) {
  if (generators < 1 || max_weight < 1) fail("range", "Hall basis needs at least one generator and weight >= 1");
  for (int a = 0; a < generators; ++a) {
    elements_.push_back({1, a, -1, -1});
    expansions_.push_back(letter(a));
  }
  for (int w = 2; w <= max_weight; ++w) {
    const int existing = static_cast<int>(elements_.size());
    for (int a = 0; a < existing; ++a)
      for (int b = a + 1; b < existing; ++b) {
        const auto& eb = elements_[b];
        if (elements_[a].weight + eb.weight != w) continue;
        if (eb.weight > 1 && eb.left > a) continue;
        elements_.push_back({w, -1, a, b});
        expansions_.push_back(commutator(expansions_[a], expansions_[b], max_weight));
      }
  }

  solvers_.resize(static_cast<std::size_t>(max_weight) + 1);
  for (int w = 1; w <= max_weight; ++w) {
    auto& s = solvers_[w];
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i].weight == w) s.members.push_back(i);
    const std::size_t m = s.members.size();
    std::map<Word, RatVec> rows;
    for (std::size_t c = 0; c < m; ++c)
      for (const auto& [word, coef] : expansions_[s.members[c]]) {
        auto it = rows.try_emplace(word, rat_zero(m)).first;
        it->second[c] = coef;
      }
    // Greedily pick words whose rows are independent.
    std::vector<RatVec> echelon;
    std::vector<std::size_t> echelon_pivot;
    std::vector<RatVec> chosen;
    for (const auto& [word, row] : rows) {
      if (chosen.size() == m) break;
      RatVec r = row;
      for (std::size_t e = 0; e < echelon.size(); ++e) {
        const Rat f = r[echelon_pivot[e]];
        if (f != 0)
          for (std::size_t j = 0; j < m; ++j) r[j] -= f * echelon[e][j];
      }
      std::size_t p = 0;
      while (p < m && r[p] == 0) ++p;
      if (p == m) continue;
      Rat inv = 1 / r[p];
      for (auto& x : r) x *= inv;
      echelon.push_back(r);
      echelon_pivot.push_back(p);
      s.pivot_words.push_back(word);
      chosen.push_back(row);
    }
    if (chosen.size() != m) fail("internal", "Hall elements of weight " + std::to_string(w) + " are dependent");
    s.inverse = invert(chosen);
  }
}

std::string HallBasis::label(std::size_t i, const std::string& letters) const {
  const auto& e = elements_[i];
  if (e.weight == 1) {
    if (e.letter < static_cast<int>(letters.size())) return std::string(1, letters[e.letter]);
    return "x" + std::to_string(e.letter + 1);
  }
  return "[" + label(e.left, letters) + "," + label(e.right, letters) + "]";
}

RatVec HallBasis::coordinates(const Poly& lie_element) const {
  RatVec x = rat_zero(elements_.size());
  Poly rebuilt;
  for (int w = 1; w <= max_weight_; ++w) {
    const auto& s = solvers_[w];
    const std::size_t m = s.members.size();
    RatVec b = rat_zero(m);
    bool any = false;
    for (std::size_t r = 0; r < m; ++r) {
      auto it = lie_element.find(s.pivot_words[r]);
      if (it != lie_element.end()) {
        b[r] = it->second;
        any = true;
      }
    }
    if (!any) continue;
    for (std::size_t c = 0; c < m; ++c) {
      Rat v = 0;
      for (std::size_t r = 0; r < m; ++r)
        if (b[r] != 0) v += s.inverse[c][r] * b[r];
      if (v == 0) continue;
      x[s.members[c]] = v;
      rebuilt = add(rebuilt, scale(v, expansions_[s.members[c]]));
    }
  }
  if (rebuilt != lie_element) fail("internal", "polynomial is not a Lie element of weight <= " + std::to_string(max_weight_));
  return x;
}

LieRing free_nilpotent_ring(int generators, int cls, const std::string& name) {
  HallBasis hall(generators, cls);
  const std::size_t n = hall.size();
  std::vector<BracketEntry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (hall[i].weight + hall[j].weight > cls) continue;
      IntVec c = to_int(hall.coordinates(commutator(hall.expansion(i), hall.expansion(j), cls)));
      if (!is_zero(c)) entries.push_back({i, j, c});
    }
  std::string label = name.empty() ? "free_nilp_" + std::to_string(generators) + "_" + std::to_string(cls) : name;
  return LieRing::from_brackets(label, n, entries);
}

}  // namespace rfg::freelie
