#include "rfgrowth/lie_ring.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "rfgrowth/error.hpp"

namespace rfg {

namespace {

std::string vec_text(const IntVec& v) { return "(" + join(v) + ")"; }

template <class V>
void check_length(const V& v, std::size_t n) {
  if (v.size() != n)
    fail("dimension", "vector of length " + std::to_string(v.size()) + " in a rank " + std::to_string(n) + " ring");
}

}  // namespace

LieRing LieRing::from_brackets(std::string name, std::size_t rank, const std::vector<BracketEntry>& brackets) {
  if (rank == 0) fail("rank", "Lie ring of rank 0");
  LieRing L;
  L.name_ = std::move(name);
  L.rank_ = rank;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& b : brackets) {
    if (b.i >= rank || b.j >= rank || b.i >= b.j)
      fail("bounds", "bracket index pair (" + std::to_string(b.i + 1) + "," + std::to_string(b.j + 1) +
                         ") must satisfy 1 <= i < j <= " + std::to_string(rank));
    if (!seen.insert({b.i, b.j}).second)
      fail("duplicate", "bracket [e" + std::to_string(b.i + 1) + ",e" + std::to_string(b.j + 1) + "] given twice");
    check_length(b.value, rank);
    for (std::size_t k = 0; k < rank; ++k)
      if (b.value[k] != 0) L.terms_.push_back({b.i, b.j, k, b.value[k]});
  }
  std::sort(L.terms_.begin(), L.terms_.end(), [](const Term& a, const Term& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });

  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j)
      for (std::size_t k = j + 1; k < rank; ++k) {
        auto ei = unit_vector(rank, i), ej = unit_vector(rank, j), ek = unit_vector(rank, k);
        IntVec s = add(add(L.bracket(ei, L.bracket(ej, ek)), L.bracket(ej, L.bracket(ek, ei))),
                       L.bracket(ek, L.bracket(ei, ej)));
        if (!is_zero(s))
          fail("jacobi", "Jacobi identity fails on (e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ",e" +
                             std::to_string(k + 1) + "): sum " + vec_text(s));
      }

  L.lcs_ = lower_central_series(L);
  return L;
}

std::vector<BracketEntry> LieRing::brackets() const {
  std::vector<BracketEntry> out;
  for (const auto& t : terms_) {
    if (out.empty() || out.back().i != t.i || out.back().j != t.j) out.push_back({t.i, t.j, int_zero(rank_)});
    out.back().value[t.k] = t.coef;
  }
  return out;
}

IntVec LieRing::structure(std::size_t i, std::size_t j) const {
  IntVec out = int_zero(rank_);
  if (i == j) return out;
  bool flip = i > j;
  if (flip) std::swap(i, j);
  for (const auto& t : terms_)
    if (t.i == i && t.j == j) out[t.k] = flip ? Int(-t.coef) : t.coef;
  return out;
}

IntVec LieRing::bracket(const IntVec& u, const IntVec& v) const {
  check_length(u, rank_);
  check_length(v, rank_);
  IntVec out = int_zero(rank_);
  Int c;
  for (const auto& t : terms_) {
    c = u[t.i] * v[t.j] - u[t.j] * v[t.i];
    if (c != 0) out[t.k] += c * t.coef;
  }
  return out;
}

RatVec LieRing::bracket(const RatVec& u, const RatVec& v) const {
  check_length(u, rank_);
  check_length(v, rank_);
  RatVec out = rat_zero(rank_);
  Rat c;
  for (const auto& t : terms_) {
    c = u[t.i] * v[t.j] - u[t.j] * v[t.i];
    if (c != 0) out[t.k] += c * t.coef;
  }
  return out;
}

I64Vec LieRing::bracket_mod(const I64Vec& u, const I64Vec& v, std::int64_t q) const {
  check_length(u, rank_);
  check_length(v, rank_);
  I64Vec out(rank_, 0);
  for (const auto& t : terms_) {
    __int128 c = static_cast<__int128>(u[t.i]) * v[t.j] - static_cast<__int128>(u[t.j]) * v[t.i];
    if (c == 0) continue;
    c %= q;
    c = c * mod(t.coef, q) % q;
    out[t.k] = mod(static_cast<std::int64_t>((out[t.k] + c) % q), q);
  }
  return out;
}

LowerCentralSeries lower_central_series(const LieRing& L) {
  const std::size_t n = L.rank();
  LowerCentralSeries s;
  Lattice full = full_lattice(n);
  s.layers.push_back(full);
  while (!s.layers.back().is_zero()) {
    Lattice next = bracket_lattice(L, s.layers.back(), full);
    if (next.rank() == s.layers.back().rank())
      fail("nilpotency", "lower central series stabilizes at rank " + std::to_string(next.rank()) +
                             "; the ring is not nilpotent");
    s.layers.push_back(next);
  }
  s.nilpotency_class = static_cast<int>(s.layers.size()) - 1;
  for (const auto& layer : s.layers) s.saturated.push_back(saturate(layer));
  return s;
}

Lattice bracket_lattice(const LieRing& L, const Lattice& a, const Lattice& b) {
  IntMatrix rows;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) {
      IntVec z = L.bracket(x, y);
      if (!is_zero(z)) rows.push_back(std::move(z));
    }
  return hnf(rows, L.rank());
}

bool is_ideal(const LieRing& L, const Lattice& a) {
  for (const auto& g : a.basis())
    for (std::size_t j = 0; j < L.rank(); ++j)
      if (!a.contains(L.bracket(g, unit_vector(L.rank(), j)))) return false;
  return true;
}

Lattice ideal_closure(const LieRing& L, const Lattice& a) {
  Lattice cur = a;
  for (;;) {
    Lattice next = sum(cur, bracket_lattice(L, cur, full_lattice(L.rank())));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

bool is_subring(const LieRing& L, const Lattice& a) {
  const auto& b = a.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!a.contains(L.bracket(b[i], b[j]))) return false;
  return true;
}

LieRing sub_ring(const LieRing& L, const Lattice& a, std::string name) {
  if (a.ambient_rank() != L.rank()) fail("dimension", "sublattice ambient rank does not match the ring");
  if (!a.is_full_rank()) fail("subring", "sublattice [" + a.to_string() + "] has infinite index");
  if (!is_subring(L, a)) fail("subring", "sublattice [" + a.to_string() + "] is not closed under the bracket");
  const auto& b = a.basis();
  std::vector<BracketEntry> entries;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      IntVec c = *a.coordinates(L.bracket(b[i], b[j]));
      if (!is_zero(c)) entries.push_back({i, j, c});
    }
  return LieRing::from_brackets(std::move(name), L.rank(), entries);
}

I64Vec FiniteLieAlgebra::bracket(const I64Vec& u, const I64Vec& v) const {
  check_length(u, rank);
  check_length(v, rank);
  I64Vec out(rank, 0);
  for (const auto& t : terms) {
    __int128 c = static_cast<__int128>(u[t.i]) * v[t.j] - static_cast<__int128>(u[t.j]) * v[t.i];
    if (c == 0) continue;
    c = (c % q) * t.coef.get_si() % q;
    out[t.k] = mod(static_cast<std::int64_t>((out[t.k] + c) % q), q);
  }
  return out;
}

FiniteLieAlgebra reduce_mod(const LieRing& L, std::int64_t q) {
  auto pp = prime_power(q);
  if (!pp) fail("modulus", "modulus " + std::to_string(q) + " is not a prime power");
  FiniteLieAlgebra A;
  A.name = L.name();
  A.rank = L.rank();
  A.q = q;
  A.p = pp->prime;
  A.l = pp->exponent;
  for (const auto& t : L.terms()) {
    std::int64_t c = mod(t.coef, q);
    if (c != 0) A.terms.push_back({t.i, t.j, t.k, Int(static_cast<long>(c))});
  }
  return A;
}

namespace {

BracketEntry entry(std::size_t n, std::size_t i, std::size_t j, std::size_t k, long c = 1) {
  IntVec v = int_zero(n);
  v[k - 1] = c;
  return {i - 1, j - 1, v};
}

}  // namespace

LieRing catalog(const std::string& name) {
  const std::string prefix = "abelian_";
  if (name.rfind(prefix, 0) == 0) {
    std::string digits = name.substr(prefix.size());
    if (!digits.empty() && digits.size() <= 3 && digits.find_first_not_of("0123456789") == std::string::npos) {
      int k = std::stoi(digits);
      if (k >= 1) return LieRing::from_brackets(name, static_cast<std::size_t>(k), {});
    }
  }
  if (name == "heisenberg_3") return LieRing::from_brackets(name, 3, {entry(3, 1, 2, 3)});
  if (name == "heisenberg_5") return LieRing::from_brackets(name, 5, {entry(5, 1, 2, 5), entry(5, 3, 4, 5)});
  if (name == "filiform_4") return LieRing::from_brackets(name, 4, {entry(4, 1, 2, 3), entry(4, 1, 3, 4)});
  if (name == "free_nilp_2_3")
    return LieRing::from_brackets(name, 6, {entry(6, 1, 2, 4), entry(6, 1, 3, 5), entry(6, 2, 3, 6)});
  fail("unknown-ring", "no catalog ring named '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"abelian_3", "heisenberg_3", "heisenberg_5", "filiform_4", "free_nilp_2_3"};
}

LieRing ring_from_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail("parse", std::string("ring file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("rank")) fail("parse", "ring file needs an object with a 'rank' field");
    const auto& rk = doc.at("rank");
    if (!rk.is_number_integer() || rk.get<long long>() < 0) fail("parse", "'rank' must be a non-negative integer");
    auto n = static_cast<std::size_t>(rk.get<long long>());
    std::string name = doc.value("name", std::string("unnamed"));
    std::vector<BracketEntry> entries;
    if (doc.contains("brackets")) {
      for (const auto& item : doc.at("brackets")) {
        if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() || !item[1].is_number_integer() ||
            !item[2].is_array())
          fail("parse", "each bracket must look like [i, j, [c_1, ..., c_n]]");
        long long i = item[0].get<long long>(), j = item[1].get<long long>();
        if (i < 1 || j < 1) fail("bounds", "bracket indices are 1-based");
        IntVec v;
        for (const auto& c : item[2]) {
          if (c.is_number_integer()) {
            v.emplace_back(std::to_string(c.get<long long>()));
          } else if (c.is_string()) {
            Int x;
            if (x.set_str(c.get<std::string>(), 10) != 0) fail("parse", "bad integer '" + c.get<std::string>() + "'");
            v.push_back(x);
          } else {
            fail("parse", "structure constants must be integers");
          }
        }
        entries.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), v});
      }
    }
    return LieRing::from_brackets(name, n, entries);
  } catch (const json::exception& e) {
    fail("parse", std::string("malformed ring file: ") + e.what());
  }
}

std::string ring_to_json(const LieRing& L) {
  nlohmann::json doc;
  doc["name"] = L.name();
  doc["rank"] = L.rank();
  doc["brackets"] = nlohmann::json::array();
  for (const auto& b : L.brackets()) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : b.value) c.push_back(x.get_si());
    doc["brackets"].push_back({b.i + 1, b.j + 1, c});
  }
  return doc.dump();
}

LieRing load_ring(const std::string& source) {
  std::ifstream in(source);
  if (!in) return catalog(source);
  std::stringstream ss;
  ss << in.rdbuf();
  return ring_from_json(ss.str());
}

}  // namespace rfg
