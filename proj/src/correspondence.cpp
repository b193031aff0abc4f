#include "rfgrowth/correspondence.hpp"

#include <deque>
#include <functional>
#include <map>
#include <random>

#include "rfgrowth/error.hpp"

namespace rfg {

namespace {

Int power(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Visits every a in N^m with a_1 + ... + a_m <= c; stops when visit returns false.
bool for_each_simplex_point(std::size_t m, int c, const std::function<bool(const IntVec&)>& visit) {
  IntVec a = int_zero(m);
  std::function<bool(std::size_t, int)> rec = [&](std::size_t pos, int left) -> bool {
    if (pos == m) return visit(a);
    for (int k = 0; k <= left; ++k) {
      a[pos] = k;
      if (!rec(pos + 1, left - k)) return false;
    }
    a[pos] = 0;
    return true;
  };
  return rec(0, c);
}

// Rational coordinates with respect to the basis of a full-rank lattice.
class Coordinates {
 public:
  explicit Coordinates(const Lattice& S) : basis_(S.basis()), n_(S.ambient_rank()) {
    std::vector<RatVec> m;
    for (const auto& r : basis_) m.push_back(to_rat(r));
    inv_.assign(n_, rat_zero(n_));
    for (std::size_t i = 0; i < n_; ++i) inv_[i][i] = 1;
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      std::swap(inv_[piv], inv_[col]);
      Rat s = 1 / m[col][col];
      for (std::size_t j = 0; j < n_; ++j) {
        m[col][j] *= s;
        inv_[col][j] *= s;
      }
      for (std::size_t r = 0; r < n_; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rat f = m[r][col];
        for (std::size_t j = 0; j < n_; ++j) {
          m[r][j] -= f * m[col][j];
          inv_[r][j] -= f * inv_[col][j];
        }
      }
    }
  }

  RatVec of(const RatVec& w) const {
    RatVec out = rat_zero(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (w[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) out[j] += w[i] * inv_[i][j];
    }
    return out;
  }

  RatVec vector(const IntVec& coords) const { return to_rat(row_times(coords, basis_, n_)); }

 private:
  IntMatrix basis_;
  std::size_t n_;
  std::vector<RatVec> inv_;
};

void require_full_rank(const Lattice& S, const std::string& reason, const std::string& what) {
  if (!S.is_full_rank()) fail(reason, what + " [" + S.to_string() + "] has infinite index");
}

// Checks that F(u, v) is integral for all integer u, v, given that F is a
// polynomial of degree <= c.
ClosureCheck certify(std::size_t n, int c, const std::function<RatVec(const IntVec&, const IntVec&)>& F,
                     const std::string& what) {
  ClosureCheck out;
  for_each_simplex_point(2 * n, c, [&](const IntVec& a) {
    IntVec u(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
    IntVec v(a.begin() + static_cast<std::ptrdiff_t>(n), a.end());
    if (is_integral(F(u, v))) return true;
    out.ok = false;
    out.u = u;
    out.v = v;
    out.detail = what + " fails at (" + join(u) + ") and (" + join(v) + ")";
    return false;
  });
  return out;
}

RatVec conjugate(const LRGroup& G, const RatVec& g, const RatVec& s) {
  return star(G.ring, *G.table, star(G.ring, *G.table, g, s), star_inverse(g));
}

IntVec reduce_mod_lattice(const Lattice& K, IntVec w) {
  for (std::size_t k = 0; k < K.rank(); ++k) {
    const auto& row = K.basis()[k];
    const auto c = K.pivots()[k];
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), w[c].get_mpz_t(), row[c].get_mpz_t());
    if (q != 0)
      for (std::size_t j = c; j < w.size(); ++j) w[j] -= q * row[j];
  }
  return w;
}

}  // namespace

ClosureCheck check_lr(const LieRing& L, const BCHTable& table) {
  const std::size_t n = L.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatVec w = star(L, table, to_rat(unit_vector(n, i)), to_rat(unit_vector(n, j)));
      if (!is_integral(w)) {
        ClosureCheck out;
        out.ok = false;
        out.u = unit_vector(n, i);
        out.v = unit_vector(n, j);
        out.detail = "e" + std::to_string(i + 1) + " * e" + std::to_string(j + 1) + " = (" + join(w) + ") is not integral";
        return out;
      }
    }
  return certify(n, table.cls, [&](const IntVec& u, const IntVec& v) { return star(L, table, to_rat(u), to_rat(v)); },
                 "integrality of u * v");
}

LRGroup validate_lr(const LieRing& L, const BCHTable& table) {
  if (L.nilpotency_class() > table.cls)
    fail("class", "BCH table of class " + std::to_string(table.cls) + " is too small for ring '" + L.name() + "'");
  ClosureCheck c = check_lr(L, table);
  if (!c.ok) fail("not-lr", "ring '" + L.name() + "' is not closed under the BCH product: " + c.detail);
  return LRGroup{L, &table, L.nilpotency_class(), guivarch_decomposition(L)};
}

ClosureCheck check_star_closed(const LRGroup& G, const Lattice& S) {
  require_full_rank(S, "normal", "sublattice");
  Coordinates coords(S);
  return certify(G.ring.rank(), G.table->cls,
                 [&](const IntVec& a, const IntVec& b) {
                   return coords.of(star(G.ring, *G.table, coords.vector(a), coords.vector(b)));
                 },
                 "closure under *");
}

ClosureCheck check_conjugation_closed(const LRGroup& G, const Lattice& S) {
  require_full_rank(S, "normal", "sublattice");
  Coordinates coords(S);
  return certify(G.ring.rank(), G.table->cls,
                 [&](const IntVec& g, const IntVec& a) {
                   return coords.of(conjugate(G, to_rat(g), coords.vector(a)));
                 },
                 "closure under conjugation");
}

// --- ideal to normal subgroup ----------------------------------------------

IdealToNormal ideal_to_normal(const LRGroup& G, const Lattice& I) {
  const LieRing& L = G.ring;
  const std::size_t n = L.rank();
  require_full_rank(I, "ideal", "ideal");
  if (!is_ideal(L, I)) fail("ideal", "lattice [" + I.to_string() + "] is not an ideal");
  IdealToNormal r;
  r.ideal = I;
  r.cls = G.cls;
  r.delta = bch_table(std::max(1, G.cls)).delta;
  const auto& sat = L.lcs().saturated;
  Lattice acc(n);
  for (int i = 1; i <= r.cls; ++i)
    acc = sum(acc, scale(power(r.delta, static_cast<unsigned long>(r.cls - i)), intersect(sat[i - 1], I)));
  r.result = acc;

  r.is_ideal = is_ideal(L, acc);
  r.star_closed = acc.is_full_rank() && check_star_closed(G, acc).ok;
  r.normal = acc.is_full_rank() && check_conjugation_closed(G, acc).ok;
  Lattice scaled = scale(power(r.delta, static_cast<unsigned long>(r.cls)), I);
  r.sandwich = acc.contains(scaled) && I.contains(acc);
  r.ideal_index = *index(I);
  r.result_index = acc.is_full_rank() ? *index(acc) : Int(0);
  r.bound = power(r.delta, static_cast<unsigned long>(r.cls) * n) * r.ideal_index;
  r.index_bound = acc.is_full_rank() && r.result_index <= r.bound;
  return r;
}

CosetCheck coset_equality_check(const LRGroup& G, const Lattice& S, std::size_t samples, std::uint64_t seed,
                                long box) {
  const std::size_t n = G.ring.rank();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-box, box);
  CosetCheck out;
  for (std::size_t k = 0; k < samples; ++k) {
    IntVec v(n), c(S.rank());
    for (auto& x : v) x = dist(rng);
    for (auto& x : c) x = dist(rng);
    IntVec s = row_times(c, S.basis(), n);
    RatVec vr = to_rat(v), sr = to_rat(s);
    out.samples = k + 1;
    RatVec a = sub(star(G.ring, *G.table, vr, sr), vr);
    if (!is_integral(a) || !S.contains(to_int(a))) {
      out.ok = false;
      out.failure = "star-in-sum";
    } else {
      RatVec b = star(G.ring, *G.table, star_inverse(vr), add(vr, sr));
      if (!is_integral(b) || !S.contains(to_int(b))) {
        out.ok = false;
        out.failure = "sum-in-star";
      }
    }
    if (!out.ok) {
      out.v = v;
      out.s = s;
      return out;
    }
  }
  return out;
}

IndexTwoWays index_two_ways(const LRGroup& G, const Lattice& S, std::size_t cap) {
  const LieRing& L = G.ring;
  const std::size_t n = L.rank();
  require_full_rank(S, "index", "subgroup");
  IndexTwoWays out;
  out.lattice_index = *index(S);

  // Modulo the saturated second layer the product is addition, so the
  // residue modulo S + gamma_2 is constant on each left coset.
  Lattice key_lattice = G.cls >= 2 ? sum(S, L.lcs().saturated[1]) : S;
  std::vector<RatVec> gens;
  for (const auto& b : G.dec.basis) {
    gens.push_back(to_rat(b));
    gens.push_back(neg(to_rat(b)));
  }
  std::vector<RatVec> reps{rat_zero(n)};
  std::map<IntVec, std::vector<std::size_t>> buckets;
  buckets[reduce_mod_lattice(key_lattice, int_zero(n))].push_back(0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t r = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      RatVec w = star(L, *G.table, reps[r], g);
      auto& bucket = buckets[reduce_mod_lattice(key_lattice, to_int(w))];
      bool known = false;
      for (std::size_t idx : bucket) {
        RatVec d = star(L, *G.table, star_inverse(reps[idx]), w);
        if (is_integral(d) && S.contains(to_int(d))) {
          known = true;
          break;
        }
      }
      if (known) continue;
      if (reps.size() >= cap) fail("cap", "more than " + std::to_string(cap) + " cosets");
      bucket.push_back(reps.size());
      queue.push_back(reps.size());
      reps.push_back(std::move(w));
    }
  }
  out.group_index = static_cast<unsigned long>(reps.size());
  return out;
}

// --- normal subgroup to ideal ----------------------------------------------

NormalToIdeal normal_to_ideal(const LRGroup& G, const Lattice& N, const NormalToIdealOptions& options) {
  const LieRing& L = G.ring;
  const std::size_t n = L.rank();
  const int c = G.cls;
  if (c > 3 && !options.lattice_only)
    fail("class", "normal_to_ideal is limited to class <= 3 (class " + std::to_string(c) + "); use lattice-only mode");
  require_full_rank(N, "normal", "subgroup");
  if (auto chk = check_star_closed(G, N); !chk.ok) fail("normal", "not a subgroup: " + chk.detail);
  if (auto chk = check_conjugation_closed(G, N); !chk.ok) fail("normal", "not normal: " + chk.detail);

  NormalToIdeal r;
  r.normal = N;
  r.cls = c;
  const BCHTable& table = bch_table(std::max(1, c));
  r.lambda = table.lambda;
  r.f = options.f ? *options.f : table.f;
  if (r.f.size() < static_cast<std::size_t>(std::max(c, 1)))
    fail("usage", "f override needs at least " + std::to_string(std::max(c, 1)) + " values");

  const auto& sat = L.lcs().saturated;
  Lattice seeds(n);
  for (int i = 1; i <= c; ++i) seeds = sum(seeds, scale(r.f[c - i], intersect(sat[i - 1], N)));

  Lattice x = seeds;
  const int max_iterations = 200;
  for (;;) {
    if (++r.iterations > max_iterations) fail("internal", "closure did not stabilize");
    if (!N.contains(x)) fail("internal", "closure left the normal subgroup");
    IntMatrix rows = x.basis();
    const auto& b = x.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (i != j) rows.push_back(to_int(star(L, *G.table, to_rat(b[i]), to_rat(b[j]))));
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& s : b) {
        RatVec e = to_rat(unit_vector(n, k));
        rows.push_back(to_int(conjugate(G, e, to_rat(s))));
        rows.push_back(to_int(conjugate(G, neg(e), to_rat(s))));
      }
    Lattice next = hnf(rows, n);
    if (next == x && x.is_full_rank()) {
      // Generator-level closure holds; confirm with the exact certificates.
      Coordinates coords(x);
      auto sc = check_star_closed(G, x);
      if (sc.ok) {
        auto cc = check_conjugation_closed(G, x);
        if (cc.ok) break;
        next = sum(x, hnf({to_int(conjugate(G, to_rat(cc.u), coords.vector(cc.v)))}, n));
      } else {
        next = sum(x, hnf({to_int(star(L, *G.table, coords.vector(sc.u), coords.vector(sc.v)))}, n));
      }
    }
    x = next;
  }
  r.result = x;
  r.star_closed = check_star_closed(G, x).ok;
  r.normal_subgroup = check_conjugation_closed(G, x).ok;
  r.is_ideal = is_ideal(L, x);
  r.containment = x.contains(seeds) && N.contains(x) && x.contains(scale(r.f[c >= 1 ? c - 1 : 0], N));
  r.normal_index = *index(N);
  r.result_index = *index(x);
  r.bound = power(r.f[c >= 1 ? c - 1 : 0], n) * r.normal_index;
  r.index_bound = r.result_index <= r.bound;
  return r;
}

}  // namespace rfg
