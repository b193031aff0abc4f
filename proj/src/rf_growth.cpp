#include "rfgrowth/rf_growth.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "rfgrowth/error.hpp"
#include "rfgrowth/finite_ideals.hpp"
#include "rfgrowth/parallel.hpp"

namespace rfg {

std::string family_name(Family f) {
  switch (f) {
    case Family::All: return "all";
    case Family::P1: return "p1";
    case Family::PInf: return "pinf";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "all") return Family::All;
  if (s == "p1") return Family::P1;
  if (s == "pinf") return Family::PInf;
  fail("usage", "unknown family '" + s + "' (expected p1, pinf or all)");
}

std::string length_name(LengthKind k) { return k == LengthKind::Guivarch ? "guivarch" : "norm"; }

LengthKind parse_length(const std::string& s) {
  if (s == "guivarch") return LengthKind::Guivarch;
  if (s == "norm") return LengthKind::Norm;
  fail("usage", "unknown length '" + s + "' (expected guivarch or norm)");
}

namespace {

using modp::ModLattice;
using modp::Row;

struct Found {
  ModLattice lattice;
  std::int64_t index = 0;
};

// Ideals examined by one divisibility call before it gives up. Central
// vectors with large content in rank 5 and up can otherwise run for hours.
constexpr std::size_t kSearchBudget = 200000;

struct Budget {
  std::size_t used = 0;
  void spend(std::size_t k) {
    used += k;
    if (used > kSearchBudget)
      fail("cap", "divisibility search examined more than " + std::to_string(kSearchBudget) + " ideals");
  }
};

std::int64_t dot_mod(const Row& a, const Row& b, std::int64_t p) {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return mod(static_cast<std::int64_t>(s % p), p);
}

// If some child of I at the prime p avoids v, returns the first one.
std::optional<ModLattice> avoiding_child(const LieRing& L, const ModLattice& I, const IntVec& v, std::int64_t p,
                                         std::int64_t modulus, modp::Subspace& constraint) {
  constraint = child_constraint(L, I, p, modulus);
  Row cv = coordinates_mod(I, v, p);
  if (constraint.contains(cv)) return std::nullopt;
  Row chosen;
  modp::for_each_functional(constraint, [&](const Row& phi) {
    if (dot_mod(phi, cv, p) == 0) return true;
    chosen = phi;
    return false;
  });
  return child_lattice(I, p, chosen);
}

// Smallest p-power index ideal below bound avoiding v, among ideals that
// contain modulus * Z^n (no restriction when modulus == 0).
std::optional<Found> search_prime(const LieRing& L, const IntVec& v, std::int64_t p, std::int64_t modulus,
                                  std::int64_t bound, Budget& budget) {
  std::vector<ModLattice> level{modp::full_mod_lattice(L.rank())};
  std::int64_t idx = 1;
  while (idx <= (bound - 1) / p) {
    // Test the whole level before building the next one, which is much larger.
    budget.spend(level.size());
    std::vector<modp::Subspace> constraints(level.size());
    for (std::size_t i = 0; i < level.size(); ++i)
      if (auto child = avoiding_child(L, level[i], v, p, modulus, constraints[i])) return Found{*child, idx * p};
    if (idx * p > (bound - 1) / p) break;
    std::set<ModLattice> next;
    for (std::size_t i = 0; i < level.size(); ++i)
      modp::for_each_functional(constraints[i], [&](const Row& phi) {
        next.insert(child_lattice(level[i], p, phi));
        return true;
      });
    if (next.empty()) break;
    level.assign(next.begin(), next.end());
    idx *= p;
  }
  return std::nullopt;
}

// Over all finite-index ideals: best-first search by index over chains of
// prime-index steps through ideals containing v.
std::optional<Found> search_all(const LieRing& L, const IntVec& v, std::int64_t bound, Budget& budget) {
  std::optional<Found> best;
  std::set<std::pair<std::int64_t, ModLattice>> queue;
  std::set<ModLattice> seen;
  auto start = modp::full_mod_lattice(L.rank());
  queue.insert({1, start});
  seen.insert(start);
  while (!queue.empty()) {
    auto [idx, I] = *queue.begin();
    queue.erase(queue.begin());
    budget.spend(1);
    if (idx > (bound - 1) / 2) break;
    for (std::int64_t q = 2; idx <= (bound - 1) / q; q = next_prime(q)) {
      modp::Subspace W;
      if (auto child = avoiding_child(L, I, v, q, 0, W)) {
        bound = idx * q;
        best = Found{*child, bound};
        break;
      }
      if (idx * q > (bound - 1) / 2) continue;
      modp::for_each_functional(W, [&](const Row& phi) {
        ModLattice c = child_lattice(I, q, phi);
        if (seen.insert(c).second) queue.insert({idx * q, std::move(c)});
        return true;
      });
    }
  }
  return best;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

std::int64_t smallest_prime_not_dividing(const Int& g) {
  std::int64_t p = 2;
  while (g != 0 && mpz_divisible_ui_p(g.get_mpz_t(), static_cast<unsigned long>(p))) p = next_prime(p);
  return p;
}

}  // namespace

namespace {

DivisibilityResult divisibility(const LieRing& L, const IntVec& v, Family family, Budget& budget) {
  if (v.size() != L.rank()) fail("dimension", "vector length does not match the ring rank");
  if (is_zero(v)) fail("zero-vector", "divisibility is only defined for nonzero vectors");
  const std::size_t n = L.rank();
  const Int g = content(v);
  const std::int64_t p0 = smallest_prime_not_dividing(g);
  std::int64_t best = checked_pow(p0, static_cast<int>(n));
  ModLattice witness = modp::hnf_mod({}, n, p0);
  // The exact answer at p0 is usually far below p0^n and prunes every other search.
  if (auto f = search_prime(L, v, p0, p0, best + 1, budget)) {
    best = f->index;
    witness = f->lattice;
  }

  if (family == Family::All) {
    // PINF is a subfamily, so its value bounds the search; the best-first
    // pass then rules out every smaller mixed-prime ideal.
    DivisibilityResult pinf = divisibility(L, v, Family::PInf, budget);
    best = pinf.value.get_si();
    witness = pinf.witness;
    if (auto f = search_all(L, v, best, budget)) {
      best = f->index;
      witness = f->lattice;
    }
  } else {
    for (std::int64_t p = 2; p < best; p = next_prime(p)) {
      if (family == Family::P1 && (p == p0 || mpz_divisible_ui_p(g.get_mpz_t(), static_cast<unsigned long>(p))))
        continue;
      if (auto f = search_prime(L, v, p, family == Family::P1 ? p : 0, best, budget)) {
        best = f->index;
        witness = f->lattice;
      }
    }
  }

  DivisibilityResult r;
  r.value = Int(static_cast<long>(best));
  r.family = family;
  r.witness = witness;
  if (auto pp = prime_power(best)) {
    r.prime = pp->prime;
    r.exponent = pp->exponent;
  }
  return r;
}

}  // namespace

DivisibilityResult divisibility(const LieRing& L, const IntVec& v, Family family) {
  Budget budget;
  return divisibility(L, v, family, budget);
}

// --- profiles ---------------------------------------------------------------

Int ball_size(const GuivarchDecomposition& dec, long r, LengthKind kind) {
  Int size = 1;
  for (std::size_t k = 0; k < dec.rank; ++k) {
    Int bound = r;
    if (kind == LengthKind::Guivarch) mpz_pow_ui(bound.get_mpz_t(), Int(r).get_mpz_t(), dec.layer_of[k]);
    size *= 2 * bound + 1;
  }
  return size;
}

namespace {

bool lex_less(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

GrowthProfile rf_profile(const LieRing& L, long r_max, LengthKind kind, Family family,
                         const GuivarchDecomposition& dec, const ProfileOptions& options) {
  GrowthProfile prof;
  prof.ring = L.name();
  prof.length = kind;
  prof.family = family;
  prof.r_max = r_max;
  if (r_max < 1) return prof;
  const std::size_t n = L.rank();
  Int size = ball_size(dec, r_max, kind);
  if (size > Int(std::to_string(options.cap)))
    fail("cap", "ball of radius " + std::to_string(r_max) + " has " + size.get_str() +
                    " points, above the cap of " + std::to_string(options.cap));
  prof.ball_size = size.get_ui();

  // Enumerate one representative x of each pair {x, -x} (first nonzero entry positive).
  std::vector<long> bound(n);
  for (std::size_t k = 0; k < n; ++k) {
    long b = r_max;
    if (kind == LengthKind::Guivarch)
      for (int i = 1; i < dec.layer_of[k]; ++i) b *= r_max;
    bound[k] = b;
  }
  struct Item {
    IntVec v;
    long level;
  };
  std::vector<Item> items;
  std::vector<long> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = -bound[k];
  for (;;) {
    std::size_t first = 0;
    while (first < n && x[first] == 0) ++first;
    if (first < n && x[first] > 0) {
      IntVec coords(n);
      for (std::size_t k = 0; k < n; ++k) coords[k] = x[k];
      Item it;
      if (kind == LengthKind::Guivarch) {
        it.v = from_adapted(dec, coords);
        it.level = guivarch_ceiling(dec, it.v).get_si();
      } else {
        it.v = coords;
        long m = 0;
        for (auto c : x) m = std::max(m, std::labs(c));
        it.level = m;
      }
      items.push_back(std::move(it));
    }
    std::size_t k = 0;
    while (k < n && x[k] == bound[k]) x[k] = -bound[k], ++k;
    if (k == n) break;
    ++x[k];
  }

  std::vector<DivisibilityResult> results(items.size());
  parallel_for(items.size(), [&](std::size_t i) { results[i] = divisibility(L, items[i].v, family); });

  // Best per level, then running maximum over radii.
  std::vector<std::optional<ProfileRow>> per_level(static_cast<std::size_t>(r_max) + 1);
  auto better = [](const ProfileRow& a, const ProfileRow& b) {
    return a.max_d > b.max_d || (a.max_d == b.max_d && lex_less(a.witness, b.witness));
  };
  for (std::size_t i = 0; i < items.size(); ++i) {
    ProfileRow row;
    row.radius = items[i].level;
    row.max_d = results[i].value;
    row.prime = results[i].prime;
    row.exponent = results[i].exponent;
    IntVec neg_v = items[i].v;
    for (auto& c : neg_v) c = -c;
    row.witness = lex_less(neg_v, items[i].v) ? neg_v : items[i].v;
    auto& slot = per_level[items[i].level];
    if (!slot || better(row, *slot)) slot = row;
  }
  std::optional<ProfileRow> running;
  for (long r = 1; r <= r_max; ++r) {
    if (per_level[r] && (!running || better(*per_level[r], *running))) running = per_level[r];
    if (!running) continue;
    ProfileRow row = *running;
    row.radius = r;
    prof.rows.push_back(row);
  }
  return prof;
}

std::string profile_csv(const GrowthProfile& profile, const std::vector<std::string>& metadata) {
  std::ostringstream out;
  for (const auto& m : metadata) out << "# " << m << "\n";
  out << "radius,maxD,prime,exponent,witness\n";
  for (const auto& r : profile.rows)
    out << r.radius << "," << r.max_d.get_str() << "," << r.prime << "," << r.exponent << "," << join(r.witness, ";")
        << "\n";
  return out.str();
}

// --- witness sequences ------------------------------------------------------

std::vector<WitnessStep> witness_sequence(const LieRing& L, const IntVec& v, int l_max, const Int& x, int l_min) {
  if (is_zero(v)) fail("zero-vector", "witness direction must be nonzero");
  if (x < 1) fail("usage", "x must be a positive integer");
  if (l_min < 1) fail("usage", "l must start at 1 or above");
  std::vector<WitnessStep> out;
  for (int l = l_min; l <= l_max; ++l) {
    WitnessStep s;
    s.l = l;
    s.scalar = x * lcm_range(static_cast<unsigned>(l));
    s.vector = scale(s.scalar, v);
    auto d = divisibility(L, s.vector, Family::P1);
    s.d = d.value;
    s.prime = d.prime;
    s.exponent = d.exponent;
    s.smallest_usable_prime = smallest_prime_not_dividing(content(s.vector));
    out.push_back(std::move(s));
  }
  return out;
}

ExponentFit fit_exponent(const std::vector<WitnessStep>& steps) {
  if (steps.size() < 4) fail("points", "exponent fit needs at least 4 points, got " + std::to_string(steps.size()));
  ExponentFit fit;
  fit.points = steps.size();
  std::vector<double> xs, ys;
  for (const auto& s : steps) {
    xs.push_back(std::log(static_cast<double>(s.smallest_usable_prime)));
    ys.push_back(std::log(s.d.get_d()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx < 1e-12 || syy < 1e-12) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - *fit.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i) fit.residuals.push_back(ys[i] - (*fit.intercept + *fit.slope * xs[i]));
  return fit;
}

// --- subrings ---------------------------------------------------------------

SubringComparison subring_comparison(const LieRing& L, const Lattice& sub, long r_max, Family family,
                                     LengthKind kind, const ProfileOptions& options) {
  LieRing S = sub_ring(L, sub, L.name() + "_sub");
  SubringComparison c;
  c.index = *index(sub);
  c.full = rf_profile(L, r_max, kind, family, guivarch_decomposition(L), options);
  c.sub = rf_profile(S, r_max, kind, family, guivarch_decomposition(S), options);
  const std::size_t shared = std::min(c.full.rows.size(), c.sub.rows.size());
  for (std::size_t i = 0; i < shared; ++i) {
    Rat ratio(c.full.rows[i].max_d, c.sub.rows[i].max_d);
    ratio.canonicalize();
    c.ratios.push_back(ratio);
    if (i == 0 || ratio < c.min_ratio) c.min_ratio = ratio;
    if (i == 0 || ratio > c.max_ratio) c.max_ratio = ratio;
  }
  return c;
}

}  // namespace rfg
