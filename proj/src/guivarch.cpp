#include <cmath>

#include "rfgrowth/bch.hpp"
#include "rfgrowth/error.hpp"

namespace rfg {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

IntMatrix invert_unimodular(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<RatVec> m(n), inv(n, rat_zero(n));
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = to_rat(a[i]);
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) fail("internal", "adapted basis is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rat s = 1 / m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  IntMatrix out;
  for (const auto& row : inv) out.push_back(to_int(row));
  return out;
}

// Basis of a complement of the saturated lattice inner inside the saturated
// lattice outer, normalized so that the result only depends on the two lattices.
IntMatrix complement(const Lattice& outer, const Lattice& inner) {
  const std::size_t n = outer.ambient_rank();
  if (inner.is_zero()) return outer.basis();
  const std::size_t r = outer.rank();
  IntMatrix coords;
  for (const auto& b : inner.basis()) coords.push_back(*outer.coordinates(b));
  auto t = hnf_with_transform(transpose(coords, r), coords.size());
  IntMatrix rows;
  for (std::size_t k = t.rank; k < r; ++k) {
    IntVec c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = t.u_inv[i][k];
    rows.push_back(row_times(c, outer.basis(), n));
  }
  IntMatrix out = hnf(rows, n).basis();
  for (auto& w : out)
    for (std::size_t k = 0; k < inner.rank(); ++k) {
      const auto& b = inner.basis()[k];
      const auto pc = inner.pivots()[k];
      Int q = floor_div(w[pc], b[pc]);
      if (q != 0)
        for (std::size_t j = 0; j < n; ++j) w[j] -= q * b[j];
    }
  return out;
}

}  // namespace

GuivarchDecomposition guivarch_decomposition(const LieRing& L) {
  GuivarchDecomposition dec;
  dec.rank = L.rank();
  dec.cls = L.nilpotency_class();
  const auto& sat = L.lcs().saturated;
  dec.blocks.resize(static_cast<std::size_t>(dec.cls));
  for (int i = 0; i < dec.cls; ++i)
    for (auto& row : complement(sat[i], sat[i + 1])) {
      dec.blocks[i].push_back(dec.basis.size());
      dec.layer_of.push_back(i + 1);
      dec.basis.push_back(std::move(row));
    }
  if (dec.basis.size() != dec.rank) fail("internal", "adapted basis has the wrong size");
  dec.inverse = invert_unimodular(dec.basis);
  return dec;
}

RatVec adapted_coordinates(const GuivarchDecomposition& dec, const RatVec& v) {
  if (v.size() != dec.rank) fail("dimension", "vector length does not match the decomposition");
  RatVec out = rat_zero(dec.rank);
  for (std::size_t i = 0; i < dec.rank; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < dec.rank; ++j) out[j] += v[i] * dec.inverse[i][j];
  }
  return out;
}

IntVec adapted_coordinates(const GuivarchDecomposition& dec, const IntVec& v) {
  if (v.size() != dec.rank) fail("dimension", "vector length does not match the decomposition");
  return row_times(v, dec.inverse, dec.rank);
}

IntVec from_adapted(const GuivarchDecomposition& dec, const IntVec& coords) {
  return row_times(coords, dec.basis, dec.rank);
}

std::vector<Rat> layer_norms(const GuivarchDecomposition& dec, const RatVec& v) {
  RatVec x = adapted_coordinates(dec, v);
  std::vector<Rat> norms(dec.blocks.size(), Rat(0));
  for (std::size_t k = 0; k < x.size(); ++k) {
    Rat a = abs(x[k]);
    auto& slot = norms[dec.layer_of[k] - 1];
    if (a > slot) slot = a;
  }
  return norms;
}

double guivarch_length(const GuivarchDecomposition& dec, const RatVec& v) {
  double best = 0;
  auto norms = layer_norms(dec, v);
  for (std::size_t i = 0; i < norms.size(); ++i)
    best = std::max(best, std::pow(norms[i].get_d(), 1.0 / static_cast<double>(i + 1)));
  return best;
}

bool guivarch_at_most(const GuivarchDecomposition& dec, const RatVec& v, const Rat& r) {
  if (r < 0) return false;
  auto norms = layer_norms(dec, v);
  Rat power = 1;
  for (const auto& norm : norms) {
    power *= r;
    if (norm > power) return false;
  }
  return true;
}

Int guivarch_ceiling(const GuivarchDecomposition& dec, const IntVec& v) {
  IntVec x = adapted_coordinates(dec, v);
  std::vector<Int> norms(dec.blocks.size(), Int(0));
  for (std::size_t k = 0; k < x.size(); ++k) {
    Int a = abs(x[k]);
    auto& slot = norms[dec.layer_of[k] - 1];
    if (a > slot) slot = a;
  }
  Int best = 0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    Int r = ceil_root(norms[i], static_cast<unsigned>(i + 1));
    if (r > best) best = r;
  }
  return best;
}

}  // namespace rfg
