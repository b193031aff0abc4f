#include "rfgrowth/numeric.hpp"

#include <limits>
#include <sstream>

#include "rfgrowth/error.hpp"

namespace rfg {

IntVec int_zero(std::size_t n) { return IntVec(n, Int(0)); }
RatVec rat_zero(std::size_t n) { return RatVec(n, Rat(0)); }

IntVec unit_vector(std::size_t n, std::size_t i) {
  IntVec v = int_zero(n);
  v[i] = 1;
  return v;
}

RatVec to_rat(const IntVec& v) {
  RatVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

IntVec to_int(const RatVec& v) {
  IntVec r;
  r.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) fail("integrality", "vector (" + join(v) + ") is not integral");
    r.push_back(x.get_num());
  }
  return r;
}

bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec scale(const Rat& s, const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

RatVec neg(const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec scale(const Int& s, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

std::string join(const IntVec& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].get_str();
  }
  return out;
}

std::string join(const RatVec& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].get_str();
  }
  return out;
}

IntVec parse_int_vector(const std::string& text) {
  IntVec v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) fail("parse", "empty coordinate in '" + text + "'");
    Int x;
    if (x.set_str(item.substr(b, e - b + 1), 10) != 0)
      fail("parse", "bad integer '" + item + "' in '" + text + "'");
    v.push_back(x);
  }
  if (v.empty()) fail("parse", "empty vector '" + text + "'");
  return v;
}

Int lcm_range(unsigned l) {
  Int r = 1;
  for (unsigned k = 2; k <= l; ++k) r = lcm(r, Int(k));
  return r;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t next_prime(std::int64_t n) {
  std::int64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::optional<PrimePower> prime_power(std::int64_t q) {
  if (q < 2) return std::nullopt;
  std::int64_t p = 0;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return PrimePower{q, 1};
  int e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{p, e};
}

std::int64_t mod(const Int& a, std::int64_t m) {
  Int r = a % Int(static_cast<long>(m));
  if (r < 0) r += static_cast<long>(m);
  return r.get_si();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = mod(a, p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) fail("arithmetic", "element not invertible modulo " + std::to_string(p));
  return mod(t, p);
}

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base)
      fail("overflow", "power " + std::to_string(base) + "^" + std::to_string(exp) + " overflows");
    r *= base;
  }
  return r;
}

std::int64_t to_i64(const Int& a) {
  if (!a.fits_slong_p()) fail("overflow", "integer " + a.get_str() + " exceeds 64 bits");
  return a.get_si();
}

Int ceil_root(const Int& x, unsigned k) {
  if (x <= 0) return 0;
  Int r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);  // floor
  Int p;
  mpz_pow_ui(p.get_mpz_t(), r.get_mpz_t(), k);
  if (p < x) r += 1;
  return r;
}

}  // namespace rfg
