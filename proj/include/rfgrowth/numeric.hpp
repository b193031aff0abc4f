#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rfg {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using I64Vec = std::vector<std::int64_t>;

IntVec int_zero(std::size_t n);
RatVec rat_zero(std::size_t n);
IntVec unit_vector(std::size_t n, std::size_t i);
RatVec to_rat(const IntVec& v);
// Throws if some coordinate is not an integer.
IntVec to_int(const RatVec& v);
bool is_integral(const RatVec& v);
bool is_zero(const IntVec& v);
bool is_zero(const RatVec& v);

RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& s, const RatVec& a);
RatVec neg(const RatVec& a);
IntVec add(const IntVec& a, const IntVec& b);
IntVec scale(const Int& s, const IntVec& a);

// "a,b,c" rendering used by CSV/JSON output and error messages.
std::string join(const IntVec& v, const char* sep = ",");
std::string join(const RatVec& v, const char* sep = ",");
IntVec parse_int_vector(const std::string& text);

Int lcm_range(unsigned l);  // lcm(1, 2, ..., l)

std::vector<std::int64_t> primes_up_to(std::int64_t bound);
bool is_prime(std::int64_t n);
// Smallest prime strictly greater than n.
std::int64_t next_prime(std::int64_t n);

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;
};
// Decomposes q = p^e; nullopt when q < 2 or q has two distinct prime factors.
std::optional<PrimePower> prime_power(std::int64_t q);

// Floored modulus into [0, m).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}
std::int64_t mod(const Int& a, std::int64_t m);
std::int64_t inv_mod(std::int64_t a, std::int64_t p);  // p prime, a != 0 mod p
std::int64_t checked_pow(std::int64_t base, int exp);   // throws "overflow"
std::int64_t to_i64(const Int& a);                       // throws "overflow"

// Smallest integer r >= 0 with r^k >= x (x >= 0).
Int ceil_root(const Int& x, unsigned k);

}  // namespace rfg
