#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfgrowth/bch.hpp"
#include "rfgrowth/lie_ring.hpp"
#include "rfgrowth/modp.hpp"

namespace rfg {

// ALL: every finite-index ideal. P1: ideals containing pL for a prime p.
// PINF: ideals containing p^l L for a prime power p^l.
enum class Family { All, P1, PInf };
enum class LengthKind { Guivarch, Norm };

std::string family_name(Family f);  // "all", "p1", "pinf"
Family parse_family(const std::string& s);
std::string length_name(LengthKind k);  // "guivarch", "norm"
LengthKind parse_length(const std::string& s);

struct DivisibilityResult {
  Int value;
  std::int64_t prime = 0;  // 0 if value is not a prime power
  int exponent = 0;
  Family family = Family::P1;
  modp::ModLattice witness;  // an ideal of index value not containing v
};

// Smallest index of an ideal in the family that does not contain v.
// Throws "zero-vector" for v = 0.
DivisibilityResult divisibility(const LieRing& L, const IntVec& v, Family family);

struct ProfileRow {
  long radius = 0;
  Int max_d;
  std::int64_t prime = 0;
  int exponent = 0;
  IntVec witness;
};

struct GrowthProfile {
  std::string ring;
  LengthKind length = LengthKind::Guivarch;
  Family family = Family::P1;
  long r_max = 0;
  std::uint64_t ball_size = 0;
  std::vector<ProfileRow> rows;  // radii 1..r_max
};

struct ProfileOptions {
  std::uint64_t cap = 2000000;  // maximum number of lattice points in the ball
};

// Number of integer vectors (including 0) in the ball of radius r.
Int ball_size(const GuivarchDecomposition& dec, long r, LengthKind kind);

// Max divisibility over 0 < |v| <= r for r = 1..r_max. Ties are broken by the
// lexicographically least witness. Throws "cap" when the ball is too large.
GrowthProfile rf_profile(const LieRing& L, long r_max, LengthKind kind, Family family,
                         const GuivarchDecomposition& dec, const ProfileOptions& options = {});
// CSV with '#' metadata lines followed by radius,maxD,prime,exponent,witness.
std::string profile_csv(const GrowthProfile& profile, const std::vector<std::string>& metadata = {});

struct WitnessStep {
  int l = 0;
  Int scalar;  // x * lcm(1..l)
  IntVec vector;
  Int d;
  std::int64_t prime = 0;
  int exponent = 0;
  std::int64_t smallest_usable_prime = 0;  // smallest p with vector outside pL
};

// v_l = x lcm(1..l) v for l = l_min..l_max with D_{P1}(v_l).
std::vector<WitnessStep> witness_sequence(const LieRing& L, const IntVec& v, int l_max, const Int& x = 1,
                                          int l_min = 1);

struct ExponentFit {
  std::size_t points = 0;
  bool degenerate = false;  // constant abscissa or values; slope omitted
  std::optional<double> slope;
  std::optional<double> intercept;
  std::vector<double> residuals;
};

// Least squares fit of log D against log(smallest usable prime). Throws
// "points" with fewer than 4 steps.
ExponentFit fit_exponent(const std::vector<WitnessStep>& steps);

struct SubringComparison {
  Int index;
  GrowthProfile full;
  GrowthProfile sub;
  // Ratios full/sub of max divisibility on the shared radii.
  Rat min_ratio;
  Rat max_ratio;
  std::vector<Rat> ratios;
};

// Throws "subring" if sub is not a finite-index Lie subring.
SubringComparison subring_comparison(const LieRing& L, const Lattice& sub, long r_max, Family family,
                                     LengthKind kind = LengthKind::Guivarch, const ProfileOptions& options = {});

}  // namespace rfg
