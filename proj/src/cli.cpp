#include "rfgrowth/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "rfgrowth/bch.hpp"
#include "rfgrowth/correspondence.hpp"
#include "rfgrowth/error.hpp"
#include "rfgrowth/finite_ideals.hpp"
#include "rfgrowth/lie_ring.hpp"
#include "rfgrowth/rf_growth.hpp"

namespace rfg {

namespace {

using nlohmann::json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
json jint(const Int& x) {
  if (x.fits_slong_p()) return static_cast<long long>(x.get_si());
  return x.get_str();
}

json jrat(const Rat& x) {
  if (x.get_den() == 1) return jint(x.get_num());
  return x.get_str();
}

json jvec(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(jint(x));
  return a;
}

json jvec(const std::vector<Int>& v, int) {
  json a = json::array();
  for (const auto& x : v) a.push_back(jint(x));
  return a;
}

json jlattice(const Lattice& l) {
  json a = json::array();
  for (const auto& r : l.basis()) a.push_back(jvec(r));
  return a;
}

json jindex(const Lattice& l) {
  auto i = index(l);
  return i ? jint(*i) : json(nullptr);
}

struct Common {
  std::uint64_t seed = 0;
  bool timing = false;
};

json header(const Common& c, const std::string& command, json params) {
  json doc;
  doc["tool"] = "rfgrowth";
  doc["tool_version"] = kToolVersion;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["seed"] = c.seed;
  doc["params"] = std::move(params);
  return doc;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

Lattice parse_lattice(const std::string& text, std::size_t n) {
  IntMatrix rows;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    IntVec v = parse_int_vector(item);
    if (v.size() != n) fail("dimension", "generator '" + item + "' does not have " + std::to_string(n) + " coordinates");
    rows.push_back(std::move(v));
  }
  if (rows.empty()) fail("usage", "no generators given");
  return hnf(rows, n);
}

IntVec parse_vector_for(const LieRing& L, const std::string& text) {
  IntVec v = parse_int_vector(text);
  if (v.size() != L.rank())
    fail("dimension", "vector has " + std::to_string(v.size()) + " coordinates, ring has rank " + std::to_string(L.rank()));
  return v;
}

json ring_summary(const LieRing& L) {
  json r;
  r["name"] = L.name();
  r["rank"] = L.rank();
  r["class"] = L.nilpotency_class();
  json ranks = json::array();
  for (const auto& layer : L.lcs().layers) ranks.push_back(layer.rank());
  r["lcs_ranks"] = ranks;
  return r;
}

// --- subcommands ------------------------------------------------------------

void cmd_delta(const Common& c, const std::string& ring, const std::string& primes_text, std::ostream& out) {
  LieRing L = load_ring(ring);
  auto primes = parse_prime_list(primes_text);
  DeltaSweep sweep = delta_sweep(L, primes);
  json params;
  params["ring"] = ring;
  params["primes"] = primes_text;
  json doc = header(c, "delta", params);
  doc["ring"] = ring_summary(L);
  json rows = json::array();
  for (const auto& r : sweep.rows) {
    json row;
    row["prime"] = r.p;
    row["delta_p"] = r.delta;
    row["ideal_dim"] = r.ideal_dim;
    if (c.timing) row["elapsed_ms"] = r.elapsed_ms;
    rows.push_back(row);
  }
  doc["rows"] = rows;
  doc["stabilized_delta"] = sweep.stabilized;
  doc["dissenting_primes"] = sweep.dissenting;
  emit(out, doc);
}

void cmd_growth(const Common& c, const std::string& ring, const std::string& family, const std::string& length,
                long rmax, std::uint64_t cap, const std::string& csv_path, std::ostream& out) {
  LieRing L = load_ring(ring);
  Family fam = parse_family(family);
  LengthKind kind = parse_length(length);
  if (rmax < 1) fail("usage", "--rmax must be positive");
  if (cap < 1) fail("usage", "--cap must be positive");
  ProfileOptions options;
  options.cap = cap;
  GrowthProfile profile = rf_profile(L, rmax, kind, fam, guivarch_decomposition(L), options);
  std::vector<std::string> meta{
      std::string("tool=rfgrowth ") + kToolVersion,
      "schema_version=" + std::to_string(kSchemaVersion),
      "seed=" + std::to_string(c.seed),
      "ring=" + L.name(),
      "family=" + family_name(fam),
      "length=" + length_name(kind),
      "rmax=" + std::to_string(rmax),
      "ball_size=" + std::to_string(profile.ball_size),
  };
  std::string csv = profile_csv(profile, meta);
  if (csv_path.empty() || csv_path == "-") {
    out << csv;
    return;
  }
  std::ofstream f(csv_path, std::ios::binary);
  if (!f) fail("io", "cannot write " + csv_path);
  f << csv;
}

void cmd_witness(const Common& c, const std::string& ring, const std::string& dir, int lmin, int lmax,
                 const std::string& x_text, std::ostream& out) {
  LieRing L = load_ring(ring);
  IntVec v = parse_vector_for(L, dir);
  Int x;
  if (x.set_str(x_text, 10) != 0 || x <= 0) fail("usage", "--x must be a positive integer");
  if (lmin < 1 || lmax < lmin) fail("usage", "need 1 <= --lmin <= --lmax");
  auto steps = witness_sequence(L, v, lmax, x, lmin);
  json params;
  params["ring"] = ring;
  params["dir"] = jvec(v);
  params["lmin"] = lmin;
  params["lmax"] = lmax;
  params["x"] = jint(x);
  json doc = header(c, "witness", params);
  doc["ring"] = ring_summary(L);
  json rows = json::array();
  for (const auto& s : steps) {
    json row;
    row["l"] = s.l;
    row["scalar"] = jint(s.scalar);
    row["d"] = jint(s.d);
    row["prime"] = s.prime;
    row["exponent"] = s.exponent;
    row["smallest_usable_prime"] = s.smallest_usable_prime;
    rows.push_back(row);
  }
  doc["steps"] = rows;
  if (steps.size() >= 4) {
    ExponentFit fit = fit_exponent(steps);
    json f;
    f["points"] = fit.points;
    f["degenerate"] = fit.degenerate;
    f["slope"] = fit.slope ? json(*fit.slope) : json(nullptr);
    f["intercept"] = fit.intercept ? json(*fit.intercept) : json(nullptr);
    f["residuals"] = fit.residuals;
    doc["fit"] = f;
  } else {
    doc["fit"] = nullptr;
  }
  emit(out, doc);
}

json index_json(const LRGroup& G, const Lattice& S, std::size_t cap) {
  json j;
  try {
    IndexTwoWays idx = index_two_ways(G, S, cap);
    j["lattice_index"] = jint(idx.lattice_index);
    j["group_index"] = jint(idx.group_index);
    j["agree"] = idx.agree();
  } catch (const Error& e) {
    if (e.reason() != "cap") throw;
    j["lattice_index"] = jindex(S);
    j["group_index"] = nullptr;
    j["agree"] = nullptr;
    j["skipped"] = "cap";
  }
  return j;
}

void cmd_correspond(const Common& c, const std::string& ring, const std::string& ideal_text,
                    const std::string& direction, std::size_t samples, std::size_t coset_cap,
                    const std::string& f_text, bool lattice_only, std::ostream& out) {
  LieRing L = load_ring(ring);
  if (direction != "to-normal" && direction != "to-ideal")
    fail("usage", "--direction must be to-normal or to-ideal");
  const BCHTable& table = bch_table(std::max(1, L.nilpotency_class()));
  LRGroup G = validate_lr(L, table);
  Lattice S = parse_lattice(ideal_text, L.rank());

  json params;
  params["ring"] = ring;
  params["direction"] = direction;
  params["generators"] = ideal_text;
  params["samples"] = samples;
  params["coset_cap"] = coset_cap;
  json doc = header(c, "correspond", params);
  doc["ring"] = ring_summary(L);
  doc["input"] = jlattice(S);

  Lattice result;
  if (direction == "to-normal") {
    IdealToNormal r = ideal_to_normal(G, S);
    result = r.result;
    doc["result"] = jlattice(r.result);
    doc["constants"] = {{"delta", jint(r.delta)}, {"class", r.cls}};
    doc["checks"] = {{"is_ideal", r.is_ideal},   {"star_closed", r.star_closed}, {"normal", r.normal},
                     {"sandwich", r.sandwich},   {"index_bound", r.index_bound}, {"all_passed", r.all_passed()}};
    doc["indices"] = {{"ideal", jint(r.ideal_index)}, {"result", jint(r.result_index)}, {"bound", jint(r.bound)}};
  } else {
    NormalToIdealOptions options;
    options.lattice_only = lattice_only;
    if (!f_text.empty()) {
      IntVec f = parse_int_vector(f_text);
      options.f = std::vector<Int>(f.begin(), f.end());
    }
    NormalToIdeal r = normal_to_ideal(G, S, options);
    result = r.result;
    doc["result"] = jlattice(r.result);
    doc["constants"] = {{"lambda", jint(r.lambda)}, {"f", jvec(r.f, 0)}, {"class", r.cls}};
    doc["iterations"] = r.iterations;
    doc["checks"] = {{"is_ideal", r.is_ideal},       {"star_closed", r.star_closed},
                     {"normal", r.normal_subgroup},  {"containment", r.containment},
                     {"index_bound", r.index_bound}, {"all_passed", r.all_passed()}};
    doc["indices"] = {{"normal", jint(r.normal_index)}, {"result", jint(r.result_index)}, {"bound", jint(r.bound)}};
  }
  CosetCheck cc = coset_equality_check(G, result, samples, c.seed);
  json coset;
  coset["ok"] = cc.ok;
  coset["samples"] = cc.samples;
  if (!cc.ok) {
    coset["failure"] = cc.failure;
    coset["v"] = jvec(cc.v);
    coset["s"] = jvec(cc.s);
  }
  doc["coset_check"] = coset;
  doc["index_two_ways"] = index_json(G, result, coset_cap);
  emit(out, doc);
}

void cmd_bch_table(const Common& c, int cls, std::ostream& out) {
  if (cls < 1 || cls > kMaxBchClass) fail("usage", "--class must lie in 1.." + std::to_string(kMaxBchClass));
  const BCHTable& t = bch_table(cls);
  json params;
  params["class"] = cls;
  json doc = header(c, "bch-table", params);
  json terms = json::array();
  for (std::size_t h = 0; h < t.hall->size(); ++h) {
    json term;
    term["index"] = h;
    term["label"] = t.hall->label(h);
    term["weight"] = (*t.hall)[h].weight;
    term["star"] = jrat(t.star_coeffs[h]);
    term["commutator"] = jrat(t.comm_coeffs[h]);
    term["inverse_sum"] = jrat(t.r[h]);
    term["inverse_bracket"] = jrat(t.s[h]);
    terms.push_back(term);
  }
  doc["terms"] = terms;
  doc["delta"] = jint(t.delta);
  doc["lambda"] = jint(t.lambda);
  doc["f"] = jvec(t.f, 0);
  emit(out, doc);
}

void cmd_catalog(const Common& c, std::ostream& out) {
  json doc = header(c, "catalog", json::object());
  json rings = json::array();
  for (const auto& name : catalog_names()) rings.push_back(ring_summary(catalog(name)));
  doc["rings"] = rings;
  emit(out, doc);
}

void cmd_validate(const Common& c, const std::string& ring, std::ostream& out) {
  LieRing L = load_ring(ring);
  json params;
  params["ring"] = ring;
  json doc = header(c, "validate", params);
  doc["ring"] = ring_summary(L);
  doc["definition"] = json::parse(ring_to_json(L));
  doc["valid"] = true;
  if (L.nilpotency_class() <= kMaxBchClass) {
    ClosureCheck lr = check_lr(L, bch_table(std::max(1, L.nilpotency_class())));
    doc["lr_group"] = lr.ok;
    if (!lr.ok) doc["lr_failure"] = lr.detail;
  } else {
    doc["lr_group"] = nullptr;
  }
  emit(out, doc);
}

void error_line(std::ostream& err, const std::string& reason, const std::string& message) {
  json e;
  e["error"] = message;
  e["reason"] = reason;
  err << e.dump() << "\n";
}

}  // namespace

std::vector<std::int64_t> parse_prime_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) -> std::int64_t {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      fail("usage", "bad prime list '" + text + "'");
    }
    if (used != s.size() || v < 0) fail("usage", "bad prime list '" + text + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(item));
      continue;
    }
    std::int64_t a = number(item.substr(0, dots)), b = number(item.substr(dots + 2));
    if (b < a) fail("usage", "empty prime range '" + item + "'");
    if (b > 100000000) fail("usage", "prime range '" + item + "' is too large");
    for (auto p : primes_up_to(b))
      if (p >= a) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) fail("usage", "no primes in '" + text + "'");
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residual finiteness growth of nilpotent Lie rings and their BCH groups", "rfgrowth"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Common common;
  app.add_option("--seed", common.seed, "Seed recorded in every output (default 0)");
  app.add_flag("--timing", common.timing, "Include elapsed_ms in delta rows");

  std::string ring, primes = "2..31", family = "p1", length = "guivarch", csv_path, dir, x_text = "1", ideal,
                    direction = "to-normal", f_text;
  long rmax = 4;
  std::uint64_t cap = 2000000;
  int lmin = 1, lmax = 12, cls = 3;
  std::size_t samples = 200, coset_cap = 200000;
  bool lattice_only = false, json_flag = false;

  auto* delta = app.add_subcommand("delta", "delta_p over a range of primes");
  delta->add_option("--ring", ring, "Catalog name or ring JSON file")->required();
  delta->add_option("--primes", primes, "Primes as a..b ranges or comma list");
  delta->add_flag("--json", json_flag, "JSON output (the default)");

  auto* growth = app.add_subcommand("growth", "RF growth profile as CSV");
  growth->add_option("--ring", ring, "Catalog name or ring JSON file")->required();
  growth->add_option("--family", family, "p1, pinf or all");
  growth->add_option("--length", length, "guivarch or norm");
  growth->add_option("--rmax", rmax, "Largest radius");
  growth->add_option("--cap", cap, "Maximum ball size");
  growth->add_option("--csv", csv_path, "Output file (default stdout)");

  auto* witness = app.add_subcommand("witness", "Divisibility along x lcm(1..l) v");
  witness->add_option("--ring", ring, "Catalog name or ring JSON file")->required();
  witness->add_option("--dir", dir, "Direction, comma separated")->required();
  witness->add_option("--lmin", lmin, "First l");
  witness->add_option("--lmax", lmax, "Last l");
  witness->add_option("--x", x_text, "Positive multiplier");
  witness->add_flag("--json", json_flag, "JSON output (the default)");

  auto* correspond = app.add_subcommand("correspond", "Ideal and normal subgroup constructions");
  correspond->add_option("--ring", ring, "Catalog name or ring JSON file")->required();
  correspond->add_option("--ideal", ideal, "Generators g1;g2;... of the input lattice")->required();
  correspond->add_option("--direction", direction, "to-normal or to-ideal");
  correspond->add_option("--samples", samples, "Random coset checks");
  correspond->add_option("--coset-cap", coset_cap, "Maximum number of cosets to enumerate");
  correspond->add_option("--f", f_text, "Override f(0),...,f(c), comma separated");
  correspond->add_flag("--lattice-only", lattice_only, "Allow class above 3");
  correspond->add_flag("--json", json_flag, "JSON output (the default)");

  auto* table = app.add_subcommand("bch-table", "BCH coefficients and constants");
  table->add_option("--class", cls, "Nilpotency class")->required();

  auto* cat = app.add_subcommand("catalog", "List bundled rings");

  auto* validate = app.add_subcommand("validate", "Check a ring definition");
  validate->add_option("--ring", ring, "Catalog name or ring JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    error_line(err, "usage", e.what());
    return 2;
  }

  try {
    if (delta->parsed()) cmd_delta(common, ring, primes, out);
    else if (growth->parsed()) cmd_growth(common, ring, family, length, rmax, cap, csv_path, out);
    else if (witness->parsed()) cmd_witness(common, ring, dir, lmin, lmax, x_text, out);
    else if (correspond->parsed())
      cmd_correspond(common, ring, ideal, direction, samples, coset_cap, f_text, lattice_only, out);
    else if (table->parsed()) cmd_bch_table(common, cls, out);
    else if (cat->parsed()) cmd_catalog(common, out);
    else if (validate->parsed()) cmd_validate(common, ring, out);
  } catch (const Error& e) {
    error_line(err, e.reason(), e.what());
    return e.reason() == "usage" ? 2 : 1;
  } catch (const std::exception& e) {
    error_line(err, "internal", e.what());
    return 1;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"rfgrowth"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rfg
