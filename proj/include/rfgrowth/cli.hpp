#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rfg {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Inclusive ranges "a..b" (primes only) and explicit values, comma separated.
// Throws "usage" on malformed input.
std::vector<std::int64_t> parse_prime_list(const std::string& text);

// Exit status 0 on success, 1 on domain errors, 2 on usage errors. Errors are
// reported on err as a single JSON line with a "reason" field.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfg
