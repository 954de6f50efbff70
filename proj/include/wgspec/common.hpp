#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wg {

// Error taxonomy. The CLI maps these onto its exit codes: config/schema
// problems -> 2, model hypothesis failures -> 3, numerical failures -> 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
  std::size_t position;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double pi_sq = pi * pi;
// first zero of the Bessel function J0
inline constexpr double bessel_j01 = 2.404825557695773;
}  // namespace constants

// FNV-1a, used to fingerprint profile expressions in reports.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::string_view s);

// Shortest round-trip decimal form of a double; keeps CSV/JSON output
// byte-stable across runs.
std::string format_double(double v);

}  // namespace wg
