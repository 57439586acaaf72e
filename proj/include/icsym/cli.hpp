#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "icsym/graph.hpp"

namespace icsym::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parsed `er:<n>:<density>:<p|uniform>[:<seed>]`.
struct GeneratorSpec {
  std::size_t nodes = 0;
  double density = 0.0;
  EdgeProbability probability = UniformRandom{};
  std::optional<std::uint64_t> seed;
};

/// Throws std::invalid_argument on a malformed spec.
GeneratorSpec parse_generator_spec(const std::string& spec);

/// Runs one command line. args[0] is the program name. Reports go to out,
/// diagnostics to err; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icsym::cli
