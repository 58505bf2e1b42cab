#pragma once

// Command-line front end: argument parsing into a RunConfig and the
// subcommand drivers behind `primebias`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "primebias/bias_constants.hpp"
#include "primebias/errors.hpp"
#include "primebias/pair_census.hpp"

namespace primebias::cli {

enum class Command { census, constants, tables, verify, predict };
enum class OutputFormat { csv, json };

struct Cutoffs {
  std::uint64_t r_series = default_r_cutoff;
  std::uint64_t euler_product = default_euler_cutoff;
};

inline constexpr std::uint64_t default_table_scale = 100'000;
inline constexpr std::uint64_t full_table_scale = 20'000'000;

struct RunConfig {
  Command command = Command::verify;
  std::vector<std::int64_t> k_list;
  CensusScope scope;
  Cutoffs cutoffs;
  OutputFormat format = OutputFormat::csv;
  /// File for census/constants/predict (stdout when absent); directory for tables.
  std::optional<std::filesystem::path> output_path;
  int thread_count = 1;
  /// Number of leading primes behind table1.csv.
  std::uint64_t table_scale = default_table_scale;
  /// verify: also run the full-scale census.
  bool extended = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Thrown by parse_config for --help; what() is the help text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int capacity = 2;
inline constexpr int verification = 3;
}  // namespace exit_code

/// "2,4,10" or "2..120:2" or a mix ("2,6..12:2"). Throws UsageError on odd
/// or non-positive entries.
std::vector<std::int64_t> parse_k_list(const std::string& text);

/// args excludes the program name. Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the command. Results go to `out` (or files), progress and
/// diagnostics to `err`. Returns an exit_code value.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run with error-to-exit-code mapping.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace primebias::cli
