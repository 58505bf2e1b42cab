#include "primebias/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "primebias/acceptance.hpp"
#include "primebias/decimal_format.hpp"
#include "primebias/report_io.hpp"

namespace primebias::cli {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw UsageError("bad --k entry '" + std::string(whole) + "'");
  }
  return v;
}

void check_gap(std::int64_t k) {
  if (k <= 0 || k % 2 != 0) {
    throw UsageError("k must be a positive even integer, got " + std::to_string(k));
  }
}

}  // namespace

std::vector<std::int64_t> parse_k_list(const std::string& text) {
  std::vector<std::int64_t> ks;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    if (item.empty()) throw UsageError("empty entry in --k '" + text + "'");
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      const std::int64_t k = parse_int(item, item);
      check_gap(k);
      ks.push_back(k);
    } else {
      const std::string_view tail = item.substr(dots + 2);
      const auto colon = tail.find(':');
      const std::int64_t first = parse_int(item.substr(0, dots), item);
      const std::int64_t last = parse_int(tail.substr(0, colon), item);
      const std::int64_t step =
          colon == std::string_view::npos ? 2 : parse_int(tail.substr(colon + 1), item);
      if (step <= 0) throw UsageError("range step must be positive in '" + std::string(item) + "'");
      if (last < first) throw UsageError("empty range '" + std::string(item) + "'");
      for (std::int64_t k = first; k <= last; k += step) {
        check_gap(k);
        ks.push_back(k);
      }
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return ks;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Sign statistics of phi(p - 1) - phi(p + k - 1) over prime pairs p, p + k",
               "primebias"};
  app.require_subcommand(1);

  RunConfig config;
  std::string k_text;
  std::uint64_t first_primes = 0;
  std::uint64_t up_to = 0;
  std::string format;
  std::string out_path;
  bool full = false;

  auto add_k = [&](CLI::App* sub) {
    sub->add_option("--k", k_text, "Even gaps: list and/or ranges, e.g. 2,4 or 2..120:2")
        ->required();
  };
  auto add_scope = [&](CLI::App* sub) {
    auto* n = sub->add_option("--first-primes", first_primes, "Restrict p to the first N primes")
                  ->check(CLI::PositiveNumber);
    auto* x = sub->add_option("--up-to", up_to, "Restrict p to p <= X");
    n->excludes(x);
    x->excludes(n);
  };
  auto add_cutoffs = [&](CLI::App* sub, bool r) {
    if (r) sub->add_option("--cutoff-r", config.cutoffs.r_series, "Truncation point of R series");
    sub->add_option("--cutoff-euler", config.cutoffs.euler_product,
                    "Truncation point of the Euler product for C_2");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", out_path, what); };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", config.thread_count, "Worker threads for census windows")
        ->check(CLI::PositiveNumber);
  };

  auto* census = app.add_subcommand("census", "Sign census of T(p) and S(p)");
  add_k(census);
  add_scope(census);
  add_format(census);
  add_out(census, "Output file (default: stdout)");
  add_threads(census);

  auto* constants = app.add_subcommand("constants", "C_k, Q, L, R and density bounds");
  add_k(constants);
  add_cutoffs(constants, true);
  add_format(constants);
  add_out(constants, "Output file (default: stdout)");

  auto* tables = app.add_subcommand("tables", "Write table1.csv .. table5.csv");
  tables->add_option("--scale", config.table_scale, "Leading primes used for table1.csv")
      ->check(CLI::PositiveNumber);
  tables->add_flag("--full", full, "Use the first 2e7 primes for table1.csv");
  add_cutoffs(tables, true);
  add_out(tables, "Output directory (default: .)");
  add_threads(tables);

  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_flag("--full", full, "Include the full-scale census over the first 2e7 primes");
  add_cutoffs(verify, true);
  add_threads(verify);

  auto* predict = app.add_subcommand("predict", "Pair counts against C_k x / (log x)^2");
  add_k(predict);
  add_scope(predict);
  add_cutoffs(predict, false);
  add_format(predict);
  add_out(predict, "Output file (default: stdout)");
  add_threads(predict);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (census->parsed()) {
    config.command = Command::census;
  } else if (constants->parsed()) {
    config.command = Command::constants;
    config.format = OutputFormat::json;
  } else if (tables->parsed()) {
    config.command = Command::tables;
  } else if (verify->parsed()) {
    config.command = Command::verify;
    config.extended = full;
  } else {
    config.command = Command::predict;
  }

  if (!k_text.empty()) config.k_list = parse_k_list(k_text);
  const bool scoped = config.command == Command::census || config.command == Command::predict;
  if (scoped && first_primes == 0 && up_to == 0) {
    throw UsageError("one of --first-primes or --up-to is required");
  }
  if (first_primes != 0) {
    config.scope = CensusScope::first_primes(first_primes);
  } else if (up_to != 0) {
    config.scope = CensusScope::up_to(up_to);
  }
  if (scoped) {
    try {
      config.scope.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  if (format == "json") config.format = OutputFormat::json;
  if (format == "csv") config.format = OutputFormat::csv;
  if (!out_path.empty()) config.output_path = out_path;
  if (config.command == Command::tables && full) config.table_scale = full_table_scale;
  return config;
}

namespace {

// Writes path.part and renames it over path; the .part file is removed on failure.
class StagedFile {
 public:
  explicit StagedFile(std::filesystem::path target)
      : target_(std::move(target)), staging_(target_.string() + ".part") {}
  StagedFile(const StagedFile&) = delete;
  StagedFile& operator=(const StagedFile&) = delete;
  ~StagedFile() {
    if (!committed_) {
      std::error_code ec;
      std::filesystem::remove(staging_, ec);
    }
  }

  void write(const std::string& content) {
    std::ofstream os(staging_, std::ios::binary | std::ios::trunc);
    os << content;
    os.close();
    if (!os) throw Error("cannot write " + staging_.string());
  }

  void commit() {
    std::filesystem::rename(staging_, target_);
    committed_ = true;
  }

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
  if (!config.output_path) {
    out << content << std::flush;
    return;
  }
  StagedFile file(*config.output_path);
  file.write(content);
  file.commit();
}

// Progress lines on err at every 10% of windows.
std::function<void(std::size_t, std::size_t)> progress_to(std::ostream& err, std::string label) {
  struct State {
    std::mutex mutex;
    std::size_t last_decile = 0;
  };
  auto state = std::make_shared<State>();
  return [&err, label = std::move(label), state](std::size_t done, std::size_t total) {
    if (total == 0) return;
    const std::size_t decile = done * 10 / total;
    std::lock_guard lock(state->mutex);
    if (decile <= state->last_decile) return;
    state->last_decile = decile;
    err << label << ": " << decile * 10 << "%\n" << std::flush;
  };
}

CensusOptions census_options(const RunConfig& config, std::ostream& err, std::string label) {
  CensusOptions options;
  options.threads = config.thread_count;
  options.progress = progress_to(err, std::move(label));
  return options;
}

std::vector<BiasReport> reports_for(std::span<const std::int64_t> ks, const PrimeSeries& series,
                                    const SeriesValue& twin) {
  std::vector<BiasReport> reports;
  reports.reserve(ks.size());
  for (const std::int64_t k : ks) reports.push_back(bias_bounds(k, series, twin));
  return reports;
}

std::vector<std::int64_t> even_range(std::int64_t first, std::int64_t last, int residue_mod3) {
  std::vector<std::int64_t> ks;
  for (std::int64_t k = first; k <= last; k += 2) {
    if (residue_mod3 < 0 || k % 3 == residue_mod3) ks.push_back(k);
  }
  return ks;
}

int run_census(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto results = census(config.k_list, config.scope, census_options(config, err, "census"));
  emit(config, config.format == OutputFormat::json ? census_json(results) : census_csv(results),
       out);
  return exit_code::ok;
}

int run_constants(const RunConfig& config, std::ostream& out) {
  const PrimeSeries series(config.cutoffs.r_series);
  const SeriesValue twin = twin_prime_product(config.cutoffs.euler_product);
  const auto reports = reports_for(config.k_list, series, twin);
  emit(config,
       config.format == OutputFormat::json ? bias_reports_json(reports) : bias_reports_csv(reports),
       out);
  return exit_code::ok;
}

int run_predict(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::uint64_t x = config.scope.largest_p();
  const auto counts =
      census(config.k_list, CensusScope::up_to(x), census_options(config, err, "predict"));
  const SeriesValue twin = twin_prime_product(config.cutoffs.euler_product);

  std::string csv = "k,x,pair_count,predicted,ratio\n";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : counts) {
    const long double predicted =
        predicted_count(r.k, static_cast<long double>(x), c_k(r.k, twin).value);
    const long double ratio = static_cast<long double>(r.pair_count) / predicted;
    csv += std::to_string(r.k) + "," + std::to_string(x) + "," + std::to_string(r.pair_count) +
           "," + format_significant(predicted, 9) + "," + format_significant(ratio, 9) + "\n";
    rows.push_back({{"k", r.k},
                    {"x", x},
                    {"pair_count", r.pair_count},
                    {"predicted", format_significant(predicted, 9)},
                    {"ratio", format_significant(ratio, 9)}});
  }
  emit(config, config.format == OutputFormat::json ? rows.dump(2) + "\n" : csv, out);
  return exit_code::ok;
}

int run_tables(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::filesystem::path dir = config.output_path.value_or(".");
  std::filesystem::create_directories(dir);

  const auto table1_ks = even_range(2, 120, -1);
  err << "table1: census over the first " << config.table_scale << " primes\n";
  const auto counts = census(table1_ks, CensusScope::first_primes(config.table_scale),
                             census_options(config, err, "table1"));

  err << "tables 2-5: R cutoff " << config.cutoffs.r_series << ", Euler cutoff "
      << config.cutoffs.euler_product << "\n";
  const PrimeSeries series(config.cutoffs.r_series);
  const SeriesValue twin = twin_prime_product(config.cutoffs.euler_product);
  const auto table2 = reports_for(table1_ks, series, twin);
  const auto table3 = reports_for(even_range(2, 164, 2), series, twin);
  const auto table4 = reports_for(even_range(4, 184, 1), series, twin);
  const auto table5 = reports_for(even_range(6, 156, 0), series, twin);

  const std::pair<const char*, std::string> contents[] = {
      {"table1.csv", table1_csv(counts)},
      {"table2.csv", table2_csv(table2)},
      {"table3.csv", biased_table_csv(table3)},
      {"table4.csv", biased_table_csv(table4)},
      {"table5.csv", balanced_table_csv(table5)},
  };
  std::vector<std::unique_ptr<StagedFile>> staged;
  for (const auto& [name, content] : contents) {
    staged.push_back(std::make_unique<StagedFile>(dir / name));
    staged.back()->write(content);
  }
  for (auto& file : staged) file->commit();
  for (const auto& [name, content] : contents) out << (dir / name).string() << "\n";
  return exit_code::ok;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  AcceptanceOptions options;
  options.include_extended = config.extended;
  options.threads = config.thread_count;
  options.r_cutoff = config.cutoffs.r_series;
  options.euler_cutoff = config.cutoffs.euler_product;
  options.log = &out;
  const auto results = run_acceptance(options);
  const auto passed = std::count_if(results.begin(), results.end(),
                                    [](const CriterionResult& r) { return r.passed; });
  out << passed << "/" << results.size() << " criteria passed\n";
  return static_cast<std::size_t>(passed) == results.size() ? exit_code::ok
                                                            : exit_code::verification;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.thread_count < 1) throw UsageError("--threads must be at least 1");
  const bool needs_k = config.command == Command::census || config.command == Command::constants ||
                       config.command == Command::predict;
  if (needs_k && config.k_list.empty()) throw UsageError("--k is required");
  switch (config.command) {
    case Command::census: return run_census(config, out, err);
    case Command::constants: return run_constants(config, out);
    case Command::tables: return run_tables(config, out, err);
    case Command::verify: return run_verify(config, out);
    case Command::predict: return run_predict(config, out, err);
  }
  return exit_code::usage;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  try {
    return run(parse_config(args), out, err);
  } catch (const HelpRequested& help) {
    out << help.what();
    return exit_code::ok;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for options.\n";
    return exit_code::usage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return exit_code::capacity;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }
}

}  // namespace primebias::cli
