#pragma once

// CSV and JSON renderings of census results and bias reports. Output is
// byte-stable: fixed column order, '\n' line endings, locale-free numbers.

#include <span>
#include <string>

#include "json.hpp"
#include "primebias/bias_constants.hpp"
#include "primebias/pair_census.hpp"

namespace primebias {

nlohmann::ordered_json to_json(const SeriesValue& value);
nlohmann::ordered_json to_json(const QSet& q);
nlohmann::ordered_json to_json(const BiasReport& report);
nlohmann::ordered_json to_json(const CensusResult& result);

std::string bias_reports_json(std::span<const BiasReport> reports);
std::string bias_reports_csv(std::span<const BiasReport> reports);
std::string census_json(std::span<const CensusResult> results);
std::string census_csv(std::span<const CensusResult> results);

/// Space-separated primes, e.g. "5 7 11".
std::string join_primes(const QSet& q);

// Table files. Rows appear in the order given.
std::string table1_csv(std::span<const CensusResult> results);
std::string table2_csv(std::span<const BiasReport> reports);
/// Tables for 3 not dividing k (one file per residue class).
std::string biased_table_csv(std::span<const BiasReport> reports);
/// Table for 3 | k.
std::string balanced_table_csv(std::span<const BiasReport> reports);

}  // namespace primebias
