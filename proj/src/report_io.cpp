#include "primebias/report_io.hpp"

#include "primebias/decimal_format.hpp"
#include "primebias/errors.hpp"

namespace primebias {

using json = nlohmann::ordered_json;

namespace {

std::string sig(real v) { return format_significant(v, 9); }

const char* to_string(Enclosure e) {
  return e == Enclosure::series_upper ? "series_upper" : "product_relative";
}

const BiasedBounds& biased(const BiasReport& r) {
  const auto* b = std::get_if<BiasedBounds>(&r.bounds);
  if (b == nullptr) throw DomainError("k = " + std::to_string(r.k) + " has balanced bounds");
  return *b;
}

const BalancedBounds& balanced(const BiasReport& r) {
  const auto* b = std::get_if<BalancedBounds>(&r.bounds);
  if (b == nullptr) throw DomainError("k = " + std::to_string(r.k) + " has biased bounds");
  return *b;
}

}  // namespace

json to_json(const SeriesValue& value) {
  return json{{"value", sig(value.value)},
              {"tail_bound", sig(value.tail_bound)},
              {"cutoff", value.cutoff},
              {"enclosure", to_string(value.enclosure)}};
}

json to_json(const QSet& q) {
  return json{{"k", q.k}, {"sign_mode", to_string(q.mode)}, {"m", q.m()}, {"primes", q.primes}};
}

json to_json(const BiasReport& report) {
  json out{{"k", report.k}, {"chi3", report.chi3}, {"c_k", to_json(report.c_k)}};
  json display{{"c_k", round_fixed(report.c_k.value, 5)}};
  if (const auto* b = std::get_if<BiasedBounds>(&report.bounds)) {
    out["theorem"] = "biased";
    out["q_set"] = to_json(b->q_set);
    out["l_k"] = sig(b->l_k);
    out["r_k"] = to_json(b->r_k);
    out["r_k_prime"] = to_json(b->r_k_prime);
    out["bound_biased"] = sig(b->bound_biased);
    out["bound_biased_sign"] = report.chi3;
    out["bound_reversed"] = sig(b->bound_reversed);
    out["bound_reversed_sign"] = -report.chi3;
    display["l_k"] = format_table_value(b->l_k);
    display["r_k"] = format_table_value(b->r_k.value);
    display["bound_biased"] = format_table_value(b->bound_biased);
    display["r_k_prime"] = format_table_value(b->r_k_prime.value);
    display["bound_reversed"] = format_table_value(b->bound_reversed);
  } else {
    const auto& c = std::get<BalancedBounds>(report.bounds);
    out["theorem"] = "balanced";
    out["q_minus"] = to_json(c.q_minus);
    out["q_plus"] = to_json(c.q_plus);
    out["l_minus"] = sig(c.l_minus);
    out["l_plus"] = sig(c.l_plus);
    out["r_minus"] = to_json(c.r_minus);
    out["r_plus"] = to_json(c.r_plus);
    out["bound_neg"] = sig(c.bound_neg);
    out["bound_pos"] = sig(c.bound_pos);
    display["l_minus"] = format_table_value(c.l_minus);
    display["r_minus"] = format_table_value(c.r_minus.value);
    display["bound_neg"] = format_table_value(c.bound_neg);
    display["l_plus"] = format_table_value(c.l_plus);
    display["r_plus"] = format_table_value(c.r_plus.value);
    display["bound_pos"] = format_table_value(c.bound_pos);
  }
  out["display"] = std::move(display);
  return out;
}

json to_json(const CensusResult& r) {
  return json{{"k", r.k},
              {"mode", to_string(r.scope.mode)},
              {"bound", r.scope.bound},
              {"pair_count", r.pair_count},
              {"t_neg", r.t_neg},
              {"t_zero", r.t_zero},
              {"t_pos", r.t_pos},
              {"s_neg", r.s_neg},
              {"s_zero", r.s_zero},
              {"s_pos", r.s_pos},
              {"st_agree", r.st_agree}};
}

std::string bias_reports_json(std::span<const BiasReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::string bias_reports_csv(std::span<const BiasReport> reports) {
  std::string out =
      "k,chi3,c_k,q,l_k,r_k,r_k_prime,bound_biased,bound_reversed,"
      "q_minus,l_minus,r_minus,bound_neg,q_plus,l_plus,r_plus,bound_pos\n";
  for (const auto& r : reports) {
    out += std::to_string(r.k) + "," + std::to_string(r.chi3) + "," + sig(r.c_k.value) + ",";
    if (const auto* b = std::get_if<BiasedBounds>(&r.bounds)) {
      out += join_primes(b->q_set) + "," + sig(b->l_k) + "," + sig(b->r_k.value) + "," +
             sig(b->r_k_prime.value) + "," + sig(b->bound_biased) + "," + sig(b->bound_reversed) +
             ",,,,,,,,\n";
    } else {
      const auto& c = std::get<BalancedBounds>(r.bounds);
      out += ",,,,,," + join_primes(c.q_minus) + "," + sig(c.l_minus) + "," +
             sig(c.r_minus.value) + "," + sig(c.bound_neg) + "," + join_primes(c.q_plus) + "," +
             sig(c.l_plus) + "," + sig(c.r_plus.value) + "," + sig(c.bound_pos) + "\n";
    }
  }
  return out;
}

std::string census_json(std::span<const CensusResult> results) {
  json arr = json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::string census_csv(std::span<const CensusResult> results) {
  std::string out = census_csv_header();
  for (const auto& r : results) out += to_csv_row(r);
  return out;
}

std::string join_primes(const QSet& q) {
  std::string out;
  for (const std::uint64_t p : q.primes) {
    if (!out.empty()) out += ' ';
    out += std::to_string(p);
  }
  return out;
}

std::string table1_csv(std::span<const CensusResult> results) {
  std::string out = "k,t_neg_count,pair_count,proportion\n";
  for (const auto& r : results) {
    const long double proportion =
        r.pair_count == 0 ? 0.0L
                          : static_cast<long double>(r.t_neg) / static_cast<long double>(r.pair_count);
    out += std::to_string(r.k) + "," + std::to_string(r.t_neg) + "," +
           std::to_string(r.pair_count) + "," + format_significant(proportion, 6) + "\n";
  }
  return out;
}

std::string table2_csv(std::span<const BiasReport> reports) {
  std::string out = "k,c_k\n";
  for (const auto& r : reports) {
    out += std::to_string(r.k) + "," + round_fixed(r.c_k.value, 5) + "\n";
  }
  return out;
}

std::string biased_table_csv(std::span<const BiasReport> reports) {
  std::string out = "k,q,l_k,r_k,bound_biased,r_k_prime,bound_reversed\n";
  for (const auto& r : reports) {
    const auto& b = biased(r);
    out += std::to_string(r.k) + "," + join_primes(b.q_set) + "," + format_table_value(b.l_k) +
           "," + format_table_value(b.r_k.value) + "," + format_table_value(b.bound_biased) + "," +
           format_table_value(b.r_k_prime.value) + "," + format_table_value(b.bound_reversed) +
           "\n";
  }
  return out;
}

std::string balanced_table_csv(std::span<const BiasReport> reports) {
  std::string out = "k,q_minus,l_minus,r_minus,bound_neg,q_plus,l_plus,r_plus,bound_pos\n";
  for (const auto& r : reports) {
    const auto& c = balanced(r);
    out += std::to_string(r.k) + "," + join_primes(c.q_minus) + "," +
           format_table_value(c.l_minus) + "," + format_table_value(c.r_minus.value) + "," +
           format_table_value(c.bound_neg) + "," + join_primes(c.q_plus) + "," +
           format_table_value(c.l_plus) + "," + format_table_value(c.r_plus.value) + "," +
           format_table_value(c.bound_pos) + "\n";
  }
  return out;
}

}  // namespace primebias
