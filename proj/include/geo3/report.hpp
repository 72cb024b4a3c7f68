#pragma once

// Batch verification runs over catalog entries and their serialized reports.
// Reports carry no timing data so that a fixed configuration and seed always
// serialize to the same bytes.

#include "geo3/catalog.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace geo3 {

struct Tolerances
{
  double harmonic{1e-8};
  double obstruction{1e-4};
  double identity{1e-7};     ///< curvature identities and K^N agreement
  double closed_form{1e-9};  ///< closed-form tables and integrability data
  double system{1e-8};       ///< harmonic curvature system
  double validation{1e-9};   ///< submersion property
  double kn_spread{1e-6};
  double fd{1e-5};
};

enum class Format { Json, Csv };

inline constexpr std::uint64_t kDefaultSeed = 42;

struct RunConfig
{
  std::string space;  ///< "bcv" or "berger" for `tables`
  std::string map;    ///< catalog id for `check` and `sweep`
  std::vector<double> m;
  std::vector<double> l;
  std::vector<double> eps;
  std::size_t points{200};
  std::uint64_t seed{kDefaultSeed};
  Tolerances tol;
  Format format{Format::Json};
};

/// Throws UsageError unless points >= 1 and every tolerance is positive.
void validate_config(const RunConfig & config);

struct RuleResult
{
  std::string name;
  bool passed{false};
  double value{0.0};
  double limit{0.0};
};

struct CheckResult
{
  std::string map;
  std::string description;
  CatalogParams params;
  std::size_t points{0};
  std::uint64_t seed{0};
  Tolerances tolerances;
  std::string chart;
  std::vector<std::string> coordinates;
  std::string case_label;  ///< BCV classification, empty otherwise
  Expectations expected;
  SubmersionValidation validation;
  IdentityReport identities;
  std::vector<RuleResult> rules;
  std::string failure;  ///< structural failure message, if the run could not complete

  bool passed() const;
};

/// Full check of one catalog entry. Usage errors propagate; failures of the
/// entry itself are recorded as failed rules.
CheckResult run_check(const std::string & map, const CatalogParams & params, const RunConfig & config);

struct SweepResult
{
  std::string map;
  std::vector<CheckResult> cells;

  bool passed() const;
};

/// Grid over (m, l) for `bcv.projection` or over eps for `berger.hopf`.
/// Throws UsageError on empty ranges.
SweepResult run_sweep(const RunConfig & config);

struct TablesResult
{
  std::string space;
  double m{0.0}, l{0.0}, eps{0.0};
  std::size_t points{0};
  std::uint64_t seed{0};
  TableReport tables;
  double rotated_max{0.0};  ///< rotated-frame closed forms over seeded rotations
  std::vector<RuleResult> rules;

  bool passed() const;
};

TablesResult run_tables(const RunConfig & config);

nlohmann::ordered_json to_json(const CheckResult & r);
nlohmann::ordered_json to_json(const SweepResult & r);
nlohmann::ordered_json to_json(const TablesResult & r);

/// JSON text with every floating-point number printed to 17 significant digits.
std::string dump_json(const nlohmann::ordered_json & j);

/// One row per sampled point.
std::string to_csv(const CheckResult & r);
std::string to_csv(const SweepResult & r);
/// One row per table quantity.
std::string to_csv(const TablesResult & r);

/// Comma-separated list of reals; throws UsageError on malformed input.
std::vector<double> parse_list(const std::string & text);

}  // namespace geo3
