#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prl/primes.hpp"
#include "prl/search.hpp"

namespace prl {

enum class Tier { quick, standard, extended };

std::string_view to_string(Tier tier);
std::optional<Tier> tier_from_string(std::string_view name);

enum class OutputFormat { text, csv, json };

std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> format_from_string(std::string_view name);

// One embedded reference row: the value the named computation must
// reproduce exactly.
struct TableRow {
  int64_t m = 0;
  int64_t expected = 0;
  Tier cost = Tier::quick;
  std::string predicate;  // row-level override; empty = table predicate
};

struct PaperTable {
  std::string id;
  std::string title;
  std::string predicate;
  std::vector<TableRow> rows;
};

// Parses the embedded JSON after asserting its checksum, so drift in the
// data file is caught at startup. Throws Error on checksum mismatch.
const std::vector<PaperTable>& embedded_tables();

// FNV-1a 64 over the embedded JSON text.
uint64_t embedded_tables_checksum();

struct ReportEntry {
  std::string table_id;
  int64_t m = 0;
  int64_t expected = 0;
  std::optional<int64_t> computed;
  enum class Status { pass, fail, skipped } status = Status::skipped;
  std::string reason;  // failure cause or skip reason
  double elapsed_ms = 0.0;
};

std::string_view to_string(ReportEntry::Status status);

struct ReproductionReport {
  Tier tier = Tier::quick;
  std::vector<ReportEntry> entries;  // table order, then ascending row order
  int64_t passed = 0;
  int64_t failed = 0;
  int64_t skipped = 0;
};

struct ReproduceOptions {
  Tier tier = Tier::quick;
  std::vector<std::string> tables;  // empty = all; unknown id = ConfigError
  SieveConfig sieve;
  int threads = 1;  // worker pool for independent rows
};

// Computes every selected row through the owning module and diffs it
// against the embedded value. Per-row errors are recorded as failures;
// they never abort the remaining rows.
ReproductionReport run_reproduction(const ReproduceOptions& options = {});

// Deterministic serialization; row order is embedding order.
std::string emit(const ReproductionReport& report, OutputFormat format);

}  // namespace prl
