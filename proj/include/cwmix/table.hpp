#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cwmix {

using Cell = std::variant<std::int64_t, double, std::string>;

// A rectangular result set plus reproducibility metadata.  Rows and metadata
// are fully determined by the producing spec + seed; wall time is kept out of
// the table so emitted CSV bytes are rerun-stable.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Deterministic metadata: seed, resolved spec, code version, tolerance
    // bands.  Stored as a JSON object serialized to string to keep this
    // header light.
    std::string meta_json = "{}";

    void add_row(std::vector<Cell> row);  // throws on width mismatch
};

// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

// RFC 4180 CSV: header row, CRLF-free \n line ends, quoting only where
// needed, doubled quotes inside quoted fields.
std::string to_csv(const ResultTable& table);

// JSON document {"meta": {...}, "rows": [[...], ...], "columns": [...]}.
std::string to_json(const ResultTable& table);

// Writes table to `path` in the chosen format ("csv" or "json") and always
// writes a sibling `<path>.meta.json` carrying the table metadata plus
// non-deterministic extras (wall time).  Throws std::runtime_error on I/O
// failure and std::invalid_argument on unknown format.
void emit(const ResultTable& table, const std::string& path, const std::string& format,
          double wall_time_seconds);

// Code version string baked at build time.
const char* code_version();

}  // namespace cwmix
