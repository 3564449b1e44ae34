#include "cwmix/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#ifndef CWMIX_VERSION
#define CWMIX_VERSION "unknown"
#endif

namespace cwmix {

namespace {

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c))
        return std::to_string(std::get<std::int64_t>(c));
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    return std::get<std::string>(c);
}

nlohmann::json cell_to_json(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    return std::get<std::string>(c);
}

}  // namespace

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("ResultTable::add_row: width mismatch");
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(table.columns[i]);
    }
    out += '\n';
    for (const std::vector<Cell>& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cell_to_string(row[i]));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const ResultTable& table) {
    nlohmann::json doc;
    doc["meta"] = nlohmann::json::parse(table.meta_json);
    doc["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const std::vector<Cell>& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const Cell& c : row) r.push_back(cell_to_json(c));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

void emit(const ResultTable& table, const std::string& path, const std::string& format,
          double wall_time_seconds) {
    std::string body;
    if (format == "csv") {
        body = to_csv(table);
    } else if (format == "json") {
        body = to_json(table);
    } else {
        throw std::invalid_argument("emit: unknown format '" + format + "'");
    }
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("emit: cannot open " + path);
        out << body;
        if (!out) throw std::runtime_error("emit: write failed for " + path);
    }
    nlohmann::json meta = nlohmann::json::parse(table.meta_json);
    meta["wall_time_seconds"] = wall_time_seconds;
    meta["version"] = code_version();
    std::ofstream mout(path + ".meta.json", std::ios::binary);
    if (!mout) throw std::runtime_error("emit: cannot open " + path + ".meta.json");
    mout << meta.dump(2) << "\n";
    if (!mout) throw std::runtime_error("emit: write failed for " + path + ".meta.json");
}

const char* code_version() { return CWMIX_VERSION; }

}  // namespace cwmix
