#include "lpentropy/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lpentropy {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(int v) { return std::to_string(v); }
std::string fmt(long long v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

TableWriter::TableWriter(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void TableWriter::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("TableWriter: row width mismatch");
  rows_.push_back(std::move(row));
}

void TableWriter::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    os << (i ? "," : "") << csv_escape(columns_[i]);
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      const Cell& c = row[i];
      if (std::holds_alternative<double>(c))
        os << fmt(std::get<double>(c));
      else if (std::holds_alternative<long long>(c))
        os << fmt(std::get<long long>(c));
      else if (std::holds_alternative<std::string>(c))
        os << csv_escape(std::get<std::string>(c));
    }
    os << '\n';
  }
}

void TableWriter::write_json(std::ostream& os) const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<double>(c))
        rec[columns_[i]] = std::get<double>(c);
      else if (std::holds_alternative<long long>(c))
        rec[columns_[i]] = std::get<long long>(c);
      else if (std::holds_alternative<std::string>(c))
        rec[columns_[i]] = std::get<std::string>(c);
    }
    arr.push_back(std::move(rec));
  }
  os << arr.dump(2) << '\n';
}

std::string TableWriter::csv() const {
  std::ostringstream ss;
  write_csv(ss);
  return ss.str();
}

std::string TableWriter::json() const {
  std::ostringstream ss;
  write_json(ss);
  return ss.str();
}

}  // namespace lpentropy
