#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace lpentropy {

// %.17g round-trips doubles exactly and is locale-independent (the C locale
// is never changed here), which keeps emitted rows byte-identical for a
// fixed seed.
std::string fmt(double v);
std::string fmt(int v);
std::string fmt(long long v);
std::string fmt(std::uint64_t v);

using Cell = std::variant<std::monostate, double, long long, std::string>;

// Row table with a fixed header, serializable as CSV (header row first) or
// as a JSON array of flat records. Empty cells render as empty CSV fields
// and are omitted from JSON records.
class TableWriter {
 public:
  explicit TableWriter(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
  std::string csv() const;
  std::string json() const;

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t row_count() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace lpentropy
