#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kee {

using Value = std::variant<std::int64_t, double, std::string, bool>;
using Fields = std::vector<std::pair<std::string, Value>>;

/// Flat, ordered key–value row.
class ReportRecord {
 public:
  ReportRecord& set(const std::string& key, Value v);
  [[nodiscard]] const Value* find(const std::string& key) const;
  [[nodiscard]] double number(const std::string& key) const;
  [[nodiscard]] const Fields& fields() const { return fields_; }

 private:
  Fields fields_;
};

struct Report {
  Fields meta;
  std::vector<ReportRecord> rows;
};

enum class OutputFormat { json, csv };

class IOError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits ("%.17g"); lossless for doubles.
[[nodiscard]] std::string format_double(double v);

/// Stable sort by (n, beta1) for rows that carry those keys.
void sort_rows(std::vector<ReportRecord>& rows);

/// CSV: header (union of keys, first-seen order) + rows, LF endings.
[[nodiscard]] std::string to_csv(const Report& r);
/// JSON: {"meta": {...}, "rows": [...]}, keys in insertion order.
[[nodiscard]] std::string to_json(const Report& r);
[[nodiscard]] std::string render(const Report& r, OutputFormat format);

/// Writes to `path` when given, otherwise to `out`. Returns bytes written.
std::size_t emit(const Report& r, OutputFormat format, const std::optional<std::string>& path,
                 std::ostream& out);

}  // namespace kee
