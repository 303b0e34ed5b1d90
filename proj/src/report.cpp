#include "kee/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace kee {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string plain(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return format_double(x);
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else return x;
      },
      v);
}

std::string json_value(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return "\"" + json_escape(*s) + "\"";
  if (const auto* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return "null";
  }
  return plain(v);
}

void json_object(std::ostringstream& os, const Fields& fields) {
  os << '{';
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << '"' << json_escape(fields[i].first) << "\":" << json_value(fields[i].second);
  }
  os << '}';
}

double key_number(const ReportRecord& r, const std::string& key) {
  const Value* v = r.find(key);
  if (!v) return -std::numeric_limits<double>::infinity();
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  return -std::numeric_limits<double>::infinity();
}

}  // namespace

ReportRecord& ReportRecord::set(const std::string& key, Value v) {
  for (auto& [k, existing] : fields_) {
    if (k == key) {
      existing = std::move(v);
      return *this;
    }
  }
  fields_.emplace_back(key, std::move(v));
  return *this;
}

const Value* ReportRecord::find(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return &v;
  return nullptr;
}

double ReportRecord::number(const std::string& key) const {
  const Value* v = find(key);
  if (!v) throw std::out_of_range("report key not found: " + key);
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  throw std::invalid_argument("report key is not numeric: " + key);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void sort_rows(std::vector<ReportRecord>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRecord& a, const ReportRecord& b) {
    const double na = key_number(a, "n");
    const double nb = key_number(b, "n");
    if (na != nb) return na < nb;
    return key_number(a, "beta1") < key_number(b, "beta1");
  });
}

std::string to_csv(const Report& r) {
  std::vector<std::string> header;
  for (const auto& row : r.rows)
    for (const auto& [k, v] : row.fields())
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_field(header[i]);
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) os << ',';
      if (const Value* v = row.find(header[i])) os << csv_field(plain(*v));
    }
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Report& r) {
  std::ostringstream os;
  os << "{\"meta\":";
  json_object(os, r.meta);
  os << ",\"rows\":[";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (i) os << ',';
    json_object(os, r.rows[i].fields());
  }
  os << "]}\n";
  return os.str();
}

std::string render(const Report& r, OutputFormat format) {
  return format == OutputFormat::json ? to_json(r) : to_csv(r);
}

std::size_t emit(const Report& r, OutputFormat format, const std::optional<std::string>& path,
                 std::ostream& out) {
  const std::string bytes = render(r, format);
  if (path) {
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f) throw IOError("cannot open output file: " + *path);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IOError("failed writing output file: " + *path);
  } else {
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IOError("failed writing report to stream");
  }
  return bytes.size();
}

}  // namespace kee
