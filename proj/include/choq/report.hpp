#pragma once

// Deterministic report serialization. Reports are JSON trees with
// alphabetically sorted object keys and every floating point number printed
// with 17 significant digits, so identical inputs serialize to identical
// bytes. A flat CSV projection of the per-alpha scalar columns is available
// for spreadsheet work; the JSON document is the source of truth.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace choq {

class JsonValue {
 public:
  enum class Kind { null, boolean, integer, number, string, array, object };

  JsonValue() : kind_(Kind::null) {}
  JsonValue(bool b) : kind_(Kind::boolean), bool_(b) {}
  JsonValue(int v) : kind_(Kind::integer), int_(v) {}
  JsonValue(std::int64_t v) : kind_(Kind::integer), int_(v) {}
  JsonValue(std::uint64_t v) : kind_(Kind::integer), int_(static_cast<std::int64_t>(v)) {}
  JsonValue(double v) : kind_(Kind::number), num_(v) {}
  JsonValue(const char* s) : kind_(Kind::string), str_(s) {}
  JsonValue(std::string s) : kind_(Kind::string), str_(std::move(s)) {}

  static JsonValue array() {
    JsonValue v;
    v.kind_ = Kind::array;
    return v;
  }
  static JsonValue object() {
    JsonValue v;
    v.kind_ = Kind::object;
    return v;
  }

  Kind kind() const { return kind_; }
  JsonValue& operator[](const std::string& key);  // object access, creates entries
  void push_back(JsonValue v);                    // array append

  // Serializes with 2-space indentation, sorted keys, "%.17g" numbers, and a
  // trailing newline. Non-finite numbers are rendered as null.
  std::string dump() const;

 private:
  void write(std::string& out, int depth) const;

  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double num_ = 0.0;
  std::string str_;
  std::vector<JsonValue> arr_;
  std::map<std::string, JsonValue> obj_;  // std::map keeps keys sorted
};

// "%.17g" rendering used for every floating point field.
std::string format_double(double v);

// One CSV document from a header row and rows of preformatted cells.
std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

}  // namespace choq
