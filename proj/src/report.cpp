#include "choq/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace choq {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

JsonValue& JsonValue::operator[](const std::string& key) {
  if (kind_ == Kind::null) kind_ = Kind::object;
  if (kind_ != Kind::object) throw std::logic_error("JsonValue: not an object");
  return obj_[key];
}

void JsonValue::push_back(JsonValue v) {
  if (kind_ == Kind::null) kind_ = Kind::array;
  if (kind_ != Kind::array) throw std::logic_error("JsonValue: not an array");
  arr_.push_back(std::move(v));
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(2 * depth), ' '); }

}  // namespace

void JsonValue::write(std::string& out, int depth) const {
  switch (kind_) {
    case Kind::null:
      out += "null";
      break;
    case Kind::boolean:
      out += bool_ ? "true" : "false";
      break;
    case Kind::integer: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(int_));
      out += buf;
      break;
    }
    case Kind::number:
      if (std::isfinite(num_)) {
        out += format_double(num_);
      } else {
        out += "null";
      }
      break;
    case Kind::string:
      write_escaped(out, str_);
      break;
    case Kind::array:
      if (arr_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < arr_.size(); ++i) {
        indent(out, depth + 1);
        arr_[i].write(out, depth + 1);
        if (i + 1 < arr_.size()) out += ',';
        out += '\n';
      }
      indent(out, depth);
      out += ']';
      break;
    case Kind::object:
      if (obj_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      {
        std::size_t i = 0;
        for (const auto& [key, value] : obj_) {
          indent(out, depth + 1);
          write_escaped(out, key);
          out += ": ";
          value.write(out, depth + 1);
          if (++i < obj_.size()) out += ',';
          out += '\n';
        }
      }
      indent(out, depth);
      out += '}';
      break;
  }
}

std::string JsonValue::dump() const {
  std::string out;
  write(out, 0);
  out += '\n';
  return out;
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  append_row(header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::logic_error("format_csv: ragged row");
    append_row(row);
  }
  return out;
}

}  // namespace choq
