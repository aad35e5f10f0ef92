// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "permsym/common.hpp"

namespace permsym {

// Version of the report JSON layout; bump on any field change.
inline constexpr const char* kSchemaVersion = "1.0";

// Counts above this cannot be represented exactly by a JSON number reader
// that uses doubles, so they are emitted as decimal strings instead.
inline constexpr long long kJsonExactIntegerMax = 9007199254740992LL;  // 2^53

namespace report {

/// A small ordered JSON document: objects keep insertion order so that equal
/// runs emit byte-identical reports. Floats are printed with 17 significant
/// digits (always round-trippable).
class Value {
 public:
  enum class Kind { kNull, kBool, kInt, kDouble, kString, kArray, kObject };

  Value() : kind_(Kind::kNull) {}

  static Value boolean(bool b) {
    Value v;
    v.kind_ = Kind::kBool;
    v.bool_ = b;
    return v;
  }
  static Value integer(long long i) {
    Value v;
    v.kind_ = Kind::kInt;
    v.int_ = i;
    return v;
  }
  /// Exact count: JSON integer while exactly representable in a double,
  /// decimal string beyond that.
  static Value count(long long c) {
    if (c > kJsonExactIntegerMax || c < -kJsonExactIntegerMax)
      return str(std::to_string(c));
    return integer(c);
  }
  static Value number(double d) {
    require(std::isfinite(d), "report: non-finite number");
    Value v;
    v.kind_ = Kind::kDouble;
    v.double_ = d;
    return v;
  }
  static Value str(std::string s) {
    Value v;
    v.kind_ = Kind::kString;
    v.string_ = std::move(s);
    return v;
  }
  static Value array() {
    Value v;
    v.kind_ = Kind::kArray;
    return v;
  }
  static Value object() {
    Value v;
    v.kind_ = Kind::kObject;
    return v;
  }

  Value& push(Value item) {
    require(kind_ == Kind::kArray, "report: push on non-array");
    items_.push_back(std::move(item));
    return *this;
  }

  Value& set(const std::string& key, Value item) {
    require(kind_ == Kind::kObject, "report: set on non-object");
    members_.emplace_back(key, std::move(item));
    return *this;
  }

  void serialize(std::string& out) const {
    switch (kind_) {
      case Kind::kNull:
        out += "null";
        return;
      case Kind::kBool:
        out += bool_ ? "true" : "false";
        return;
      case Kind::kInt:
        out += std::to_string(int_);
        return;
      case Kind::kDouble: {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", double_);
        out += buf;
        return;
      }
      case Kind::kString:
        append_escaped(out, string_);
        return;
      case Kind::kArray: {
        out += '[';
        for (std::size_t i = 0; i < items_.size(); ++i) {
          if (i) out += ',';
          items_[i].serialize(out);
        }
        out += ']';
        return;
      }
      case Kind::kObject: {
        out += '{';
        for (std::size_t i = 0; i < members_.size(); ++i) {
          if (i) out += ',';
          append_escaped(out, members_[i].first);
          out += ':';
          members_[i].second.serialize(out);
        }
        out += '}';
        return;
      }
    }
  }

  std::string serialize() const {
    std::string out;
    serialize(out);
    return out;
  }

 private:
  static void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
          } else {
            out += static_cast<char>(c);
          }
      }
    }
    out += '"';
  }

  Kind kind_;
  bool bool_ = false;
  long long int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<Value> items_;
  std::vector<std::pair<std::string, Value>> members_;
};

}  // namespace report

/// One named pass/fail comparison inside a report.
struct CheckItem {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// The single output document every command emits.
struct ReportEnvelope {
  std::string command;
  report::Value params = report::Value::object();
  report::Value results = report::Value::object();
  std::vector<CheckItem> checks;

  bool all_pass() const {
    for (const CheckItem& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::string render() const {
    report::Value doc = report::Value::object();
    doc.set("command", report::Value::str(command));
    doc.set("params", params);
    doc.set("results", results);
    report::Value list = report::Value::array();
    for (const CheckItem& c : checks) {
      report::Value item = report::Value::object();
      item.set("name", report::Value::str(c.name));
      item.set("value", report::Value::number(c.value));
      item.set("threshold", report::Value::number(c.threshold));
      item.set("pass", report::Value::boolean(c.pass));
      list.push(std::move(item));
    }
    doc.set("checks", std::move(list));
    doc.set("pass", report::Value::boolean(all_pass()));
    doc.set("schema_version", report::Value::str(kSchemaVersion));
    return doc.serialize();
  }
};

}  // namespace permsym
