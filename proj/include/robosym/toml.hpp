#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace robosym::toml {

/// Minimal TOML reader covering the subset used by the config files in this
/// repo: tables, arrays of tables, dotted keys, strings, integers, floats,
/// booleans, and (nested, possibly multi-line) arrays.
class Value {
 public:
  using Table = std::map<std::string, Value>;
  using Array = std::vector<Value>;

  Value() : data_(Table{}) {}
  explicit Value(Table t) : data_(std::move(t)) {}
  explicit Value(Array a) : data_(std::move(a)) {}
  explicit Value(std::string s) : data_(std::move(s)) {}
  explicit Value(double d) : data_(d) {}
  explicit Value(int64_t i) : data_(i) {}
  explicit Value(bool b) : data_(b) {}

  bool is_table() const { return std::holds_alternative<Table>(data_); }
  bool is_array() const { return std::holds_alternative<Array>(data_); }
  bool is_string() const { return std::holds_alternative<std::string>(data_); }
  bool is_number() const {
    return std::holds_alternative<double>(data_) || std::holds_alternative<int64_t>(data_);
  }
  bool is_integer() const { return std::holds_alternative<int64_t>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }

  /// Throwing accessors; error messages name the offending key path.
  const Table& table() const;
  Table& table();
  const Array& array() const;
  Array& array();
  const std::string& str() const;
  double number() const;
  int64_t integer() const;
  bool boolean() const;

  bool contains(const std::string& key) const;
  const Value& at(const std::string& key) const;
  const Value* find(const std::string& key) const;

  double number_or(const std::string& key, double fallback) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;

  /// Flat list of doubles; errors unless every entry is a number.
  std::vector<double> number_array() const;
  /// Nested list-of-lists of doubles (row-major matrix literal).
  std::vector<std::vector<double>> number_matrix() const;

 private:
  std::variant<Table, Array, std::string, double, int64_t, bool> data_;
};

Value parse(const std::string& text);
Value parse_file(const std::string& path);

}  // namespace robosym::toml
