#include "robosym/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "robosym/error.hpp"

namespace robosym::toml {

const Value::Table& Value::table() const {
  require(is_table(), ErrorCode::parse_error, "value is not a table");
  return std::get<Table>(data_);
}

Value::Table& Value::table() {
  require(is_table(), ErrorCode::parse_error, "value is not a table");
  return std::get<Table>(data_);
}

const Value::Array& Value::array() const {
  require(is_array(), ErrorCode::parse_error, "value is not an array");
  return std::get<Array>(data_);
}

Value::Array& Value::array() {
  require(is_array(), ErrorCode::parse_error, "value is not an array");
  return std::get<Array>(data_);
}

const std::string& Value::str() const {
  require(is_string(), ErrorCode::parse_error, "value is not a string");
  return std::get<std::string>(data_);
}

double Value::number() const {
  if (std::holds_alternative<int64_t>(data_)) return static_cast<double>(std::get<int64_t>(data_));
  require(std::holds_alternative<double>(data_), ErrorCode::parse_error, "value is not a number");
  return std::get<double>(data_);
}

int64_t Value::integer() const {
  require(is_integer(), ErrorCode::parse_error, "value is not an integer");
  return std::get<int64_t>(data_);
}

bool Value::boolean() const {
  require(is_bool(), ErrorCode::parse_error, "value is not a boolean");
  return std::get<bool>(data_);
}

bool Value::contains(const std::string& key) const {
  return is_table() && table().count(key) > 0;
}

const Value& Value::at(const std::string& key) const {
  const auto& t = table();
  auto it = t.find(key);
  require(it != t.end(), ErrorCode::parse_error, "missing key '" + key + "'");
  return it->second;
}

const Value* Value::find(const std::string& key) const {
  if (!is_table()) return nullptr;
  auto it = table().find(key);
  return it == table().end() ? nullptr : &it->second;
}

double Value::number_or(const std::string& key, double fallback) const {
  const Value* v = find(key);
  return v == nullptr ? fallback : v->number();
}

std::string Value::string_or(const std::string& key, const std::string& fallback) const {
  const Value* v = find(key);
  return v == nullptr ? fallback : v->str();
}

std::vector<double> Value::number_array() const {
  std::vector<double> out;
  for (const Value& v : array()) out.push_back(v.number());
  return out;
}

std::vector<std::vector<double>> Value::number_matrix() const {
  std::vector<std::vector<double>> out;
  for (const Value& row : array()) out.push_back(row.number_array());
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Value run() {
    Value root;
    current_ = &root;
    while (!at_end()) {
      skip_whitespace_and_comments(true);
      if (at_end()) break;
      if (peek() == '[') {
        parse_header(root);
      } else {
        parse_key_value(*current_);
      }
    }
    return root;
  }

 private:
  [[noreturn]] void error(const std::string& message) const {
    fail(ErrorCode::parse_error, "line " + std::to_string(line_) + ": " + message);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_whitespace_and_comments(bool cross_newlines) {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '\n' && cross_newlines) {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (at_end() || peek() != c) error(std::string("expected '") + c + "'");
    advance();
  }

  std::string parse_key() {
    skip_whitespace_and_comments(false);
    if (at_end()) error("expected key");
    if (peek() == '"') return parse_string();
    std::string key;
    while (!at_end()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        key.push_back(advance());
      } else {
        break;
      }
    }
    if (key.empty()) error("expected key");
    return key;
  }

  std::vector<std::string> parse_dotted_key() {
    std::vector<std::string> parts{parse_key()};
    skip_whitespace_and_comments(false);
    while (!at_end() && peek() == '.') {
      advance();
      parts.push_back(parse_key());
      skip_whitespace_and_comments(false);
    }
    return parts;
  }

  void parse_header(Value& root) {
    expect('[');
    bool array_of_tables = false;
    if (!at_end() && peek() == '[') {
      advance();
      array_of_tables = true;
    }
    std::vector<std::string> path = parse_dotted_key();
    expect(']');
    if (array_of_tables) expect(']');

    Value* node = &root;
    for (size_t i = 0; i < path.size(); ++i) {
      bool last = i + 1 == path.size();
      Value::Table& tab = node->table();
      auto it = tab.find(path[i]);
      if (last && array_of_tables) {
        if (it == tab.end()) it = tab.emplace(path[i], Value(Value::Array{})).first;
        if (!it->second.is_array()) error("'" + path[i] + "' is not an array of tables");
        it->second.array().emplace_back(Value::Table{});
        node = &it->second.array().back();
      } else if (it != tab.end() && it->second.is_array()) {
        // A header below [[a]] attaches to the most recent element of a.
        if (it->second.array().empty()) error("empty table array '" + path[i] + "'");
        node = &it->second.array().back();
      } else {
        if (it == tab.end()) it = tab.emplace(path[i], Value(Value::Table{})).first;
        if (!it->second.is_table()) error("'" + path[i] + "' is not a table");
        node = &it->second;
      }
    }
    current_ = node;
  }

  void parse_key_value(Value& scope) {
    std::vector<std::string> path = parse_dotted_key();
    skip_whitespace_and_comments(false);
    expect('=');
    Value value = parse_value();

    Value* node = &scope;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      Value::Table& tab = node->table();
      auto it = tab.find(path[i]);
      if (it == tab.end()) it = tab.emplace(path[i], Value(Value::Table{})).first;
      if (!it->second.is_table()) error("'" + path[i] + "' is not a table");
      node = &it->second;
    }
    Value::Table& tab = node->table();
    if (tab.count(path.back()) > 0) error("duplicate key '" + path.back() + "'");
    tab.emplace(path.back(), std::move(value));
  }

  Value parse_value() {
    skip_whitespace_and_comments(false);
    if (at_end()) error("expected value");
    char c = peek();
    if (c == '"') return Value(parse_string());
    if (c == '[') return parse_array();
    if (c == 't' || c == 'f') return parse_boolean();
    return parse_number();
  }

  std::string parse_string() {
    expect('"');
    std::string out;
    while (!at_end() && peek() != '"') {
      char c = advance();
      if (c == '\\') {
        if (at_end()) error("unterminated escape");
        char esc = advance();
        switch (esc) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: error("unsupported escape sequence");
        }
      } else if (c == '\n') {
        error("newline in string");
      } else {
        out.push_back(c);
      }
    }
    expect('"');
    return out;
  }

  Value parse_array() {
    expect('[');
    Value::Array items;
    skip_whitespace_and_comments(true);
    while (!at_end() && peek() != ']') {
      items.push_back(parse_value());
      skip_whitespace_and_comments(true);
      if (!at_end() && peek() == ',') {
        advance();
        skip_whitespace_and_comments(true);
      }
    }
    expect(']');
    return Value(std::move(items));
  }

  Value parse_boolean() {
    if (text_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return Value(true);
    }
    if (text_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return Value(false);
    }
    error("expected boolean");
  }

  Value parse_number() {
    size_t start = pos_;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
          c == 'e' || c == 'E' || c == '_') {
        advance();
      } else {
        break;
      }
    }
    std::string token = text_.substr(start, pos_ - start);
    std::erase(token, '_');
    if (token.empty()) error("expected number");
    bool is_float = token.find_first_of(".eE") != std::string::npos;
    if (!is_float) {
      int64_t ival = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), ival);
      if (ec == std::errc() && ptr == token.data() + token.size()) return Value(ival);
    }
    try {
      size_t used = 0;
      double dval = std::stod(token, &used);
      if (used != token.size()) error("bad number '" + token + "'");
      return Value(dval);
    } catch (const std::exception&) {
      error("bad number '" + token + "'");
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  Value* current_ = nullptr;
};

}  // namespace

Value parse(const std::string& text) { return Parser(text).run(); }

Value parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) {
      fail(ErrorCode::parse_error, path + ": " + e.what());
    }
    throw;
  }
}

}  // namespace robosym::toml
