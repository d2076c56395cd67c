#include "instance.hpp"

#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace kissing::cli {

namespace {

using json = nlohmann::json;

// Character iterator that records how far the lexer has read.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, const char* base, std::size_t* consumed)
      : p_(p), base_(base), consumed_(consumed) {}

  reference operator*() const {
    *consumed_ = static_cast<std::size_t>(p_ - base_) + 1;
    return *p_;
  }
  CountingIterator& operator++() {
    ++p_;
    return *this;
  }
  CountingIterator operator++(int) {
    auto old = *this;
    ++p_;
    return old;
  }
  bool operator==(const CountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const CountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_ = nullptr;
  const char* base_ = nullptr;
  std::size_t* consumed_ = nullptr;
};

struct Node {
  enum class Kind { Null, Bool, Integer, Float, String, Array, Object };
  Kind kind = Kind::Null;
  std::size_t offset = 0;  // byte offset of the first character of the token
  std::string text;        // string contents, float lexeme, or key
  std::int64_t integer = 0;
  bool integerFits = true;
  std::vector<Node> items;
  std::vector<std::pair<Node, Node>> fields;  // key node (kind String), value
};

class Source {
 public:
  Source(const std::string& text, std::string name) : text_(text), name_(std::move(name)) {}

  [[noreturn]] void fail(std::size_t offset, const std::string& message) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(name_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + message);
  }

  const std::string& text() const { return text_; }

 private:
  const std::string& text_;
  std::string name_;
};

class TreeBuilder {
 public:
  using number_integer_t = json::number_integer_t;
  using number_unsigned_t = json::number_unsigned_t;
  using number_float_t = json::number_float_t;
  using string_t = json::string_t;
  using binary_t = json::binary_t;

  TreeBuilder(const Source& src, const std::size_t& consumed) : src_(src), consumed_(consumed) {}

  bool null() { return value(leaf(Node::Kind::Null, literal_start(4))); }
  bool boolean(bool v) { return value(leaf(Node::Kind::Bool, literal_start(v ? 4 : 5))); }
  bool number_integer(number_integer_t v) {
    Node n = leaf(Node::Kind::Integer, number_start());
    n.integer = v;
    return value(std::move(n));
  }
  bool number_unsigned(number_unsigned_t v) {
    Node n = leaf(Node::Kind::Integer, number_start());
    n.integerFits = v <= static_cast<number_unsigned_t>(INT64_MAX);
    n.integer = n.integerFits ? static_cast<std::int64_t>(v) : 0;
    return value(std::move(n));
  }
  bool number_float(number_float_t, const string_t& lexeme) {
    Node n = leaf(Node::Kind::Float, number_start());
    n.text = lexeme;
    return value(std::move(n));
  }
  bool string(string_t& v) {
    Node n = leaf(Node::Kind::String, string_start());
    n.text = v;
    return value(std::move(n));
  }
  bool binary(binary_t&) { return false; }
  bool start_object(std::size_t) {
    stack_.push_back(leaf(Node::Kind::Object, consumed_ - 1));
    return true;
  }
  bool key(string_t& k) {
    Node n = leaf(Node::Kind::String, string_start());
    n.text = k;
    pendingKey_.push_back(std::move(n));
    return true;
  }
  bool end_object() { return close(); }
  bool start_array(std::size_t) {
    stack_.push_back(leaf(Node::Kind::Array, consumed_ - 1));
    return true;
  }
  bool end_array() { return close(); }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    std::string msg = ex.what();
    const auto at = msg.find("syntax error");
    if (at != std::string::npos) msg = msg.substr(at);
    src_.fail(position == 0 ? 0 : position - 1, msg);
  }

  Node take_root() { return std::move(root_); }

 private:
  Node leaf(Node::Kind kind, std::size_t offset) const {
    Node n;
    n.kind = kind;
    n.offset = offset;
    return n;
  }

  std::size_t literal_start(std::size_t len) const { return consumed_ >= len ? consumed_ - len : 0; }

  std::size_t number_start() const {
    const std::string& t = src_.text();
    auto is_num = [](char c) {
      return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' || c == 'e' || c == 'E';
    };
    std::size_t end = std::min(consumed_, t.size());
    while (end > 0 && !is_num(t[end - 1])) --end;
    std::size_t start = end;
    while (start > 0 && is_num(t[start - 1])) --start;
    return start;
  }

  std::size_t string_start() const {
    const std::string& t = src_.text();
    if (consumed_ < 2) return 0;
    for (std::size_t i = consumed_ - 1; i-- > 0;) {
      if (t[i] != '"') continue;
      std::size_t slashes = 0;
      while (i > slashes && t[i - 1 - slashes] == '\\') ++slashes;
      if (slashes % 2 == 0) return i;
    }
    return 0;
  }

  bool value(Node n) {
    if (stack_.empty()) {
      root_ = std::move(n);
    } else if (stack_.back().kind == Node::Kind::Array) {
      stack_.back().items.push_back(std::move(n));
    } else {
      stack_.back().fields.emplace_back(std::move(pendingKey_.back()), std::move(n));
      pendingKey_.pop_back();
    }
    return true;
  }

  bool close() {
    Node n = std::move(stack_.back());
    stack_.pop_back();
    return value(std::move(n));
  }

  const Source& src_;
  const std::size_t& consumed_;
  std::vector<Node> stack_;
  std::vector<Node> pendingKey_;
  Node root_;
};

const char* kind_name(Node::Kind k) {
  switch (k) {
    case Node::Kind::Null: return "null";
    case Node::Kind::Bool: return "a boolean";
    case Node::Kind::Integer: return "an integer";
    case Node::Kind::Float: return "a floating-point number";
    case Node::Kind::String: return "a string";
    case Node::Kind::Array: return "an array";
    case Node::Kind::Object: return "an object";
  }
  return "?";
}

Rational coordinate(const Source& src, const Node& n) {
  switch (n.kind) {
    case Node::Kind::Integer:
      if (!n.integerFits) src.fail(n.offset, "integer out of range; write it as a \"num/den\" string");
      return Rational(static_cast<long>(n.integer));
    case Node::Kind::String:
      try {
        return Rational::parse(n.text);
      } catch (const ParseError& e) {
        // +1 skips the opening quote; column() is 1-based within the string.
        src.fail(n.offset + e.column(), "malformed rational \"" + n.text + "\": " + e.what());
      }
    case Node::Kind::Float: {
      const bool integral = n.text.find_first_of(".eE") == std::string::npos;
      src.fail(n.offset, integral ? "integer out of range; write it as a \"num/den\" string"
                                  : "floating-point coordinate " + n.text +
                                        " not allowed; write it as a \"num/den\" string");
    }
    default:
      src.fail(n.offset, std::string("coordinate must be an integer or \"num/den\" string, got ") +
                             kind_name(n.kind));
  }
}

std::vector<RationalVector> point_list(const Source& src, const Node& n, const std::string& name) {
  if (n.kind != Node::Kind::Array) src.fail(n.offset, name + " must be an array of points");
  std::vector<RationalVector> out;
  for (const Node& p : n.items) {
    if (p.kind != Node::Kind::Array) src.fail(p.offset, "each point of " + name + " must be an array");
    if (p.items.empty()) src.fail(p.offset, "points need at least one coordinate");
    RationalVector v(p.items.size());
    for (std::size_t i = 0; i < p.items.size(); ++i) v[i] = coordinate(src, p.items[i]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text, const std::string& source, InstanceRules rules) {
  Source src(text, source);
  std::size_t consumed = 0;
  TreeBuilder builder(src, consumed);
  CountingIterator first(text.data(), text.data(), &consumed);
  CountingIterator last(text.data() + text.size(), text.data(), &consumed);
  json::sax_parse(first, last, &builder);
  const Node root = builder.take_root();
  if (root.kind != Node::Kind::Object) src.fail(root.offset, "instance must be a JSON object");

  Instance inst;
  const Node* pNode = nullptr;
  const Node* qNode = nullptr;
  const Node* kNode = nullptr;
  for (const auto& [key, val] : root.fields) {
    const Node** slot = key.text == "P" ? &pNode : key.text == "Q" ? &qNode : key.text == "k" ? &kNode : nullptr;
    if (!slot) src.fail(key.offset, "unknown key \"" + key.text + "\" (expected k, P, Q)");
    if (*slot) src.fail(key.offset, "duplicate key \"" + key.text + "\"");
    *slot = &val;
  }
  if (kNode) {
    if (kNode->kind != Node::Kind::Integer || !kNode->integerFits || kNode->integer < 1)
      src.fail(kNode->offset, "k must be a positive integer");
    inst.k = kNode->integer;
  }
  if (!pNode) src.fail(root.offset, "missing key \"P\"");
  inst.P = point_list(src, *pNode, "P");
  if (inst.P.empty()) src.fail(pNode->offset, "P needs at least one point");
  if (qNode) {
    inst.Q = point_list(src, *qNode, "Q");
    if (inst.Q.empty() && rules.requireQ) src.fail(qNode->offset, "Q needs at least one point");
  } else if (rules.requireQ) {
    src.fail(root.offset, "missing key \"Q\"");
  }

  const std::size_t d = inst.P.front().dim();
  auto check = [&](const std::vector<RationalVector>& pts, const Node& node) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Node& pn = node.items[i];
      if (pts[i].dim() != d)
        src.fail(pn.offset, "point has dimension " + std::to_string(pts[i].dim()) + ", expected " +
                                std::to_string(d));
      if (!inst.k) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const Rational& c = pts[i][j];
        if (!c.is_integer() || c.sign() < 0 || c > Rational(static_cast<long>(*inst.k)))
          src.fail(pn.items[j].offset,
                   "coordinate " + c.to_string() + " is not an integer in [0," + std::to_string(*inst.k) + "]");
      }
    }
  };
  check(inst.P, *pNode);
  if (qNode) check(inst.Q, *qNode);
  return inst;
}

Instance read_instance(const std::string& path, InstanceRules rules) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open instance file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path, rules);
}

namespace {

std::string format_coordinate(const Rational& c) {
  if (c.is_integer() && c.numerator().fits_slong_p()) return c.to_string();
  return "\"" + c.to_string() + "\"";
}

void format_points(std::ostringstream& os, const std::vector<RationalVector>& pts) {
  os << "[";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << (i ? ",\n    [" : "\n    [");
    for (std::size_t j = 0; j < pts[i].dim(); ++j) os << (j ? ", " : "") << format_coordinate(pts[i][j]);
    os << "]";
  }
  os << (pts.empty() ? "]" : "\n  ]");
}

}  // namespace

std::string format_instance(const Instance& inst) {
  std::ostringstream os;
  os << "{\n";
  if (inst.k) os << "  \"k\": " << *inst.k << ",\n";
  os << "  \"P\": ";
  format_points(os, inst.P);
  os << ",\n  \"Q\": ";
  format_points(os, inst.Q);
  os << "\n}\n";
  return os.str();
}

void write_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path + ": cannot write instance file");
  out << format_instance(inst);
  if (!out) throw InputError(path + ": write failed");
}

}  // namespace kissing::cli
