#ifndef GSTOWER_GROUP_WORD_HPP
#define GSTOWER_GROUP_WORD_HPP

// Words in the generators of a free pro-p group, with a small text syntax:
//
//   word := term+
//   term := atom ('^' integer)?
//   atom := name | '1' | '(' word ')' | '[' word ',' word ']'
//
// Terms are separated by whitespace (or juxtaposed where unambiguous).
// '1' denotes the identity. The commutator convention is [x,y] = x^-1 y^-1 x y.

#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gstower/error.hpp"

namespace gstower {

class GroupWord {
 public:
  enum class Kind { Generator, Inverse, Power, Commutator, Product };

  // The identity (empty product).
  GroupWord() : node_(std::make_shared<const Node>(Node{Kind::Product, 0, 0, {}})) {}

  static GroupWord identity() { return GroupWord(); }

  static GroupWord generator(unsigned index) {
    return GroupWord(Node{Kind::Generator, index, 0, {}});
  }

  static GroupWord inverse(GroupWord w) { return GroupWord(Node{Kind::Inverse, 0, 0, {std::move(w)}}); }

  static GroupWord power(GroupWord w, std::int64_t exponent) {
    return GroupWord(Node{Kind::Power, 0, exponent, {std::move(w)}});
  }

  static GroupWord commutator(GroupWord x, GroupWord y) {
    return GroupWord(Node{Kind::Commutator, 0, 0, {std::move(x), std::move(y)}});
  }

  static GroupWord product(std::vector<GroupWord> factors) {
    if (factors.size() == 1) return std::move(factors.front());
    return GroupWord(Node{Kind::Product, 0, 0, std::move(factors)});
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is_identity() const noexcept { return kind() == Kind::Product && node_->children.empty(); }

  unsigned generator_index() const { return node_->index; }
  std::int64_t exponent() const { return node_->exponent; }
  const GroupWord& operand() const { return node_->children.at(0); }
  const GroupWord& left() const { return node_->children.at(0); }
  const GroupWord& right() const { return node_->children.at(1); }
  std::span<const GroupWord> factors() const { return node_->children; }

  // One more than the largest generator index used (0 for the identity).
  unsigned generator_bound() const {
    unsigned bound = kind() == Kind::Generator ? node_->index + 1 : 0;
    for (const GroupWord& c : node_->children) bound = std::max(bound, c.generator_bound());
    return bound;
  }

  friend GroupWord operator*(const GroupWord& a, const GroupWord& b) {
    std::vector<GroupWord> f;
    auto append = [&f](const GroupWord& w) {
      if (w.kind() == Kind::Product)
        f.insert(f.end(), w.factors().begin(), w.factors().end());
      else
        f.push_back(w);
    };
    append(a);
    append(b);
    return product(std::move(f));
  }

 private:
  struct Node {
    Kind kind;
    unsigned index;
    std::int64_t exponent;
    std::vector<GroupWord> children;
  };

  explicit GroupWord(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  std::shared_ptr<const Node> node_;
};

inline GroupWord word_power(const GroupWord& w, std::int64_t k) { return GroupWord::power(w, k); }
inline GroupWord word_commutator(const GroupWord& x, const GroupWord& y) {
  return GroupWord::commutator(x, y);
}

namespace detail {

class WordParser {
 public:
  WordParser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  GroupWord parse() {
    skip_space();
    if (at_end()) return GroupWord::identity();
    GroupWord w = word();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return w;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool starts_atom(char c) {
    return c == '(' || c == '[' || c == '1' || c == '_' || std::isalpha(static_cast<unsigned char>(c));
  }

  GroupWord word() {
    std::vector<GroupWord> terms;
    skip_space();
    if (!starts_atom(peek())) {
      if (at_end()) throw ParseError("expected a term but reached end of input", pos_);
      throw ParseError(std::string("expected a term, found '") + peek() + "'", pos_);
    }
    while (true) {
      skip_space();
      if (at_end() || !starts_atom(peek())) break;
      terms.push_back(term());
    }
    return GroupWord::product(std::move(terms));
  }

  GroupWord term() {
    GroupWord a = atom();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      return GroupWord::power(std::move(a), integer());
    }
    return a;
  }

  std::int64_t integer() {
    std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected an integer exponent", pos_);
    std::uint64_t magnitude = 0;
    constexpr std::uint64_t limit = std::numeric_limits<std::int64_t>::max();
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      magnitude = magnitude * 10 + static_cast<unsigned>(peek() - '0');
      if (magnitude > limit) throw ParseError("exponent out of range", start);
      ++pos_;
    }
    return negative ? -static_cast<std::int64_t>(magnitude) : static_cast<std::int64_t>(magnitude);
  }

  GroupWord atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      GroupWord w = word();
      skip_space();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      GroupWord x = word();
      skip_space();
      expect(',');
      GroupWord y = word();
      skip_space();
      expect(']');
      return GroupWord::commutator(std::move(x), std::move(y));
    }
    if (c == '1') {
      ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("unexpected integer; only '1' may stand for the identity", pos_ - 1);
      return GroupWord::identity();
    }
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return GroupWord::generator(static_cast<unsigned>(i));
    throw ParseError("unknown generator '" + std::string(name) + "'", start);
  }

  void expect(char c) {
    if (peek() != c) {
      if (at_end()) throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
      throw ParseError(std::string("expected '") + c + "', found '" + peek() + "'", pos_);
    }
    ++pos_;
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Empty (or all-whitespace) text parses to the identity word.
inline GroupWord parse_word(std::string_view text, std::span<const std::string> generator_names) {
  for (const std::string& n : generator_names) {
    bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
    for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) throw ParameterError("invalid generator name '" + n + "'");
  }
  return detail::WordParser(text, generator_names).parse();
}

inline std::string print_word(const GroupWord& w, std::span<const std::string> names);

namespace detail {

inline std::string print_atom(const GroupWord& w, std::span<const std::string> names) {
  switch (w.kind()) {
    case GroupWord::Kind::Generator:
    case GroupWord::Kind::Commutator:
      return print_word(w, names);
    case GroupWord::Kind::Product:
      if (w.is_identity()) return "1";
      [[fallthrough]];
    default:
      return "(" + print_word(w, names) + ")";
  }
}

}  // namespace detail

// Canonical printer; its output parses back to an equal group element.
inline std::string print_word(const GroupWord& w, std::span<const std::string> names) {
  switch (w.kind()) {
    case GroupWord::Kind::Generator:
      if (w.generator_index() >= names.size())
        throw ParameterError("no name for generator " + std::to_string(w.generator_index()));
      return names[w.generator_index()];
    case GroupWord::Kind::Inverse:
      return detail::print_atom(w.operand(), names) + "^-1";
    case GroupWord::Kind::Power:
      return detail::print_atom(w.operand(), names) + "^" + std::to_string(w.exponent());
    case GroupWord::Kind::Commutator:
      return "[" + print_word(w.left(), names) + "," + print_word(w.right(), names) + "]";
    case GroupWord::Kind::Product: {
      if (w.is_identity()) return "1";
      std::string out;
      for (const GroupWord& f : w.factors()) {
        if (!out.empty()) out += ' ';
        out += f.kind() == GroupWord::Kind::Product ? detail::print_atom(f, names) : print_word(f, names);
      }
      return out;
    }
  }
  return {};
}

// Names a, b, c, ... for d generators.
inline std::vector<std::string> default_generator_names(unsigned d) {
  std::vector<std::string> names;
  for (unsigned i = 0; i < d; ++i) names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i));
  return names;
}

}  // namespace gstower

#endif  // GSTOWER_GROUP_WORD_HPP
