#ifndef CCPSEM_TYPE_HPP
#define CCPSEM_TYPE_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ccpsem {

// Simple type over a set of basic types: either Basic(name) or an arrow
// (domain codomain). Immutable, cheap to copy, compared structurally.
class Type {
public:
  static Type basic(std::string name);
  static Type arrow(Type domain, Type codomain);
  // args[0] -> args[1] -> ... -> result
  static Type arrows(const std::vector<Type>& args, Type result);

  bool is_basic() const;
  bool is_arrow() const { return !is_basic(); }

  const std::string& name() const;
  const Type& domain() const;
  const Type& codomain() const;

  // Argument types and final basic result of an arrow chain.
  std::vector<Type> arguments() const;
  const Type& result() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  friend bool operator<(const Type& a, const Type& b);

private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Named shorthands such as U = (M M), used both when parsing and rendering.
using TypeAbbrevs = std::vector<std::pair<std::string, Type>>;

struct TypeScope {
  std::set<std::string> basics;
  TypeAbbrevs abbrevs;
  // Accept undeclared single-letter basic types.
  bool open = false;

  const Type* find_abbrev(std::string_view name) const;
};

// Right-associated rendering with outer parentheses dropped: (e(st)) prints
// as "est". Types mentioning multi-character basic names are rendered with
// spaces, e.g. "(foo bar) baz".
std::string to_string(const Type& t);
std::string to_string(const Type& t, const TypeAbbrevs& abbrevs);

// Grammar: type := item+ (right-associated), item := NAME | '(' type ')'.
// A NAME that is not a declared basic type or abbreviation is read as a
// juxtaposition of single-letter types, so "DDS" == "(D (D S))".
Type parse_type(std::string_view text, const TypeScope& scope);

void collect_basics(const Type& t, std::set<std::string>& out);

// Type patterns for schematic constants. The basic type "*" stands for a
// sequence of argument types, so the pattern (*S)(*S)(*S) instantiated at
// D,D is (DDS)(DDS)(DDS).
inline constexpr const char* kSequenceVariable = "*";

Type instantiate_pattern(const Type& pattern, const std::vector<Type>& alpha);

// The sequence binding under which pattern becomes concrete, if any.
std::optional<std::vector<Type>> match_pattern(const Type& pattern,
                                               const Type& concrete);

}  // namespace ccpsem

#endif
