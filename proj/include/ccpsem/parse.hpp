#ifndef CCPSEM_PARSE_HPP
#define CCPSEM_PARSE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ccpsem/term.hpp"
#include "ccpsem/type.hpp"

namespace ccpsem {

// Typed constants over a set of basic types. Schematic constants (such as
// the generalised 'and') carry a type pattern instead of a type.
class Signature {
public:
  void add_basic(const std::string& name);
  void add_abbrev(const std::string& name, const Type& expansion);
  // Throws Error on a duplicate symbol.
  void add_constant(const std::string& name, const Type& type);
  void add_schema(const std::string& name, const Type& pattern);

  const std::set<std::string>& basic_types() const { return basics_; }
  const std::map<std::string, Type>& constants() const { return constants_; }
  const std::map<std::string, Type>& schemas() const { return schemas_; }
  const TypeAbbrevs& abbrevs() const { return abbrevs_; }

  const Type* find_constant(const std::string& name) const;
  const Type* find_schema(const std::string& name) const;
  bool has_symbol(const std::string& name) const;

  TypeScope type_scope() const;
  Type parse_type(std::string_view text) const;

  // Names of constants whose types mention undeclared basic types.
  std::vector<std::string> undeclared_basics() const;

private:
  std::set<std::string> basics_;
  TypeAbbrevs abbrevs_;
  std::map<std::string, Type> constants_;
  std::map<std::string, Type> schemas_;
};

// Line oriented: `basictype <name>...`, `constant <name> : <type>`,
// `typedef <Name> = <type>`, `schema <name> : <pattern>`; '#' starts a comment.
Signature parse_signature(std::string_view text);
Signature load_signature(const std::string& path);

// Parenthesized prefix syntax before name resolution.
struct SExpr {
  bool atom = true;
  std::string text;
  std::vector<SExpr> items;
  std::size_t position = 0;
};

SExpr parse_sexpr(std::string_view text);
std::string to_string(const SExpr& e);

struct FreeVariable {
  std::string name;
  Type type;
};

// Resolves names against bound variables, then free variables, then the
// signature, and types the result. Binders need an annotation unless the
// expected type or the application context determines them.
Term elaborate(const SExpr& e, const Signature& sig,
               const std::optional<Type>& expected = std::nullopt,
               const std::vector<FreeVariable>& free = {});

// Term syntax: application (f a ...), abstraction (lam x:T ... body); '#'
// starts a comment.
Term parse_term(std::string_view text, const Signature& sig,
                const std::optional<Type>& expected = std::nullopt,
                const std::vector<FreeVariable>& free = {});

// infer_type plus a check that every constant is declared in sig with the
// type it carries (schematic constants must instantiate their pattern).
Type infer_type(const Term& t, const Signature& sig);

std::string read_file(const std::string& path);

}  // namespace ccpsem

#endif
