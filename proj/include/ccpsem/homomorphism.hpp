#ifndef CCPSEM_HOMOMORPHISM_HPP
#define CCPSEM_HOMOMORPHISM_HPP

#include <map>
#include <string>
#include <vector>

#include "ccpsem/parse.hpp"
#include "ccpsem/term.hpp"
#include "ccpsem/type.hpp"

namespace ccpsem {

// Determined by its values on the source basic types; extended to arrows
// by h(ab) = h(a)h(b).
class TypeHom {
public:
  void map(const std::string& basic, const Type& image);
  const std::map<std::string, Type>& basic_map() const { return basic_map_; }
  bool maps(const std::string& basic) const { return basic_map_.count(basic) > 0; }

private:
  std::map<std::string, Type> basic_map_;
};

// Throws UnmappedBasicType.
Type apply_type_hom(const TypeHom& h, const Type& t);

// Polymorphic lexical entry. Binders and arguments written X* in the
// template stand for the sequence X1 ... Xn at arity n.
struct SchemaEntry {
  std::string constant;
  Type type_pattern;
  SExpr term_template;
};

struct LexiconEntry {
  std::string constant;
  Type abstract_type;
  Term image;
};

struct ValidationIssue {
  std::string constant;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> failures;
  bool ok() const { return failures.empty(); }
};

// A term homomorphism seed: images of the abstract constants plus the type
// homomorphism they are typed by. Immutable after loading.
class Lexicon {
public:
  std::string name;
  TypeHom typehom;
  Signature source;  // abstract constants, schemas included
  Signature target;  // object constants
  std::map<std::string, LexiconEntry> entries;
  std::map<std::string, SchemaEntry> schemas;
  std::map<std::string, std::string> aliases;   // e.g. but -> and
  std::map<std::string, std::string> nominals;  // verb -> agent noun
  std::vector<ValidationIssue> load_issues;

  // Adds an entry; the image is elaborated against typehom(type). Problems
  // are recorded in load_issues rather than thrown.
  void add_entry(const std::string& constant, const Type& abstract_type,
                 const std::string& image_text);
  void add_entry(const std::string& constant, const Type& abstract_type,
                 const Term& image);
  void add_schema(const std::string& constant, const Type& pattern,
                  const std::string& template_text);
  void add_alias(const std::string& alias, const std::string& target_name);

  // Image of an abstract constant occurrence (schema instances included).
  Term image_of(const Term& constant) const;
  std::string resolve_alias(const std::string& name) const;
};

struct SchemaInstance {
  Type abstract_type;
  Term image;
};

SchemaInstance instantiate_schema(const SchemaEntry& s, const std::vector<Type>& alpha,
                                  const TypeHom& h, const Signature& target);

// Line oriented format:
//   lexicon <name>
//   basictype <object basic>...        typedef <Name> = <object type>
//   hom <Basic> -> <Type>
//   object <name> : <object type>
//   entry <constant> : <abstract type> => <object term>
//   schema <constant> : <pattern> => <template>
//   alias <name> <constant>            nominal <verb> <noun>
Lexicon parse_lexicon(std::string_view text, const std::string& name = {});
Lexicon load_lexicon(const std::string& path);

// Structural image: constants to their entries, variables x:T to x:h(T).
// Throws MissingEntry for constants without an entry or schema.
Term apply_term_hom(const Lexicon& lex, const Term& t);

ValidationReport validate_lexicon(const Lexicon& lex);

}  // namespace ccpsem

#endif
