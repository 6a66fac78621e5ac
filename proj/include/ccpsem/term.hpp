#ifndef CCPSEM_TERM_HPP
#define CCPSEM_TERM_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ccpsem/type.hpp"

namespace ccpsem {

// Simply typed lambda term. Constants and variables carry their types, so an
// elaborated term can be type-checked without its signature. Immutable and
// shared; copying a Term copies a pointer.
class Term {
public:
  enum class Kind { Constant, Variable, Application, Abstraction };

  static Term constant(std::string name, Type type);
  static Term variable(std::string name, Type type);
  static Term application(Term function, Term argument);
  static Term abstraction(std::string var, Type var_type, Term body);
  // f a1 ... an, left associated
  static Term apply(Term function, const std::vector<Term>& args);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_application() const { return kind() == Kind::Application; }
  bool is_abstraction() const { return kind() == Kind::Abstraction; }

  // Constant or variable name; bound variable name of an abstraction.
  const std::string& name() const;
  // Constant or variable type; bound variable type of an abstraction.
  const Type& type() const;
  const Term& function() const;
  const Term& argument() const;
  const Term& body() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Head and arguments of an application spine: f a1 ... an.
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine unwind(const Term& t);

std::set<std::string> free_variables(const Term& t);
bool occurs_free(const std::string& name, const Term& t);

// Types the term bottom-up from the annotations it carries. Throws
// TypeMismatch on a non-arrow head, an argument of the wrong type, or a
// variable occurrence whose type disagrees with its binder.
Type infer_type(const Term& t);

// Every binder binds exactly one occurrence.
bool is_linear(const Term& t);

bool alpha_equivalent(const Term& a, const Term& b);

// Capture-avoiding [value/name]body.
Term substitute(const Term& body, const std::string& name, const Term& value);

std::size_t term_size(const Term& t);

// Re-parseable prefix syntax: (f a b), (lam x:T body).
std::string to_string(const Term& t, const TypeAbbrevs& abbrevs = {});
// Display syntax: λc.G(smoke, woman, F(tall, woman, c)), with the tensor
// toolkit written infix.
std::string pretty(const Term& t);

// Constants occurring in t, in left-to-right order, with repetitions.
std::vector<Term> constants_of(const Term& t);

}  // namespace ccpsem

#endif
