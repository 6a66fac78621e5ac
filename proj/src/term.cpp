#include "ccpsem/term.hpp"

#include <map>
#include <optional>
#include <utility>

#include "ccpsem/errors.hpp"

namespace ccpsem {

struct Term::Node {
  Kind kind;
  std::string name;
  std::optional<Type> type;
  std::optional<Term> left;   // function or body
  std::optional<Term> right;  // argument
};

Term Term::constant(std::string name, Type type) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Constant, std::move(name), std::move(type), {}, {}}));
}

Term Term::variable(std::string name, Type type) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Variable, std::move(name), std::move(type), {}, {}}));
}

Term Term::application(Term function, Term argument) {
  return Term(std::make_shared<const Node>(Node{
      Kind::Application, {}, {}, std::move(function), std::move(argument)}));
}

Term Term::abstraction(std::string var, Type var_type, Term body) {
  return Term(std::make_shared<const Node>(Node{
      Kind::Abstraction, std::move(var), std::move(var_type), std::move(body), {}}));
}

Term Term::apply(Term function, const std::vector<Term>& args) {
  for (const Term& a : args) function = application(function, a);
  return function;
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Type& Term::type() const { return *node_->type; }
const Term& Term::function() const { return *node_->left; }
const Term& Term::argument() const { return *node_->right; }
const Term& Term::body() const { return *node_->left; }

Spine unwind(const Term& t) {
  std::vector<Term> args;
  const Term* cur = &t;
  while (cur->is_application()) {
    args.push_back(cur->argument());
    cur = &cur->function();
  }
  return {*cur, std::vector<Term>(args.rbegin(), args.rend())};
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return;
    case Term::Kind::Variable:
      for (const auto& b : bound)
        if (b == t.name()) return;
      out.insert(t.name());
      return;
    case Term::Kind::Application:
      collect_free(t.function(), bound, out);
      collect_free(t.argument(), bound, out);
      return;
    case Term::Kind::Abstraction:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
  }
}

Type infer(const Term& t, std::vector<std::pair<std::string, Type>>& env) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return t.type();
    case Term::Kind::Variable:
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first != t.name()) continue;
        if (it->second != t.type())
          throw TypeMismatch(to_string(it->second), to_string(t.type()),
                             "occurrence of bound variable " + t.name());
        return it->second;
      }
      return t.type();
    case Term::Kind::Application: {
      Type f = infer(t.function(), env);
      Type a = infer(t.argument(), env);
      if (f.is_basic())
        throw TypeMismatch("an arrow type", to_string(f),
                           "head of application " + to_string(t));
      if (f.domain() != a)
        throw TypeMismatch(to_string(f.domain()), to_string(a),
                           "argument of " + to_string(t.function()));
      return f.codomain();
    }
    case Term::Kind::Abstraction: {
      env.emplace_back(t.name(), t.type());
      Type body = infer(t.body(), env);
      env.pop_back();
      return Type::arrow(t.type(), body);
    }
  }
  return t.type();
}

std::size_t count_occurrences(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return 0;
    case Term::Kind::Variable:
      return t.name() == name ? 1 : 0;
    case Term::Kind::Application:
      return count_occurrences(t.function(), name) +
             count_occurrences(t.argument(), name);
    case Term::Kind::Abstraction:
      return t.name() == name ? 0 : count_occurrences(t.body(), name);
  }
  return 0;
}

using Scope = std::vector<std::string>;

// Index of name counting from the innermost binder, or -1 when free.
long depth_of(const Scope& scope, const std::string& name) {
  for (std::size_t i = scope.size(); i-- > 0;)
    if (scope[i] == name) return static_cast<long>(scope.size() - 1 - i);
  return -1;
}

bool alpha_eq(const Term& a, const Term& b, Scope& sa, Scope& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Constant:
      return a.name() == b.name() && a.type() == b.type();
    case Term::Kind::Variable: {
      long da = depth_of(sa, a.name());
      long db = depth_of(sb, b.name());
      if (da != db) return false;
      if (da < 0) return a.name() == b.name() && a.type() == b.type();
      return true;
    }
    case Term::Kind::Application:
      return alpha_eq(a.function(), b.function(), sa, sb) &&
             alpha_eq(a.argument(), b.argument(), sa, sb);
    case Term::Kind::Abstraction: {
      if (a.type() != b.type()) return false;
      sa.push_back(a.name());
      sb.push_back(b.name());
      bool eq = alpha_eq(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return eq;
    }
  }
  return false;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base + "'";
  while (avoid.count(candidate)) candidate += "'";
  return candidate;
}

Term subst(const Term& body, const std::string& name, const Term& value,
           const std::set<std::string>& value_free) {
  switch (body.kind()) {
    case Term::Kind::Constant:
      return body;
    case Term::Kind::Variable:
      return body.name() == name ? value : body;
    case Term::Kind::Application: {
      Term f = subst(body.function(), name, value, value_free);
      Term a = subst(body.argument(), name, value, value_free);
      if (f.same_node(body.function()) && a.same_node(body.argument())) return body;
      return Term::application(f, a);
    }
    case Term::Kind::Abstraction: {
      if (body.name() == name) return body;
      if (!occurs_free(name, body.body())) return body;
      if (value_free.count(body.name())) {
        std::set<std::string> avoid = value_free;
        for (const auto& v : free_variables(body.body())) avoid.insert(v);
        avoid.insert(name);
        std::string renamed = fresh_name(body.name(), avoid);
        Term inner = subst(body.body(), body.name(),
                           Term::variable(renamed, body.type()), {renamed});
        return Term::abstraction(renamed, body.type(),
                                 subst(inner, name, value, value_free));
      }
      return Term::abstraction(body.name(), body.type(),
                               subst(body.body(), name, value, value_free));
    }
  }
  return body;
}

std::string annotation(const Type& t, const TypeAbbrevs& abbrevs) {
  std::string s = to_string(t, abbrevs);
  if (s.find(' ') != std::string::npos) return "(" + s + ")";
  return s;
}

const std::map<std::string, std::string>& infix_ops() {
  static const std::map<std::string, std::string> ops = {
      {"x1", "×₁"}, {"x2", "×₂"}, {"plus", "⊞"}, {"times", "⊙"},
      {"smul", "∗"}, {"dot", "·"}};
  return ops;
}

std::string pretty_rec(const Term& t, bool top) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return t.name();
    case Term::Kind::Abstraction: {
      std::vector<std::string> names;
      const Term* cur = &t;
      bool short_names = true;
      while (cur->is_abstraction()) {
        names.push_back(cur->name());
        if (cur->name().size() != 1) short_names = false;
        cur = &cur->body();
      }
      std::string out = "λ";
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0 && !short_names) out += " ";
        out += names[i];
      }
      out += "." + pretty_rec(*cur, true);
      return top ? out : "(" + out + ")";
    }
    case Term::Kind::Application: {
      Spine s = unwind(t);
      if (s.head.is_constant() && s.args.size() == 2) {
        auto it = infix_ops().find(s.head.name());
        if (it != infix_ops().end()) {
          std::string out = pretty_rec(s.args[0], false) + " " + it->second +
                            " " + pretty_rec(s.args[1], false);
          return top ? out : "(" + out + ")";
        }
      }
      std::string out = pretty_rec(s.head, false) + "(";
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        if (i) out += ", ";
        out += pretty_rec(s.args[i], true);
      }
      return out + ")";
    }
  }
  return {};
}

void collect_constants(const Term& t, std::vector<Term>& out) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      out.push_back(t);
      return;
    case Term::Kind::Variable:
      return;
    case Term::Kind::Application:
      collect_constants(t.function(), out);
      collect_constants(t.argument(), out);
      return;
    case Term::Kind::Abstraction:
      collect_constants(t.body(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const Term& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(t, bound, out);
  return out;
}

bool occurs_free(const std::string& name, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return false;
    case Term::Kind::Variable:
      return t.name() == name;
    case Term::Kind::Application:
      return occurs_free(name, t.function()) || occurs_free(name, t.argument());
    case Term::Kind::Abstraction:
      return t.name() != name && occurs_free(name, t.body());
  }
  return false;
}

Type infer_type(const Term& t) {
  std::vector<std::pair<std::string, Type>> env;
  return infer(t, env);
}

bool is_linear(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return true;
    case Term::Kind::Application:
      return is_linear(t.function()) && is_linear(t.argument());
    case Term::Kind::Abstraction:
      return count_occurrences(t.body(), t.name()) == 1 && is_linear(t.body());
  }
  return true;
}

bool alpha_equivalent(const Term& a, const Term& b) {
  Scope sa, sb;
  return alpha_eq(a, b, sa, sb);
}

Term substitute(const Term& body, const std::string& name, const Term& value) {
  return subst(body, name, value, free_variables(value));
}

std::size_t term_size(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return 1;
    case Term::Kind::Application:
      return 1 + term_size(t.function()) + term_size(t.argument());
    case Term::Kind::Abstraction:
      return 1 + term_size(t.body());
  }
  return 1;
}

std::string to_string(const Term& t, const TypeAbbrevs& abbrevs) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return t.name();
    case Term::Kind::Application: {
      Spine s = unwind(t);
      std::string out = "(" + to_string(s.head, abbrevs);
      for (const Term& a : s.args) out += " " + to_string(a, abbrevs);
      return out + ")";
    }
    case Term::Kind::Abstraction: {
      std::string out = "(lam";
      const Term* cur = &t;
      while (cur->is_abstraction()) {
        out += " " + cur->name() + ":" + annotation(cur->type(), abbrevs);
        cur = &cur->body();
      }
      return out + " " + to_string(*cur, abbrevs) + ")";
    }
  }
  return {};
}

std::string pretty(const Term& t) { return pretty_rec(t, true); }

std::vector<Term> constants_of(const Term& t) {
  std::vector<Term> out;
  collect_constants(t, out);
  return out;
}

}  // namespace ccpsem
