#include "ccpsem/normalize.hpp"

#include <set>
#include <string>
#include <vector>

namespace ccpsem {

Term beta_normalize(const Term& t) {
  if (t.is_abstraction())
    return Term::abstraction(t.name(), t.type(), beta_normalize(t.body()));
  Spine s = unwind(t);
  while (s.head.is_abstraction() && !s.args.empty()) {
    Term reduced = substitute(s.head.body(), s.head.name(), s.args.front());
    std::vector<Term> rest(s.args.begin() + 1, s.args.end());
    Spine inner = unwind(reduced);
    inner.args.insert(inner.args.end(), rest.begin(), rest.end());
    s = std::move(inner);
  }
  if (s.args.empty()) {
    if (s.head.is_abstraction()) return beta_normalize(s.head);
    return s.head;
  }
  std::vector<Term> args;
  args.reserve(s.args.size());
  for (const Term& a : s.args) args.push_back(beta_normalize(a));
  return Term::apply(s.head, args);
}

Term beta_normalize_applicative(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return t;
    case Term::Kind::Abstraction:
      return Term::abstraction(t.name(), t.type(),
                               beta_normalize_applicative(t.body()));
    case Term::Kind::Application: {
      Term f = beta_normalize_applicative(t.function());
      Term a = beta_normalize_applicative(t.argument());
      if (f.is_abstraction())
        return beta_normalize_applicative(substitute(f.body(), f.name(), a));
      return Term::application(f, a);
    }
  }
  return t;
}

Term eta_reduce(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return t;
    case Term::Kind::Application:
      return Term::application(eta_reduce(t.function()), eta_reduce(t.argument()));
    case Term::Kind::Abstraction: {
      Term body = eta_reduce(t.body());
      if (body.is_application() && body.argument().is_variable() &&
          body.argument().name() == t.name() &&
          !occurs_free(t.name(), body.function()))
        return body.function();
      return Term::abstraction(t.name(), t.type(), body);
    }
  }
  return t;
}

namespace {

Term rename_rec(const Term& t, std::vector<std::pair<std::string, std::string>>& scope,
                std::set<std::string>& in_use) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Variable:
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (it->first == t.name()) return Term::variable(it->second, t.type());
      return t;
    case Term::Kind::Application:
      return Term::application(rename_rec(t.function(), scope, in_use),
                               rename_rec(t.argument(), scope, in_use));
    case Term::Kind::Abstraction: {
      std::string name = t.name();
      while (in_use.count(name)) name += "'";
      in_use.insert(name);
      scope.emplace_back(t.name(), name);
      Term body = rename_rec(t.body(), scope, in_use);
      scope.pop_back();
      in_use.erase(name);
      return Term::abstraction(name, t.type(), body);
    }
  }
  return t;
}

}  // namespace

Term canonical_names(const Term& t) {
  std::vector<std::pair<std::string, std::string>> scope;
  std::set<std::string> in_use = free_variables(t);
  return rename_rec(t, scope, in_use);
}

Term beta_eta_normalize(const Term& t) {
  return canonical_names(eta_reduce(beta_normalize(t)));
}

bool is_beta_normal(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return true;
    case Term::Kind::Abstraction:
      return is_beta_normal(t.body());
    case Term::Kind::Application:
      return !t.function().is_abstraction() && is_beta_normal(t.function()) &&
             is_beta_normal(t.argument());
  }
  return true;
}

}  // namespace ccpsem
