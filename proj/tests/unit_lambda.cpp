#include "doctest.h"
#include "support.hpp"

#include "ccpsem/errors.hpp"
#include "ccpsem/normalize.hpp"
#include "ccpsem/parse.hpp"

using namespace ccpsem;

namespace {

Signature toy_signature() {
  return parse_signature(R"(
basictype D N S
constant woman : N
constant man : N
constant loves : D D S
constant smokes : D S
constant every : N (D S) S
constant a : N (D S) S
constant f : D D S
constant g : D D
)");
}

Type T(const char* text) { return toy_signature().parse_type(text); }

}  // namespace

TEST_CASE("types render right-associated without outer parentheses") {
  TypeScope scope;
  scope.open = true;
  Type est = parse_type("e(st)", scope);
  CHECK(to_string(est) == "est");
  CHECK(est == parse_type("est", scope));
  CHECK(to_string(parse_type("(es)t", scope)) == "(es)t");
  CHECK(to_string(T("(D S) S")) == "(DS)S");
}

TEST_CASE("parse_term") {
  Signature sig = toy_signature();
  SUBCASE("the quantifier example with an inferred binder") {
    Term t = parse_term("((a woman) (lam xi ((every man) (loves xi))))", sig);
    CHECK(infer_type(t, sig) == T("S"));
    CHECK(t.is_application());
    CHECK(t.argument().is_abstraction());
    CHECK(t.argument().type() == T("D"));
  }
  SUBCASE("a single constant") {
    Term t = parse_term("woman", sig);
    CHECK(t.is_constant());
    CHECK(t.name() == "woman");
  }
  SUBCASE("unannotated binder without context") {
    CHECK_THROWS_AS(parse_term("(lam x x)", sig), SyntaxError);
  }
  SUBCASE("unknown symbol") {
    CHECK_THROWS_AS(parse_term("(loves nobody)", sig), UnknownSymbol);
  }
  SUBCASE("unbalanced input reports a position") {
    try {
      parse_term("(every man))", sig);
      FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
      CHECK(e.position() == 11);
    }
    CHECK_THROWS_AS(parse_term("((every man) smokes", sig), SyntaxError);
  }
}

TEST_CASE("infer_type") {
  Signature sig = toy_signature();
  Term loves_x = parse_term("(loves x)", sig, std::nullopt, {{"x", T("D")}});
  CHECK(infer_type(loves_x, sig) == T("DS"));
  CHECK(infer_type(parse_term("(lam x:D x)", sig), sig) == T("DD"));
  CHECK_THROWS_AS(parse_term("(woman woman)", sig), TypeMismatch);
  Term bad = Term::application(Term::constant("woman", T("N")), Term::constant("woman", T("N")));
  try {
    infer_type(bad);
    FAIL("expected a type mismatch");
  } catch (const TypeMismatch& e) {
    CHECK(e.actual() == "N");
  }
}

TEST_CASE("is_linear") {
  Signature sig = toy_signature();
  CHECK(is_linear(parse_term("(lam xi:D ((every man) (loves xi)))", sig)));
  CHECK_FALSE(is_linear(parse_term("(lam x:D (loves x x))", sig)));
  CHECK_FALSE(is_linear(parse_term("(lam x:D woman)", sig)));
}

TEST_CASE("alpha_equivalent") {
  Signature sig = toy_signature();
  CHECK(alpha_equivalent(parse_term("(lam x:D x)", sig), parse_term("(lam y:D y)", sig)));
  CHECK(alpha_equivalent(parse_term("(lam x:D (lam y:D (f x y)))", sig),
                         parse_term("(lam y:D (lam x:D (f y x)))", sig)));
  CHECK_FALSE(alpha_equivalent(parse_term("(lam x:D (lam y:D (f x y)))", sig),
                               parse_term("(lam x:D (lam y:D (f y x)))", sig)));
  CHECK_FALSE(alpha_equivalent(parse_term("(lam x:D x)", sig), parse_term("(lam x:N x)", sig)));
}

TEST_CASE("beta_eta_normalize") {
  Signature sig = toy_signature();
  SUBCASE("beta then eta") {
    Term t = parse_term("((lam P:(D S) (lam x:D (P x))) smokes)", sig);
    Term n = beta_eta_normalize(t);
    CHECK(n.is_constant());
    CHECK(n.name() == "smokes");
  }
  SUBCASE("idempotent") {
    Term t = parse_term("((lam Q:((D S) S) (Q (lam z:D (smokes z)))) ((lam n:N (every n)) man))", sig);
    Term once = beta_eta_normalize(t);
    CHECK(alpha_equivalent(once, beta_eta_normalize(once)));
    CHECK(to_string(once) == "(every man smokes)");
  }
  SUBCASE("capture is avoided") {
    Term t = parse_term("((lam x:D (lam y:D (f x y))) y)", sig, std::nullopt, {{"y", T("D")}});
    Term n = beta_eta_normalize(t);
    CHECK(free_variables(n) == std::set<std::string>{"y"});
    CHECK(n.is_application());
    CHECK(n.argument().is_variable());
    CHECK(n.argument().name() == "y");
  }
  SUBCASE("normal and applicative order agree") {
    Term t = parse_term("((lam h:(D D) (lam x:D (smokes (h (h x))))) (lam z:D (g z)))", sig);
    CHECK(alpha_equivalent(beta_normalize(t), beta_normalize_applicative(t)));
  }
  SUBCASE("canonical names prime a shadowing binder") {
    Term t = Term::abstraction(
        "x", T("D"), Term::abstraction("x", T("D"), Term::variable("x", T("D"))));
    CHECK(to_string(canonical_names(t)) == "(lam x:D x':D x')");
  }
}

TEST_CASE("substitute and term_size") {
  Signature sig = toy_signature();
  Term body = parse_term("(lam y:D (f x y))", sig, std::nullopt, {{"x", T("D")}});
  Term out = substitute(body, "x", Term::variable("y", T("D")));
  CHECK(free_variables(out) == std::set<std::string>{"y"});
  CHECK(term_size(parse_term("(f x x)", sig, std::nullopt, {{"x", T("D")}})) == 5);
}

TEST_CASE("signature files") {
  CHECK_THROWS_AS(parse_signature("constant w : N\nconstant w : N\n"), Error);
  CHECK_THROWS_AS(parse_signature("basictype D\nconstant w : Q\n"), ParseError);
}

TEST_CASE("comments in term text") {
  Signature sig = toy_signature();
  Term t = parse_term("# the smoker\n((every man) # quantifier\n smokes)\n", sig);
  CHECK(to_string(t) == "(every man smokes)");
}
