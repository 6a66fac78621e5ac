#include "doctest.h"
#include "support.hpp"

#include "ccpsem/errors.hpp"
#include "ccpsem/normalize.hpp"

using namespace ccpsem;
using testing::lexicon;

namespace {

Term translate(const Lexicon& lex, const std::string& text) {
  return beta_eta_normalize(apply_term_hom(lex, parse_term(text, lex.source)));
}

Term object(const Lexicon& lex, const std::string& text) { return parse_term(text, lex.target); }

std::string file_term(const std::string& name) { return read_file(testing::data("terms/" + name)); }

}  // namespace

TEST_CASE("type homomorphism images") {
  const Lexicon& montague = lexicon("table1.lex");
  const Lexicon& dynamic = lexicon("table4.lex");
  TypeScope scope;
  scope.open = true;
  CHECK(to_string(apply_type_hom(montague.typehom, montague.source.parse_type("N"))) == "est");
  CHECK(to_string(apply_type_hom(montague.typehom, montague.source.parse_type("DS"))) == "est");
  CHECK(apply_type_hom(montague.typehom, montague.source.parse_type("DS")) ==
        parse_type("e(st)", scope));
  CHECK(to_string(apply_type_hom(dynamic.typehom, dynamic.source.parse_type("N")),
                  dynamic.target.abbrevs()) == "(VU)U");
  TypeHom partial;
  partial.map("D", Type::basic("e"));
  CHECK_THROWS_AS(apply_type_hom(partial, Type::arrow(Type::basic("D"), Type::basic("S"))),
                  UnmappedBasicType);
}

TEST_CASE("golden dynamic translations") {
  const Lexicon& lex = lexicon("table4.lex");
  CHECK(alpha_equivalent(translate(lex, file_term("ex1b.term")),
                         object(lex, "(lam c:M (I admire stockbroker sue (I love stockbroker sue c)))")));
  CHECK(alpha_equivalent(translate(lex, file_term("ex2b.term")),
                         object(lex, "(lam c:M (I despise cop anna (I admire cop bill c)))")));
  CHECK(alpha_equivalent(translate(lex, file_term("ex3b.term")),
                         object(lex, "(lam c:M (G disappear witch (I see witch anna (J claim bill c))))")));
  Term smokes = translate(lex, "((every (tall woman)) smokes)");
  CHECK(alpha_equivalent(smokes, object(lex, "(lam c:M (G smoke woman (F tall woman c)))")));
  CHECK(pretty(smokes) == "λc.G(smoke, woman, F(tall, woman, c))");
}

TEST_CASE("golden static translation") {
  const Lexicon& lex = lexicon("table2.lex");
  Term image = translate(lex, file_term("static_example.term"));
  CHECK(alpha_equivalent(image, object(lex, "(x1 (x2 love (x1 a woman)) (x1 every man))")));
  CHECK(pretty(image) == "(love ×₂ (a ×₁ woman)) ×₁ (every ×₁ man)");
}

TEST_CASE("variables map to variables of the image type") {
  const Lexicon& lex = lexicon("table4.lex");
  Term x = Term::variable("x", Type::basic("D"));
  Term img = apply_term_hom(lex, x);
  CHECK(img.is_variable());
  CHECK(img.type() == Type::basic("V"));
}

TEST_CASE("missing entries") {
  Lexicon lex = parse_lexicon(R"(
lexicon tiny
basictype V
hom D -> V
hom S -> V
object anna : V
entry anna : D => anna
)");
  lex.source.add_constant("ghost", Type::basic("D"));
  CHECK_THROWS_AS(apply_term_hom(lex, Term::constant("ghost", Type::basic("D"))), MissingEntry);
}

TEST_CASE("validate_lexicon") {
  for (const char* file :
       {"table1.lex", "table2.lex", "table3_add.lex", "table3_mul.lex", "table3_mat.lex", "table4.lex", "cube.lex"}) {
    CAPTURE(file);
    const Lexicon& lex = lexicon(file);
    CHECK(lex.load_issues.empty());
    CHECK(validate_lexicon(lex).ok());
  }
  SUBCASE("a mistyped entry is reported") {
    Lexicon lex = parse_lexicon(R"(
lexicon broken
basictype V M
typedef U = (M M)
hom N -> (V U) U
object woman : V
entry woman : N => (lam v:V v)
)");
    ValidationReport rep = validate_lexicon(lex);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].constant == "woman");
  }
  SUBCASE("line numbers on malformed files") {
    try {
      parse_lexicon("lexicon x\nbasictype V\nhom D => V\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
}

TEST_CASE("and schema") {
  const Lexicon& lex = lexicon("table4.lex");
  const SchemaEntry& s = lex.schemas.at("and");
  SUBCASE("arity zero is composition") {
    SchemaInstance inst = instantiate_schema(s, {}, lex.typehom, lex.target);
    CHECK(to_string(inst.abstract_type) == "SSS");
    CHECK(alpha_equivalent(beta_eta_normalize(inst.image),
                           object(lex, "(lam p:U (lam q:U (lam c:M (p (q c)))))")));
  }
  SUBCASE("transitive verbs") {
    Type d = Type::basic("D");
    SchemaInstance inst = instantiate_schema(s, {d, d}, lex.typehom, lex.target);
    CHECK(to_string(inst.abstract_type) == "(DDS)(DDS)DDS");
    CHECK(alpha_equivalent(translate(lex, "(and admires loves)"),
                           object(lex, "(lam u:V (lam v:V (lam c:M (I admire u v (I love u v c)))))")));
  }
  SUBCASE("intransitive verbs") {
    SchemaInstance inst = instantiate_schema(s, {Type::basic("D")}, lex.typehom, lex.target);
    CHECK(to_string(infer_type(inst.image), lex.target.abbrevs()) == "(VU)(VU)VU");
  }
  SUBCASE("but is and") {
    CHECK(lex.resolve_alias("but") == "and");
  }
}
