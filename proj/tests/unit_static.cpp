#include "doctest.h"
#include "support.hpp"

#include "ccpsem/errors.hpp"
#include "ccpsem/normalize.hpp"
#include "ccpsem/static_semantics.hpp"

using namespace ccpsem;
using testing::lexicon;

namespace {

const char* kSentence = "((a woman) (lam xi:D ((every man) (loves xi))))";

StaticModel toy_model(StaticMode mode, const Lexicon& lex) {
  return random_model(lex.target, Vocabulary({"f1", "f2"}), 11, mode);
}

void check_close(const Tensor& a, const Tensor& b) {
  REQUIRE(a.same_shape(b));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.data()[i] == doctest::Approx(b.data()[i]).epsilon(1e-12));
}

}  // namespace

TEST_CASE("ranks of basic object types") {
  CHECK(rank_of_basic("V") == 1);
  CHECK(rank_of_basic("M") == 2);
  CHECK(rank_of_basic("C") == 3);
  CHECK(rank_of_basic("H") == 4);
}

TEST_CASE("contraction model against chained kernels") {
  const Lexicon& lex = lexicon("table2.lex");
  StaticModel m = toy_model(StaticMode::Contraction, lex);
  CHECK(evaluate(parse_term("woman", lex.target), m) == m.assignments.at("woman"));
  const auto& A = m.assignments;
  Tensor oracle = contract1(contract2(A.at("love"), contract1(A.at("a"), A.at("woman"))),
                            contract1(A.at("every"), A.at("man")));
  Tensor got = compose_sentence(parse_term(kSentence, lex.source), lex, m);
  check_close(got, oracle);
  CHECK(got.rank() == 1);
}

TEST_CASE("additive model is a bag of words") {
  const Lexicon& lex = lexicon("table3_add.lex");
  StaticModel m = toy_model(StaticMode::Additive, lex);
  Tensor sum = Tensor::zeros({m.vocab});
  for (const char* w : {"a", "woman", "every", "man", "love"}) sum = pointwise_add(sum, m.assignments.at(w));
  check_close(compose_sentence(parse_term(kSentence, lex.source), lex, m), sum);
  Tensor smokes = compose_sentence(parse_term("((every man) smokes)", lex.source), lex, m);
  check_close(smokes, pointwise_add(pointwise_add(m.assignments.at("smoke"), m.assignments.at("every")),
                                    m.assignments.at("man")));
}

TEST_CASE("multiplicative model") {
  const Lexicon& lex = lexicon("table3_mul.lex");
  StaticModel m = toy_model(StaticMode::Multiplicative, lex);
  Tensor got = compose_sentence(parse_term("((every (tall man)) smokes)", lex.source), lex, m);
  const auto& A = m.assignments;
  Tensor oracle = pointwise_mul(A.at("smoke"), pointwise_mul(A.at("every"), pointwise_mul(A.at("tall"), A.at("man"))));
  check_close(got, oracle);
}

TEST_CASE("errors") {
  const Lexicon& lex = lexicon("table2.lex");
  StaticModel m = toy_model(StaticMode::Contraction, lex);
  m.assignments.erase("man");
  CHECK_THROWS_AS(compose_sentence(parse_term(kSentence, lex.source), lex, m), UnassignedConstant);
  StaticModel wrong = toy_model(StaticMode::Contraction, lex);
  wrong.assignments["tall"] = wrong.assignments.at("woman");
  CHECK_THROWS_AS(compose_sentence(parse_term("((every (tall man)) smokes)", lex.source), lex, wrong),
                  RankMismatch);
  CHECK_THROWS_AS(compose_sentence(parse_term("(loves xi)", lex.source, std::nullopt,
                                              {{"xi", Type::basic("D")}}),
                                   lex, m),
                  TypeMismatch);
}

TEST_CASE("generated mode lexicons") {
  SUBCASE("additive transitive verb") {
    Lexicon lex = make_mode_lexicon(StaticMode::Additive);
    CHECK(validate_lexicon(lex).ok());
    CHECK(alpha_equivalent(lex.image_of(Term::constant("loves", lex.source.parse_type("DDS"))),
                           parse_term("(lam u:V (lam v:V (plus (plus love u) v)))", lex.target)));
  }
  SUBCASE("multiplicative adjective") {
    Lexicon lex = make_mode_lexicon(StaticMode::Multiplicative);
    CHECK(validate_lexicon(lex).ok());
    CHECK(pretty(lex.image_of(Term::constant("tall", lex.source.parse_type("NN")))) == "λv.tall ⊙ v");
  }
  SUBCASE("matrix determiner") {
    Lexicon lex = make_mode_lexicon(StaticMode::MatMul);
    CHECK(validate_lexicon(lex).ok());
    CHECK(pretty(lex.image_of(Term::constant("every", lex.source.parse_type("N(DS)S")))) ==
          "λvZ.Z(every ×₁ v)");
  }
  SUBCASE("shipped files agree with the generator") {
    for (auto [mode, file] : {std::pair{StaticMode::Additive, "table3_add.lex"},
                              std::pair{StaticMode::Multiplicative, "table3_mul.lex"}}) {
      Lexicon gen = make_mode_lexicon(mode);
      const Lexicon& shipped = lexicon(file);
      for (const auto& [name, entry] : shipped.entries) {
        CAPTURE(name);
        REQUIRE(gen.entries.count(name));
        CHECK(alpha_equivalent(gen.entries.at(name).image, entry.image));
      }
    }
  }
}

TEST_CASE("model files round trip") {
  const Lexicon& lex = lexicon("table2.lex");
  StaticModel m = load_model(testing::data("static/table2.model"));
  CHECK(m.mode == StaticMode::Contraction);
  StaticModel again = random_model(lex.target, Vocabulary({"f1", "f2", "f3"}), 7);
  for (const auto& [name, t] : again.assignments) CHECK(m.assignments.at(name) == t);
}
