#include "doctest.h"
#include "support.hpp"

#include "ccpsem/errors.hpp"
#include "ccpsem/fragment.hpp"

using namespace ccpsem;

namespace {

const Fragment& words() {
  static Fragment f = load_fragment(testing::data("cube.words"));
  return f;
}

}  // namespace

TEST_CASE("tokenizer") {
  CHECK(tokenize_sentence("Cats like mice, but mice fear cats.") ==
        std::vector<std::string>{"cats", "like", "mice", "but", "mice", "fear", "cats"});
}

TEST_CASE("fragment parses") {
  CHECK(words().to_term_text("Cats are animals") == "((bare cats) (isa animals))");
  CHECK(words().to_term_text("dogs sleep") == "((bare dogs) sleep)");
  CHECK(words().to_term_text("Dogs do not sleep") == "((bare dogs) (not sleep))");
  CHECK(words().to_term_text("cats are not animals") == "((bare cats) (not (isa animals)))");
  CHECK(words().to_term_text("Both leading tenors are excellent") ==
        "((both (leading tenors)) (are excellent))");
  CHECK(words().to_term_text("leading tenors who are excellent are indispensable") ==
        "((bare (who (are excellent) (leading tenors))) (are indispensable))");
  CHECK(words().to_term_text("dogs run from cats") ==
        "((bare dogs) (lam x1:D ((bare cats) (lam y1:D (run_from y1 x1)))))");
  CHECK(words().to_term_text("cats chase cats and mice") ==
        "((bare cats) (lam x1:D ((and (bare mice) (bare cats)) (lam y1:D (chase y1 x1)))))");
  SUBCASE("sentential coordination") {
    std::string t = words().to_term_text("cats sleep and dogs sleep");
    CHECK(t == "(and ((bare dogs) sleep) ((bare cats) sleep))");
  }
}

TEST_CASE("fragment terms type-check") {
  const Lexicon& lex = testing::lexicon("cube.lex");
  for (const char* s : {"all animals sleep", "some cats chase most mice", "cats know dogs sleep",
                        "at least two dogs eat at most two cats"}) {
    CAPTURE(s);
    CHECK_NOTHROW(words().to_term(s, lex));
  }
}

TEST_CASE("fragment errors") {
  CHECK_THROWS_AS(words().to_term_text("cats adore mice"), UnknownWord);
  CHECK_THROWS_AS(words().to_term_text("cats mice"), SyntaxError);
  CHECK_THROWS_AS(words().to_term_text(""), SyntaxError);
  CHECK_THROWS_AS(parse_fragment("verb3 x x\n"), ParseError);
}
