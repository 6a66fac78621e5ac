#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "ccpsem/corpus.hpp"
#include "ccpsem/errors.hpp"

using namespace ccpsem;

namespace {

AnnotatedCorpus cats() { return load_corpus(testing::data("cats/cats.corpus")); }

CooccurrenceConfig cats_config() {
  return load_cooccurrence_config(testing::data("cats/cooccurrence.cfg"));
}

}  // namespace

TEST_CASE("corpus files") {
  AnnotatedCorpus ac = cats();
  REQUIRE(ac.sentences.size() == 5);
  CHECK(ac.sentences[0].surface == "Cats and dogs are animals that sleep.");
  CHECK(ac.sentences[0].terms.size() == 2);
  CHECK(ac.sentences[0].triples.size() == 4);
  const Triple& all = ac.sentences[2].triples.at(0);
  REQUIRE(all.quantifier.has_value());
  CHECK(all.quantifier->kind == Quantifier::Kind::Forall);
  CHECK(all.quantify_object);
  CHECK(parse_corpus("").sentences.empty());
  try {
    parse_corpus("sentence: x\n  triple: a b\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_corpus("  term: (a b)\n"), ParseError);
  CHECK(parse_quantifier("at_least:3").k == 3);
  CHECK(parse_quantifier("most").kind == Quantifier::Kind::Most);
}

TEST_CASE("tokens") {
  CooccurrenceConfig cfg = cats_config();
  CHECK(content_tokens("Cats and dogs are animals that sleep.", cfg) ==
        std::vector<std::string>{"cats", "dogs", "animal", "sleep"});
}

TEST_CASE("sentence-window counts for the cats corpus") {
  Context raw = build_cooccurrence(cats(), Window::sentence(), cats_config());
  // Counts read off the five sentences by hand.
  const std::vector<std::vector<double>> want{
      {1, 1, 1, 1, 1, 1, 1, 1}, {0, 0, 1, 1, 1, 1, 1, 1}, {2, 1, 1, 0, 0, 0, 0, 0}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(raw.numeric.at({i, j}) == want[i][j]);
  Context l1 = normalize_context(raw, WeightScheme::L1);
  CHECK(l1.numeric.at_words({"cats", "run"}) == 1.0 / 8);
  CHECK(l1.numeric.at_words({"mice", "smell"}) == 1.0 / 6);
  CHECK(l1.numeric.at_words({"dogs", "animal"}) == 1.0 / 2);
  CHECK(l1.numeric.at_words({"dogs", "sleep"}) == 1.0 / 4);
  CHECK(l1.numeric.at_words({"mice", "animal"}) == 0);
}

TEST_CASE("windows") {
  AnnotatedCorpus one = parse_corpus("sentence: hello\n");
  Context z = build_cooccurrence(one, Window::sentence());
  for (double x : z.numeric.data()) CHECK(x == 0);
  AnnotatedCorpus abc = parse_corpus("sentence: a b c\n");
  Context k1 = build_cooccurrence(abc, Window::words(1));
  CHECK(k1.numeric.at_words({"a", "b"}) == 1);
  CHECK(k1.numeric.at_words({"b", "a"}) == 1);
  CHECK(k1.numeric.at_words({"b", "c"}) == 1);
  CHECK(k1.numeric.at_words({"a", "c"}) == 0);
  CHECK(parse_window("k:2").k == 2);
  CHECK(parse_window("sentence").k == 0);
  CHECK_THROWS_AS(parse_window("k:"), Error);
}

TEST_CASE("weight schemes") {
  Vocabulary r({"a", "b"}), c({"x", "y"});
  Context m = Context::from_tensor(Tensor::matrix(r, c, {{3, 4}, {0, 0}}));
  CHECK(normalize_context(m, WeightScheme::Raw) == m);
  Context l2 = normalize_context(m, WeightScheme::L2);
  CHECK(l2.numeric.at({0, 0}) == doctest::Approx(0.6));
  CHECK(l2.numeric.at({1, 1}) == 0);
  SUBCASE("ppmi of independent counts is zero") {
    Context ind = Context::from_tensor(Tensor::matrix(r, c, {{2, 6}, {1, 3}}));
    Context p = normalize_context(ind, WeightScheme::Ppmi);
    for (double x : p.numeric.data()) CHECK(std::fabs(x) < 1e-12);
  }
  SUBCASE("ppmi clamps at zero") {
    Context dep = Context::from_tensor(Tensor::matrix(r, c, {{5, 0}, {0, 5}}));
    Context p = normalize_context(dep, WeightScheme::Ppmi);
    CHECK(p.numeric.at({0, 0}) == doctest::Approx(std::log(2.0)));
    CHECK(p.numeric.at({0, 1}) == 0);
  }
}

TEST_CASE("entity cube from triples") {
  Updater up({Arithmetic::Counting, 0});
  Context c = build_entity_cube(cats(), up);
  CHECK(c.numeric.at_words({"cat", "is-a", "animal"}) == 1);
  CHECK(c.numeric.at_words({"dog", "chase", "cat"}) == 1);
  CHECK(c.numeric.at_words({"dog", "chase", "dog"}) == 1);
  CHECK(c.numeric.at_words({"dog", "chase", "mouse"}) == 0);
  Updater again({Arithmetic::Counting, 0});
  Context empty = build_entity_cube(parse_corpus(""), again);
  for (double x : empty.numeric.data()) CHECK(x == 0);
  SUBCASE("negated triples count down") {
    Updater n({Arithmetic::Counting, 0});
    Context neg = build_entity_cube(parse_corpus("sentence: x\n  triple: dog chase cat neg\n"), n);
    CHECK(neg.numeric.at_words({"dog", "chase", "cat"}) == -1);
  }
}
