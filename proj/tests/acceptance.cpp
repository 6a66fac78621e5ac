// One line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "laws.hpp"
#include "support.hpp"

#include "ccpsem/ccp_logic.hpp"
#include "ccpsem/corpus.hpp"
#include "ccpsem/errors.hpp"
#include "ccpsem/fragment.hpp"
#include "ccpsem/normalize.hpp"
#include "ccpsem/parse.hpp"

using namespace ccpsem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the checks of one criterion and renders its line.
struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> problems;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

Term translate(const Lexicon& lex, const std::string& text) {
  return beta_eta_normalize(apply_term_hom(lex, parse_term(text, lex.source)));
}

std::string term_file(const std::string& name) { return read_file(testing::data("terms/" + name)); }

const Fragment& fragment() {
  static Fragment f = load_fragment(testing::data("cube.words"));
  return f;
}

std::string fraction(double x) { return format_real(x); }

std::string fixed(double x, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << x;
  return out.str();
}

void golden_translations(Criterion& cr) {
  auto t0 = Clock::now();
  const Lexicon& dyn = testing::lexicon("table4.lex");
  const std::vector<std::pair<std::string, std::string>> dynamic{
      {term_file("ex1b.term"), "(lam c:M (I admire stockbroker sue (I love stockbroker sue c)))"},
      {term_file("ex2b.term"), "(lam c:M (I despise cop anna (I admire cop bill c)))"},
      {term_file("ex3b.term"), "(lam c:M (G disappear witch (I see witch anna (J claim bill c))))"},
      {term_file("every_tall_woman.term"), "(lam c:M (G smoke woman (F tall woman c)))"},
  };
  for (const auto& [abstract, object] : dynamic)
    cr.expect(alpha_equivalent(translate(dyn, abstract), parse_term(object, dyn.target)), abstract);
  cr.expect(pretty(translate(dyn, term_file("every_tall_woman.term"))) == "λc.G(smoke, woman, F(tall, woman, c))",
            "display form of the smokes example");
  const Lexicon& stat = testing::lexicon("table2.lex");
  Term image = translate(stat, term_file("static_example.term"));
  cr.expect(alpha_equivalent(image, parse_term("(x1 (x2 love (x1 a woman)) (x1 every man))", stat.target)),
            "static example");
  cr.expect(pretty(image) == "(love ×₂ (a ×₁ woman)) ×₁ (every ×₁ man)", "static display form");
  double secs = seconds_since(t0);
  cr.expect(secs < 1.0, "took " + fraction(secs) + " s");
  cr.summary = "5 terms in " + fixed(secs, 3) + " s";
}

void lexicon_validation(Criterion& cr) {
  std::size_t entries = 0;
  for (const char* file : {"table1.lex", "table2.lex", "table3_add.lex", "table3_mul.lex", "table3_mat.lex",
                           "table4.lex"}) {
    const Lexicon& lex = testing::lexicon(file);
    ValidationReport rep = validate_lexicon(lex);
    entries += lex.entries.size() + lex.schemas.size();
    for (const auto& f : rep.failures) cr.expect(false, std::string(file) + " " + f.constant + ": " + f.message);
    cr.expect(!lex.entries.empty(), std::string(file) + " is empty");
  }
  cr.summary = "6 lexicons, " + std::to_string(entries) + " entries, 0 failures";
}

void matrix_updates(Criterion& cr) {
  const double eps = 1e-3;
  Tensor left = load_tensor(testing::data("matrix_updates/left.tensor"), eps);
  Tensor right = load_tensor(testing::data("matrix_updates/right.tensor"), eps);
  Context c = Context::from_tensor(left, eps);
  Updater up({Arithmetic::Counting, 0});
  std::ifstream in(testing::data("matrix_updates/updates.txt"));
  std::string line;
  std::size_t updates = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::size_t count;
    std::string op;
    if (line.empty() || line[0] == '#' || !(ls >> count >> op)) continue;
    std::vector<std::string> args;
    for (std::string w; ls >> w;) args.push_back(w);
    for (std::size_t i = 0; i < count; ++i, ++updates) {
      if (op == "F") c = up.F(args.at(0), args.at(1), c);
      else if (op == "G") c = up.G(args.at(0), args.at(1), c);
      else if (op == "I") c = up.I(args.at(0), args.at(1), args.at(2), c);
      else if (op == "J") c = up.J(args.at(0), args.at(1), c);
      else throw Error("unknown update " + op);
    }
  }
  // The right-hand snapshot shows rows Anna..knows against columns
  // loves..sleeps; outside that block only the love updates on people and cat
  // land.
  const std::vector<std::string> rows{"Anna", "woman", "tall", "smokes", "loves", "knows"};
  const std::vector<std::string> cols{"loves", "man", "cat", "fears", "sleeps"};
  for (const auto& r : rows)
    for (const auto& k : cols)
      cr.expect(c.numeric.at_words({r, k}) == right.at_words({r, k}), "(" + r + "," + k + ") = " +
                                                                         fraction(c.numeric.at_words({r, k})));
  const std::map<std::pair<std::string, std::string>, double> off_block{
      {{"man", "cat"}, 200}, {{"loves", "people"}, 300}, {{"people", "cat"}, 300}};
  for (const auto& [cell, delta] : off_block)
    cr.expect(c.numeric.at_words({cell.first, cell.second}) - left.at_words({cell.first, cell.second}) == delta,
              "(" + cell.first + "," + cell.second + ") off-block increment");
  std::vector<Cell> written = written_cells(up.log());
  std::set<std::size_t> touched;
  for (const Cell& cell : written) touched.insert(left.offset({left.axis(0).index(cell[0]), left.axis(1).index(cell[1])}));
  std::size_t unchanged = 0, changed = 0;
  for (std::size_t off = 0; off < left.size(); ++off) {
    if (touched.count(off)) {
      changed += c.numeric.data()[off] != left.data()[off];
      continue;
    }
    cr.expect(c.numeric.data()[off] == left.data()[off], "cell " + std::to_string(off) + " moved");
    ++unchanged;
  }
  for (std::size_t off = 0; off < left.size(); ++off) {
    auto ix = left.unravel(off);
    bool in_block = std::count(rows.begin(), rows.end(), left.axis(0).word(ix[0])) &&
                    std::count(cols.begin(), cols.end(), left.axis(1).word(ix[1]));
    bool expected_move = in_block ? right.data()[off] != left.data()[off]
                                  : off_block.count({left.axis(0).word(ix[0]), left.axis(1).word(ix[1])}) > 0;
    cr.expect(expected_move == (c.numeric.data()[off] != left.data()[off]),
              "cell " + left.axis(0).word(ix[0]) + "," + left.axis(1).word(ix[1]) + " moved unexpectedly");
  }
  cr.summary = std::to_string(updates) + " updates, " + std::to_string(changed) + " cells changed exactly, " +
               std::to_string(unchanged) + " untouched cells unchanged";
}

Context cats_binary() {
  const Lexicon& lex = testing::lexicon("cube.lex");
  Updater up({Arithmetic::Binary, 0});
  return build_context(corpus_terms(load_corpus(testing::data("cats/cats.corpus")), lex), lex, up,
                       {Backend::Cube, true});
}

Context cats_numeric() {
  AnnotatedCorpus ac = load_corpus(testing::data("cats/cats.corpus"));
  return normalize_context(
      build_cooccurrence(ac, Window::sentence(), load_cooccurrence_config(testing::data("cats/cooccurrence.cfg"))),
      WeightScheme::L1);
}

void admittance_suite(Criterion& cr) {
  const Lexicon& lex = testing::lexicon("cube.lex");
  Context c = cats_binary();
  const std::vector<std::pair<const char*, bool>> expected{
      {"Cats are animals", true},       {"Dogs are animals", true},     {"Cats chase cats", true},
      {"Cats chase mice", true},        {"Dogs chase cats and dogs", true},
      {"Dogs do not chase cats", false}, {"Dogs do not chase dogs", false},
      {"Cats are not animals", false},  {"Dogs do not sleep", false},   {"Dogs chase mice", false},
      {"Cats like dogs", false},        {"Cats eat dogs", false},       {"Dogs run from cats", false},
      {"Dogs like mice", false},        {"Mice fear dogs", false},      {"Dogs eat mice", false},
  };
  std::size_t matches = 0;
  for (const auto& [sentence, want] : expected) {
    bool got = admits(c, fragment().to_term(sentence, lex), lex);
    cr.expect(got == want, std::string(sentence) + (got ? " admitted" : " rejected"));
    matches += got == want;
  }
  cr.summary = std::to_string(matches) + "/" + std::to_string(expected.size()) +
               " boolean matches (5 admitted, 11 rejected)";
}

void degreed_entailment(Criterion& cr) {
  const Lexicon& lex = testing::lexicon("cube.lex");
  Context cbin = cats_binary(), cnum = cats_numeric();
  // Rows of the co-occurrence table over animal sleep chase like fear eat
  // smell run, counted by hand from the five corpus sentences, then divided
  // by their sums.
  const std::map<std::string, std::vector<double>> counts{
      {"cats", {1, 1, 1, 1, 1, 1, 1, 1}}, {"mice", {0, 0, 1, 1, 1, 1, 1, 1}}, {"dogs", {2, 1, 1, 0, 0, 0, 0, 0}}};
  auto oracle = [&](const std::string& a, const std::string& b) {
    const auto &u = counts.at(a), &v = counts.at(b);
    double su = 0, sv = 0, d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) su += u[i], sv += v[i];
    for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] / su) * (v[i] / sv);
    return d;
  };
  auto near = [](double a, double b) { return std::fabs(a - b) <= 1e-12; };
  double cats_mice = word_similarity(cnum, "cats", "mice", Similarity::RawDot);
  cr.expect(near(cats_mice, 1.0 / 8), "sim(cats,mice) = " + fraction(cats_mice));
  cr.expect(near(oracle("cats", "mice"), 1.0 / 8), "oracle sim(cats,mice)");
  for (const char* s : {"Dogs chase mice", "Mice are animals"}) {
    DegreedResult r = degreed_admits(cbin, cnum, fragment().to_term(s, lex), lex, Similarity::RawDot);
    cr.expect(r.admitted && near(r.degree, 1.0 / 8), std::string(s) + " degree " + fraction(r.degree));
  }
  double cats_dogs = word_similarity(cnum, "cats", "dogs", Similarity::RawDot);
  double dogs_mice = word_similarity(cnum, "dogs", "mice", Similarity::RawDot);
  cr.expect(near(cats_dogs, oracle("cats", "dogs")), "sim(cats,dogs) disagrees with the oracle");
  cr.expect(near(dogs_mice, oracle("dogs", "mice")), "sim(dogs,mice) disagrees with the oracle");
  // Degrees of the two lower-ranked groups follow the oracle similarity of
  // the swapped pair.
  const std::vector<std::pair<const char*, double>> lower{
      {"Cats like dogs", oracle("dogs", "mice")}, {"Cats eat dogs", oracle("dogs", "mice")},
      {"Dogs like mice", oracle("cats", "dogs")}, {"Dogs eat mice", oracle("cats", "dogs")}};
  for (const auto& [s, want] : lower) {
    DegreedResult r = degreed_admits(cbin, cnum, fragment().to_term(s, lex), lex, Similarity::RawDot);
    cr.expect(r.admitted && near(r.degree, want), std::string(s) + " degree " + fraction(r.degree));
  }
  cr.summary = "sim(cats,mice)=1/8, both sentences at 1/8; oracle sim(dogs,mice)=" + fraction(dogs_mice) +
               " (printed 1/24, agrees), oracle sim(cats,dogs)=" + fraction(cats_dogs) +
               " (printed 1/32, disagrees)";
}

void property_suites(Criterion& cr) {
  auto t0 = Clock::now();
  std::size_t total = 0;
  std::uint64_t seed = 100;
  for (const laws::Law& law : laws::all()) {
    laws::Outcome out = law.run(seed++, 1000);
    total += out.cases;
    cr.expect(out.cases >= 1000, std::string(law.name) + " ran " + std::to_string(out.cases) + " cases");
    if (!out.ok())
      cr.expect(false, std::string(law.name) + ": " + std::to_string(out.failures) + " failures, first " +
                           out.first_failure);
  }
  double secs = seconds_since(t0);
  cr.expect(secs < 30, "took " + fraction(secs) + " s");
  cr.summary = std::to_string(laws::all().size()) + " laws, " + std::to_string(total) + " cases in " +
               fixed(secs, 1) + " s";
}

void self_admittance(Criterion& cr) {
  laws::Outcome out = laws::self_admittance(7, 50);
  cr.expect(out.cases == 50, "ran " + std::to_string(out.cases) + " corpora");
  if (!out.ok()) cr.expect(false, std::to_string(out.failures) + " failures, first " + out.first_failure);
  cr.summary = std::to_string(out.cases) + " corpora, " + std::to_string(out.failures) + " sentences not admitted";
}

void fracas(Criterion& cr) {
  const Lexicon& lex = testing::lexicon("cube.lex");
  Corpus premises = corpus_terms(load_corpus(testing::data("fracas/fracas013.corpus")), lex);
  Term hypothesis = parse_term(read_file(testing::data("fracas/fracas013.hyp")), lex.source, Type::basic("S"));
  cr.expect(premises.sentences.size() == 2, "expected two premises");
  Updater up({Arithmetic::Binary, 0});
  Context both = build_context(premises, lex, up, {Backend::Cube, true});
  cr.expect(admits(both, hypothesis, lex), "P1+P2 does not admit H");
  // P1 alone, over the vocabulary of all three sentences.
  Corpus all = premises;
  all.sentences.push_back(hypothesis);
  Context first = Context::zeros(Backend::Cube, corpus_vocabulary(all, lex, Backend::Cube));
  first.ensure_binary();
  up.nominals = lex.nominals;
  first = apply_ccp(premises.sentences.at(0), lex, first, up);
  cr.expect(!admits(first, hypothesis, lex), "P1 alone admits H");
  cr.summary = "P1+P2 admits H; P1 alone does not";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"golden translations", golden_translations},
      {"lexicon validation", lexicon_validation},
      {"matrix context updates", matrix_updates},
      {"cats corpus admittance", admittance_suite},
      {"degreed entailment", degreed_entailment},
      {"property suites", property_suites},
      {"self-admittance", self_admittance},
      {"fracas-013 fixture", fracas},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion cr{static_cast<int>(i + 1), criteria[i].first, {}, {}};
    try {
      criteria[i].second(cr);
    } catch (const std::exception& e) {
      cr.problems.push_back(std::string("exception: ") + e.what());
    }
    bool ok = cr.problems.empty();
    failed += !ok;
    std::cout << "criterion " << cr.number << ": " << (ok ? "PASS" : "FAIL") << " " << cr.title;
    if (!cr.summary.empty()) std::cout << " (" << cr.summary << ")";
    std::cout << "\n";
    for (const auto& p : cr.problems) std::cout << "    " << p << "\n";
  }
  return failed == 0 ? 0 : 1;
}
