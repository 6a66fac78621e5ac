#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccpsem/ccp_logic.hpp"
#include "ccpsem/corpus.hpp"
#include "ccpsem/errors.hpp"
#include "ccpsem/fragment.hpp"
#include "ccpsem/normalize.hpp"
#include "ccpsem/static_semantics.hpp"

using namespace ccpsem;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string lexicon;
  std::string words;
  std::string model;
  std::string context;
  std::string bin;
  std::string num;
  std::string corpus;
  std::string config;
  std::string term_file;
  std::string term_text;
  std::string sentence;
  std::string formula;
  std::string out;
  std::string mode = "counting";
  std::string backend = "cube";
  std::string window;
  std::string scheme = "raw";
  std::string sim = "cosine";
  std::string side = "target";
  std::vector<std::string> lexicons;
  std::vector<std::string> word_pair;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  bool fixpoint = false;
  bool porcelain = false;
  bool log = false;
};

// Paths that do not exist as given are looked up in the fixture directory.
std::string data_path(const std::string& p) {
  if (p.empty() || fs::exists(p)) return p;
  if (const char* env = std::getenv("CCPSEM_DATA"))
    if (fs::exists(fs::path(env) / p)) return (fs::path(env) / p).string();
  if (fs::exists(fs::path(CCPSEM_DEFAULT_DATA) / p)) return (fs::path(CCPSEM_DEFAULT_DATA) / p).string();
  return p;
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::ValidationError(flag, "is required for this command");
  return value;
}

std::string term_source(const Options& o) {
  if (!o.term_text.empty()) return o.term_text;
  if (!o.term_file.empty()) return read_file(data_path(o.term_file));
  throw CLI::ValidationError("--term/--text", "one of them is required");
}

Lexicon lexicon_or(const Options& o, const char* fallback) {
  return load_lexicon(data_path(o.lexicon.empty() ? fallback : o.lexicon));
}

// Abstract sentence from --sentence (English, via the word file) or a term.
Term abstract_sentence(const Options& o, const Lexicon& lex) {
  if (!o.sentence.empty()) {
    Fragment frag = load_fragment(data_path(o.words.empty() ? "cube.words" : o.words));
    return frag.to_term(o.sentence, lex);
  }
  return parse_term(term_source(o), lex.source, Type::basic("S"));
}

void emit_context(const Options& o, const Context& c) {
  if (!o.out.empty()) {
    save_context(o.out, c);
    return;
  }
  write_tensor(std::cout, c.numeric);
  if (c.binary) {
    std::cout << "# binary\n";
    write_tensor(std::cout, *c.binary);
  }
}

int cmd_translate(const Options& o) {
  Lexicon lex = load_lexicon(data_path(require(o.lexicon, "--lexicon")));
  Term abstract = parse_term(term_source(o), lex.source);
  Term image = beta_eta_normalize(apply_term_hom(lex, abstract));
  std::cout << (o.porcelain ? to_string(image) : pretty(image)) << '\n';
  return 0;
}

int cmd_normalize(const Options& o) {
  Lexicon lex = load_lexicon(data_path(require(o.lexicon, "--lexicon")));
  const Signature& sig = o.side == "source" ? lex.source : lex.target;
  Term t = beta_eta_normalize(parse_term(term_source(o), sig));
  std::cout << (o.porcelain ? to_string(t) : pretty(t)) << '\n';
  return 0;
}

int cmd_eval_static(const Options& o) {
  Lexicon lex = load_lexicon(data_path(require(o.lexicon, "--lexicon")));
  StaticModel model = load_model(data_path(require(o.model, "--model")));
  Term abstract = parse_term(term_source(o), lex.source, Type::basic("S"));
  write_tensor(std::cout, compose_sentence(abstract, lex, model));
  return 0;
}

int cmd_build_context(const Options& o) {
  AnnotatedCorpus ac = load_corpus(data_path(require(o.corpus, "--corpus")));
  WeightScheme scheme = parse_scheme(o.scheme);
  Context c;
  if (!o.window.empty()) {
    CooccurrenceConfig cfg;
    if (!o.config.empty()) cfg = load_cooccurrence_config(data_path(o.config));
    c = build_cooccurrence(ac, parse_window(o.window), cfg);
  } else if (o.lexicon.empty()) {
    Updater up({parse_arithmetic(o.mode), o.seed});
    c = build_entity_cube(ac, up);
    for (const auto& w : up.warnings()) std::cerr << "warning: " << w << '\n';
  } else {
    Lexicon lex = load_lexicon(data_path(o.lexicon));
    Updater up({parse_arithmetic(o.mode), o.seed});
    c = build_context(corpus_terms(ac, lex), lex, up, {parse_backend(o.backend), o.fixpoint});
    for (const auto& w : up.warnings()) std::cerr << "warning: " << w << '\n';
  }
  if (scheme != WeightScheme::Raw) c = normalize_context(c, scheme);
  emit_context(o, c);
  return 0;
}

int cmd_apply(const Options& o) {
  Lexicon lex = lexicon_or(o, "cube.lex");
  Context c = load_context(data_path(require(o.context, "--context")), o.epsilon);
  Updater up({parse_arithmetic(o.mode), o.seed});
  up.nominals = lex.nominals;
  Context out;
  if (!o.formula.empty()) {
    out = ccp_apply(parse_formula(o.formula, lex, {}), c, lex, up);
  } else {
    out = apply_ccp(abstract_sentence(o, lex), lex, c, up);
  }
  if (o.log)
    for (const auto& e : up.log()) std::cerr << format_log_entry(e) << '\n';
  for (const auto& w : up.warnings()) std::cerr << "warning: " << w << '\n';
  emit_context(o, out);
  return 0;
}

int cmd_admits(const Options& o) {
  Lexicon lex = lexicon_or(o, "cube.lex");
  Context c = load_context(data_path(require(o.context, "--context")), o.epsilon);
  bool ok = false;
  try {
    ok = admits(c, abstract_sentence(o, lex), lex, o.seed);
  } catch (const UnknownWord& e) {
    std::cerr << "note: " << e.what() << '\n';
  }
  std::cout << (ok ? "true" : "false") << '\n';
  return 0;
}

int cmd_entail(const Options& o) {
  Lexicon lex = lexicon_or(o, "cube.lex");
  Context cbin = load_context(data_path(require(o.bin, "--bin")), o.epsilon);
  Context cnum = load_context(data_path(require(o.num, "--num")), o.epsilon);
  DegreedResult r;
  try {
    r = degreed_admits(cbin, cnum, abstract_sentence(o, lex), lex, parse_similarity(o.sim));
  } catch (const UnknownWord& e) {
    std::cerr << "note: " << e.what() << '\n';
  }
  if (o.porcelain)
    std::cout << (r.admitted ? "true" : "false") << '\t' << format_real(r.degree) << '\t'
              << format_witness(r.witness) << '\n';
  else
    std::cout << (r.admitted ? "true" : "false") << " degree=" << format_real(r.degree)
              << " witness=" << format_witness(r.witness) << '\n';
  return 0;
}

int cmd_similarity(const Options& o) {
  Context cnum = load_context(data_path(require(o.num, "--num")), o.epsilon);
  if (o.word_pair.size() != 2) throw CLI::ValidationError("--words", "needs two words");
  double s = word_similarity(cnum, o.word_pair[0], o.word_pair[1], parse_similarity(o.sim));
  if (o.porcelain)
    std::cout << o.word_pair[0] << '\t' << o.word_pair[1] << '\t' << format_real(s) << '\n';
  else
    std::cout << o.sim << '(' << o.word_pair[0] << ", " << o.word_pair[1] << ") = " << format_real(s) << '\n';
  return 0;
}

int cmd_validate(const Options& o) {
  if (o.lexicons.empty()) throw CLI::ValidationError("lexicon", "at least one file is required");
  int status = 0;
  for (const auto& path : o.lexicons) {
    Lexicon lex = load_lexicon(data_path(path));
    ValidationReport rep = validate_lexicon(lex);
    for (const auto& issue : lex.load_issues) rep.failures.push_back(issue);
    if (rep.ok()) {
      std::cout << (o.porcelain ? lex.name + "\tok" : lex.name + ": ok") << '\n';
      continue;
    }
    status = 1;
    for (const auto& f : rep.failures)
      std::cout << (o.porcelain ? lex.name + "\tfail\t" + f.constant + "\t" + f.message
                                : lex.name + ": " + f.constant + ": " + f.message)
                << '\n';
  }
  return status;
}

int cmd_to_relation(const Options& o) {
  Context c = load_context(data_path(require(o.context, "--context")), o.epsilon);
  for (const auto& tuple : to_relation(c)) {
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (o.porcelain) std::cout << (i ? "\t" : "") << tuple[i];
      else std::cout << (i ? "," : "(") << tuple[i];
    }
    std::cout << (o.porcelain ? "\n" : ")\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed lambda semantics over tensor and context-update models"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--porcelain", o.porcelain, "Tab-separated output");
  };
  auto term_opts = [&](CLI::App* sub) {
    sub->add_option("--term", o.term_file, "File holding a term");
    sub->add_option("--text", o.term_text, "Inline term");
  };
  auto sentence_opts = [&](CLI::App* sub) {
    term_opts(sub);
    sub->add_option("--sentence", o.sentence, "English sentence of the demo fragment");
    sub->add_option("--words", o.words, "Fragment word file (default cube.words)");
    sub->add_option("--lexicon", o.lexicon, "Lexicon file (default cube.lex)");
    sub->add_option("--seed", o.seed, "Quantifier RNG seed");
    sub->add_option("--epsilon", o.epsilon, "Value of eps entries");
  };

  auto* translate = app.add_subcommand("translate", "Image of an abstract term, normalized");
  translate->add_option("--lexicon", o.lexicon)->required();
  term_opts(translate);
  common(translate);

  auto* normalize = app.add_subcommand("normalize", "Beta-eta normal form of a term");
  normalize->add_option("--lexicon", o.lexicon)->required();
  normalize->add_option("--side", o.side, "Signature to parse against")
      ->check(CLI::IsMember({"source", "target"}));
  term_opts(normalize);
  common(normalize);

  auto* eval = app.add_subcommand("eval-static", "Tensor meaning of an abstract sentence");
  eval->add_option("--lexicon", o.lexicon)->required();
  eval->add_option("--model", o.model)->required();
  term_opts(eval);
  common(eval);

  auto* build = app.add_subcommand("build-context", "Context from an annotated corpus");
  build->add_option("--corpus", o.corpus)->required();
  build->add_option("--lexicon", o.lexicon, "Use the term lines with this lexicon");
  build->add_option("--config", o.config, "Co-occurrence preprocessing config");
  build->add_option("--window", o.window, "Co-occurrence window: sentence | k:<n>");
  build->add_option("--scheme", o.scheme)->check(CLI::IsMember({"raw", "l1", "l2", "ppmi"}));
  build->add_option("--mode", o.mode)->check(CLI::IsMember({"counting", "binary"}));
  build->add_option("--backend", o.backend)->check(CLI::IsMember({"matrix", "cube"}));
  build->add_flag("--fixpoint", o.fixpoint, "Repeat the corpus until stable");
  build->add_option("--seed", o.seed);
  build->add_option("-o,--out", o.out, "Context file to write");
  common(build);

  auto* apply = app.add_subcommand("apply", "Run a sentence's context change on a context");
  sentence_opts(apply);
  apply->add_option("--context", o.context)->required();
  apply->add_option("--formula", o.formula, "Formula over inline (term ...) atoms");
  apply->add_option("--mode", o.mode)->check(CLI::IsMember({"counting", "binary"}));
  apply->add_flag("--log", o.log, "Print the update log to stderr");
  apply->add_option("-o,--out", o.out);
  common(apply);

  auto* admit = app.add_subcommand("admits", "Does the context admit the sentence");
  sentence_opts(admit);
  admit->add_option("--context", o.context)->required();
  common(admit);

  auto* entail = app.add_subcommand("entail", "Degreed admittance with a numeric context");
  sentence_opts(entail);
  entail->add_option("--bin", o.bin)->required();
  entail->add_option("--num", o.num)->required();
  entail->add_option("--sim", o.sim)->check(CLI::IsMember({"cosine", "dot"}));
  common(entail);

  auto* similarity = app.add_subcommand("similarity", "Row similarity of two words");
  similarity->add_option("--num", o.num)->required();
  similarity->add_option("--words", o.word_pair)->expected(2)->required();
  similarity->add_option("--sim", o.sim)->check(CLI::IsMember({"cosine", "dot"}));
  similarity->add_option("--epsilon", o.epsilon);
  common(similarity);

  auto* validate = app.add_subcommand("validate-lexicon", "Type-check lexicon entries");
  validate->add_option("lexicon", o.lexicons)->required();
  common(validate);

  auto* relation = app.add_subcommand("to-relation", "Index tuples of a 0/1 context");
  relation->add_option("--context", o.context)->required();
  common(relation);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*translate) return cmd_translate(o);
    if (*normalize) return cmd_normalize(o);
    if (*eval) return cmd_eval_static(o);
    if (*build) return cmd_build_context(o);
    if (*apply) return cmd_apply(o);
    if (*admit) return cmd_admits(o);
    if (*entail) return cmd_entail(o);
    if (*similarity) return cmd_similarity(o);
    if (*validate) return cmd_validate(o);
    if (*relation) return cmd_to_relation(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
