#include "ccpsem/ccp_logic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ccpsem/errors.hpp"
#include "ccpsem/normalize.hpp"
#include "ccpsem/parse.hpp"

namespace ccpsem {

CcpFormula CcpFormula::atom(Term sentence, std::string label) {
  return CcpFormula(std::make_shared<const Node>(Node{Kind::Atom, std::move(sentence), std::move(label), {}}));
}

CcpFormula CcpFormula::negation(CcpFormula f) {
  return CcpFormula(std::make_shared<const Node>(Node{Kind::Not, std::nullopt, {}, {std::move(f)}}));
}

CcpFormula CcpFormula::conjunction(CcpFormula f, CcpFormula g) {
  return CcpFormula(
      std::make_shared<const Node>(Node{Kind::And, std::nullopt, {}, {std::move(f), std::move(g)}}));
}

CcpFormula CcpFormula::disjunction(CcpFormula f, CcpFormula g) {
  return negation(conjunction(negation(std::move(f)), negation(std::move(g))));
}

CcpFormula CcpFormula::implication(CcpFormula f, CcpFormula g) {
  return disjunction(negation(std::move(f)), std::move(g));
}

std::string to_string(const CcpFormula& f) {
  switch (f.kind()) {
    case CcpFormula::Kind::Atom:
      return f.label().empty() ? to_string(f.sentence()) : f.label();
    case CcpFormula::Kind::Not:
      return "(not " + to_string(f.left()) + ")";
    case CcpFormula::Kind::And:
      return "(and " + to_string(f.left()) + " " + to_string(f.right()) + ")";
  }
  return {};
}

namespace {

CcpFormula formula_from(const SExpr& e, const Lexicon& lex, const std::map<std::string, Term>& atoms) {
  if (e.atom) {
    if (auto it = atoms.find(e.text); it != atoms.end()) return CcpFormula::atom(it->second, e.text);
    return CcpFormula::atom(elaborate(e, lex.source, Type::basic("S")), e.text);
  }
  if (e.items.empty()) throw SyntaxError("empty formula", e.position);
  const SExpr& head = e.items.front();
  const std::string op = head.atom ? head.text : "";
  auto arity = [&](std::size_t n) {
    if (e.items.size() != n + 1)
      throw SyntaxError("'" + op + "' takes " + std::to_string(n) + " operand(s)", e.position);
  };
  if (op == "term") {
    arity(1);
    return CcpFormula::atom(elaborate(e.items[1], lex.source, Type::basic("S")));
  }
  if (op == "not") {
    arity(1);
    return CcpFormula::negation(formula_from(e.items[1], lex, atoms));
  }
  if (op == "and" || op == "or" || op == "implies") {
    arity(2);
    CcpFormula f = formula_from(e.items[1], lex, atoms);
    CcpFormula g = formula_from(e.items[2], lex, atoms);
    if (op == "and") return CcpFormula::conjunction(f, g);
    if (op == "or") return CcpFormula::disjunction(f, g);
    return CcpFormula::implication(f, g);
  }
  throw SyntaxError("expected not/and/or/implies/term, got '" + to_string(head) + "'", head.position);
}

}  // namespace

CcpFormula parse_formula(std::string_view text, const Lexicon& lex,
                         const std::map<std::string, Term>& atoms) {
  return formula_from(parse_sexpr(text), lex, atoms);
}

Context ccp_apply(const CcpFormula& f, const Context& c, const Lexicon& lex, Updater& up) {
  switch (f.kind()) {
    case CcpFormula::Kind::Atom:
      return apply_ccp(f.sentence(), lex, c, up);
    case CcpFormula::Kind::Not: {
      auto writes = up.probe([&] { ccp_apply(f.left(), c, lex, up); });
      return up.negate(writes, c);
    }
    case CcpFormula::Kind::And:
      return ccp_apply(f.right(), ccp_apply(f.left(), c, lex, up), lex, up);
  }
  return c;
}

Context derived_or(const CcpFormula& f, const CcpFormula& g, const Context& c, const Lexicon& lex,
                   Updater& up) {
  Context x = ccp_apply(g, c, lex, up);
  auto writes = up.probe([&] { ccp_apply(g, ccp_apply(f, c, lex, up), lex, up); });
  return up.negate(writes, x);
}

Context derived_implies(const CcpFormula& f, const CcpFormula& g, const Context& c,
                        const Lexicon& lex, Updater& up) {
  auto writes = up.probe([&] {
    Context d = ccp_apply(f, c, lex, up);
    auto inner = up.probe([&] { ccp_apply(g, d, lex, up); });
    up.negate(inner, d);
  });
  return up.negate(writes, c);
}

Corpus corpus_terms(const AnnotatedCorpus& annotated, const Lexicon& lex) {
  Corpus corpus;
  corpus.source = annotated.source;
  for (const auto& s : annotated.sentences)
    for (const auto& text : s.terms) {
      try {
        corpus.sentences.push_back(parse_term(text, lex.source, Type::basic("S")));
      } catch (const Error& e) {
        throw ParseError(std::string(e.what()) + " in '" + text + "'", s.line);
      }
    }
  return corpus;
}

Vocabulary corpus_vocabulary(const Corpus& corpus, const Lexicon& lex, Backend backend) {
  Vocabulary vocab;
  for (const auto& s : corpus.sentences) {
    Term image = ccp_image(s, lex);
    for (const auto& w : image_words(image)) {
      vocab.intern(w);
      if (backend == Backend::Cube)
        if (auto it = lex.nominals.find(w); it != lex.nominals.end()) vocab.intern(it->second);
    }
  }
  if (backend == Backend::Cube) {
    vocab.intern("is");
    vocab.intern("is-a");
  }
  return vocab;
}

Context build_context(const Corpus& corpus, const Lexicon& lex, Updater& up,
                      const BuildOptions& opts) {
  up.nominals = lex.nominals;
  Vocabulary vocab = corpus_vocabulary(corpus, lex, opts.backend);
  Context c = Context::zeros(opts.backend, vocab);
  if (up.mode().arithmetic == Arithmetic::Binary) c.ensure_binary();
  std::vector<Term> images;
  for (const auto& s : corpus.sentences) images.push_back(ccp_image(s, lex));
  auto pass = [&] {
    for (const auto& img : images) c = run_update(img, c, up);
  };
  pass();
  if (opts.fixpoint) {
    const std::size_t bound = std::max<std::size_t>(1, images.size() * c.vocab.size());
    for (std::size_t i = 0; i < bound; ++i) {
      Context before = c;
      pass();
      if (c == before) break;
    }
  }
  return c;
}

bool admits(const Context& c, const Term& sentence, const Lexicon& lex, std::uint64_t seed) {
  const Tensor& before = c.relation();
  Updater up({Arithmetic::Binary, seed});
  up.nominals = lex.nominals;
  Context start = c;
  if (!start.binary) start.binary = before;
  try {
    Context after = apply_ccp(sentence, lex, start, up);
    return *after.binary == before;
  } catch (const UnknownWord&) {
    return false;
  }
}

Similarity parse_similarity(const std::string& name) {
  if (name == "cosine") return Similarity::Cosine;
  if (name == "dot" || name == "raw-dot") return Similarity::RawDot;
  throw Error("unknown similarity '" + name + "' (cosine|dot)");
}

double word_similarity(const Context& cnum, const std::string& a, const std::string& b,
                       Similarity sim) {
  const Tensor& m = cnum.numeric;
  if (m.rank() != 2) throw RankMismatch("similarity needs a matrix context");
  const std::size_t ia = m.axis(0).index(a), ib = m.axis(0).index(b);
  const std::size_t width = m.axis(1).size();
  Tensor ra = Tensor::zeros({m.axis(1)}), rb = Tensor::zeros({m.axis(1)});
  for (std::size_t k = 0; k < width; ++k) {
    ra.data()[k] = m.data()[ia * width + k];
    rb.data()[k] = m.data()[ib * width + k];
  }
  return sim == Similarity::Cosine ? cosine(ra, rb) : dot(ra, rb);
}

std::string format_witness(const std::vector<Substitution>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += w[i].admitted + "→" + w[i].query;
  }
  return out;
}

namespace {

void constant_occurrences(const Term& t, std::vector<Term>& out) {
  switch (t.kind()) {
    case Term::Kind::Constant: out.push_back(t); break;
    case Term::Kind::Variable: break;
    case Term::Kind::Abstraction: constant_occurrences(t.body(), out); break;
    case Term::Kind::Application:
      constant_occurrences(t.function(), out);
      constant_occurrences(t.argument(), out);
      break;
  }
}

// Replaces the constant occurrences (pre-order positions) listed in subs.
Term replace_occurrences(const Term& t, const std::map<std::size_t, std::string>& subs,
                         std::size_t& counter) {
  switch (t.kind()) {
    case Term::Kind::Constant: {
      auto it = subs.find(counter++);
      return it == subs.end() ? t : Term::constant(it->second, t.type());
    }
    case Term::Kind::Variable: return t;
    case Term::Kind::Abstraction:
      return Term::abstraction(t.name(), t.type(), replace_occurrences(t.body(), subs, counter));
    case Term::Kind::Application: {
      Term f = replace_occurrences(t.function(), subs, counter);
      Term a = replace_occurrences(t.argument(), subs, counter);
      return Term::application(f, a);
    }
  }
  return t;
}

}  // namespace

DegreedResult degreed_admits(const Context& cbin, const Context& cnum, const Term& sentence,
                             const Lexicon& lex, Similarity sim, std::size_t max_substitutions) {
  if (admits(cbin, sentence, lex)) return {true, 1.0, {}};
  const Vocabulary& rows = cnum.numeric.axis(0);

  std::vector<Term> occurrences;
  constant_occurrences(sentence, occurrences);
  struct Slot {
    std::size_t position;
    std::string word;
    std::vector<std::string> alternatives;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < occurrences.size(); ++i) {
    const Term& occ = occurrences[i];
    if (!rows.contains(occ.name())) continue;
    Slot slot{i, occ.name(), {}};
    for (const auto& [name, type] : lex.source.constants())
      if (name != occ.name() && type == occ.type() && rows.contains(name))
        slot.alternatives.push_back(name);
    if (!slot.alternatives.empty()) slots.push_back(std::move(slot));
  }

  DegreedResult best;
  std::string best_key;
  auto consider = [&](const std::vector<std::pair<const Slot*, std::string>>& choice) {
    std::map<std::size_t, std::string> subs;
    double degree = 1.0;
    std::vector<Substitution> witness;
    for (const auto& [slot, alt] : choice) {
      subs[slot->position] = alt;
      degree *= word_similarity(cnum, alt, slot->word, sim);
      witness.push_back({alt, slot->word});
    }
    if (!(degree > 0.0)) return;
    std::size_t counter = 0;
    Term candidate = replace_occurrences(sentence, subs, counter);
    if (!admits(cbin, candidate, lex)) return;
    std::string key = format_witness(witness);
    bool better = false;
    if (!best.admitted || degree > best.degree + 1e-12) {
      better = true;
    } else if (std::fabs(degree - best.degree) <= 1e-12) {
      if (witness.size() < best.witness.size()) better = true;
      else if (witness.size() == best.witness.size() && key < best_key) better = true;
    }
    if (better) {
      best = {true, degree, witness};
      best_key = key;
    }
  };

  for (std::size_t a = 0; a < slots.size(); ++a)
    for (const auto& alt : slots[a].alternatives) {
      consider({{&slots[a], alt}});
      if (max_substitutions < 2) continue;
      for (std::size_t b = a + 1; b < slots.size(); ++b)
        for (const auto& alt2 : slots[b].alternatives) consider({{&slots[a], alt}, {&slots[b], alt2}});
    }
  return best;
}

Relation to_relation(const Tensor& binary) {
  if (!is_binary(binary)) throw NotBinary("relation view needs a 0/1 tensor");
  Relation r;
  for (std::size_t off = 0; off < binary.size(); ++off)
    if (binary.data()[off] == 1.0) {
      auto ix = binary.unravel(off);
      for (auto& i : ix) ++i;
      r.push_back(std::move(ix));
    }
  return r;
}

Relation to_relation(const Context& c) { return to_relation(c.relation()); }

Tensor from_relation(const Relation& r, const std::vector<Vocabulary>& axes) {
  Tensor t = Tensor::zeros(axes);
  for (const auto& tuple : r) {
    std::vector<std::size_t> ix;
    for (std::size_t i : tuple) {
      if (i == 0) throw ShapeMismatch("relation indices are 1-based");
      ix.push_back(i - 1);
    }
    t.at(ix) = 1.0;
  }
  return t;
}

}  // namespace ccpsem
