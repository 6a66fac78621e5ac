#ifndef CCPSEM_CCP_LOGIC_HPP
#define CCPSEM_CCP_LOGIC_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ccpsem/context.hpp"
#include "ccpsem/corpus.hpp"
#include "ccpsem/dynamic.hpp"
#include "ccpsem/homomorphism.hpp"

namespace ccpsem {

// p | not F | F and G. Or and Implies are built by their de Morgan
// expansions.
class CcpFormula {
public:
  enum class Kind { Atom, Not, And };

  static CcpFormula atom(Term sentence, std::string label = {});
  static CcpFormula negation(CcpFormula f);
  static CcpFormula conjunction(CcpFormula f, CcpFormula g);
  // not(not f and not g)
  static CcpFormula disjunction(CcpFormula f, CcpFormula g);
  // not f or g
  static CcpFormula implication(CcpFormula f, CcpFormula g);

  Kind kind() const { return node_->kind; }
  const Term& sentence() const { return *node_->sentence; }
  const std::string& label() const { return node_->label; }
  const CcpFormula& left() const { return node_->children.at(0); }
  const CcpFormula& right() const { return node_->children.at(1); }

private:
  struct Node {
    Kind kind;
    std::optional<Term> sentence;
    std::string label;
    std::vector<CcpFormula> children;
  };
  explicit CcpFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const CcpFormula& f);

// `p`, `(not F)`, `(and F G)`, `(or F G)`, `(implies F G)`, `(term <t>)`.
// A bare name is looked up in atoms first and otherwise parsed as a term.
CcpFormula parse_formula(std::string_view text, const Lexicon& lex,
                         const std::map<std::string, Term>& atoms = {});

// Atoms update by the sentence's CCP; not F undoes the writes F would make
// on c; and is sequential composition.
Context ccp_apply(const CcpFormula& f, const Context& c, const Lexicon& lex, Updater& up);

// The printed identities, where X - E removes from X the writes made while
// evaluating E:
//   or:      ||g||(c) - ||g||(||f||(c))
//   implies: c - (||f||(c) - ||g||(||f||(c)))
Context derived_or(const CcpFormula& f, const CcpFormula& g, const Context& c, const Lexicon& lex,
                   Updater& up);
Context derived_implies(const CcpFormula& f, const CcpFormula& g, const Context& c,
                        const Lexicon& lex, Updater& up);

struct Corpus {
  std::vector<Term> sentences;
  std::string source;
};

// Clause terms of an annotated corpus, in order.
Corpus corpus_terms(const AnnotatedCorpus& annotated, const Lexicon& lex);

// Words the corpus can touch: image words, is / is-a on cubes, and agent
// nouns of the verbs used.
Vocabulary corpus_vocabulary(const Corpus& corpus, const Lexicon& lex, Backend backend);

struct BuildOptions {
  Backend backend = Backend::Cube;
  bool fixpoint = false;
};

// Folds the sentences over the zero context, S1 first. With fixpoint the
// fold repeats until stable (at most |corpus| x |vocab| passes).
Context build_context(const Corpus& corpus, const Lexicon& lex, Updater& up,
                      const BuildOptions& opts = {});

// ||s||(c) = c on the binary view. Sentences with unknown words are not
// admitted.
bool admits(const Context& c, const Term& sentence, const Lexicon& lex, std::uint64_t seed = 0);

enum class Similarity { Cosine, RawDot };
Similarity parse_similarity(const std::string& name);

// Row similarity of two words in a numeric context.
double word_similarity(const Context& cnum, const std::string& a, const std::string& b,
                       Similarity sim);

struct Substitution {
  std::string admitted;  // word in the admitted sentence
  std::string query;     // word in the query sentence
};

struct DegreedResult {
  bool admitted = false;
  double degree = 0.0;
  std::vector<Substitution> witness;
};

std::string format_witness(const std::vector<Substitution>& w);

// Plain admittance gives degree 1. Otherwise up to max_substitutions
// constants that name rows of cnum are replaced by same-typed constants;
// the best admitted variant scores the product of the similarities.
DegreedResult degreed_admits(const Context& cbin, const Context& cnum, const Term& sentence,
                             const Lexicon& lex, Similarity sim = Similarity::Cosine,
                             std::size_t max_substitutions = 2);

// 1-based index tuples of the 1 cells, in row-major order.
using Relation = std::vector<std::vector<std::size_t>>;
Relation to_relation(const Tensor& binary);
Relation to_relation(const Context& c);
Tensor from_relation(const Relation& r, const std::vector<Vocabulary>& axes);

}  // namespace ccpsem

#endif
