#ifndef CCPSEM_CORPUS_HPP
#define CCPSEM_CORPUS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccpsem/context.hpp"
#include "ccpsem/dynamic.hpp"
#include "ccpsem/homomorphism.hpp"

namespace ccpsem {

struct Triple {
  std::string subject;
  std::string relation;
  std::string object;
  std::optional<Quantifier> quantifier;
  bool quantify_object = false;
  bool negated = false;
};

struct AnnotatedSentence {
  std::string surface;
  std::vector<std::string> terms;  // abstract term texts, one per clause
  std::vector<Triple> triples;
  std::size_t line = 0;
};

struct AnnotatedCorpus {
  std::vector<AnnotatedSentence> sentences;
  std::string source;
};

// `sentence: <surface>` blocks with indented `term: <abstract term>` and
// `triple: <subj> <rel> <obj> [quant=<kind>[@subj|@obj]] [neg]` lines.
// Kinds: forall some most at_least:<k> at_most:<k>.
AnnotatedCorpus parse_corpus(std::string_view text, const std::string& source = {});
AnnotatedCorpus load_corpus(const std::string& path);

Quantifier parse_quantifier(const std::string& text);

// Preprocessing for co-occurrence counting: `lemma <from> <to>`,
// `stopword <w>...`, and optional `rows <w>...` / `columns <w>...` that
// restrict the matrix axes.
struct CooccurrenceConfig {
  std::map<std::string, std::string> lemmas;
  std::set<std::string> stopwords;
  std::vector<std::string> rows;
  std::vector<std::string> columns;
};

CooccurrenceConfig parse_cooccurrence_config(std::string_view text);
CooccurrenceConfig load_cooccurrence_config(const std::string& path);

// Lowercased content tokens of a surface string after lemma folding and
// stop-word removal.
std::vector<std::string> content_tokens(const std::string& surface, const CooccurrenceConfig& cfg);

struct Window {
  // 0 means the whole sentence.
  std::size_t k = 0;
  static Window sentence() { return {0}; }
  static Window words(std::size_t k) { return {k}; }
};

Window parse_window(const std::string& text);

// Sentence windows count each distinct word pair once per sentence;
// k-word windows count every pair of positions at distance <= k. Both are
// symmetric and skip a word paired with itself.
Context build_cooccurrence(const AnnotatedCorpus& corpus, Window window,
                           const CooccurrenceConfig& cfg = {});

// Counts triples at (subject, relation, object); quantified triples expand
// over the current is-a set.
Context build_entity_cube(const AnnotatedCorpus& corpus, Updater& up);

enum class WeightScheme { Raw, L1, L2, Ppmi };
WeightScheme parse_scheme(const std::string& name);
std::string to_string(WeightScheme s);

// Row-wise along the last axis; ppmi over (leading axes) x (last axis).
Context normalize_context(const Context& c, WeightScheme scheme);

}  // namespace ccpsem

#endif
