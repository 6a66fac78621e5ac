#ifndef CCPSEM_FRAGMENT_HPP
#define CCPSEM_FRAGMENT_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ccpsem/homomorphism.hpp"
#include "ccpsem/term.hpp"

namespace ccpsem {

// A toy English fragment for the demo lexicons: plural generics,
// determiners, adjectives, relative 'who', copular 'are', 'do not',
// transitive/intransitive verbs, attitude verbs and 'and'/'but'.
//
// Word file lines: `<category> <constant> <form>, <form>...` with category
// one of noun adj verb1 verb2 det name attitude. A form may span several
// tokens ("run from").
class Fragment {
public:
  enum class Category { Noun, Adj, Verb1, Verb2, Det, Name, Attitude };

  void add_word(Category cat, const std::string& constant, const std::vector<std::string>& surface);

  // Abstract term text for a sentence. Throws UnknownWord for tokens outside
  // the fragment and SyntaxError when no parse covers the whole input.
  std::string to_term_text(std::string_view sentence) const;
  Term to_term(std::string_view sentence, const Lexicon& lex) const;

  struct Word {
    Category category;
    std::string constant;
    std::vector<std::string> surface;
  };
  const std::vector<Word>& words() const { return words_; }

private:
  std::vector<Word> words_;
};

Fragment parse_fragment(std::string_view text);
Fragment load_fragment(const std::string& path);

std::vector<std::string> tokenize_sentence(std::string_view sentence);

}  // namespace ccpsem

#endif
