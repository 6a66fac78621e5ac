#include "ccpsem/fragment.hpp"

#include <cctype>
#include <algorithm>
#include <set>
#include <sstream>

#include "ccpsem/errors.hpp"
#include "ccpsem/parse.hpp"

namespace ccpsem {

void Fragment::add_word(Category cat, const std::string& constant,
                        const std::vector<std::string>& surface) {
  if (surface.empty()) throw Error("word '" + constant + "' has no surface form");
  words_.push_back({cat, constant, surface});
}

Fragment parse_fragment(std::string_view text) {
  static const std::map<std::string, Fragment::Category> cats{
      {"noun", Fragment::Category::Noun},   {"adj", Fragment::Category::Adj},
      {"verb1", Fragment::Category::Verb1}, {"verb2", Fragment::Category::Verb2},
      {"det", Fragment::Category::Det},     {"name", Fragment::Category::Name},
      {"attitude", Fragment::Category::Attitude}};
  Fragment f;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ws(raw);
    std::string cat, constant;
    if (!(ws >> cat)) continue;
    auto it = cats.find(cat);
    if (it == cats.end()) throw ParseError("unknown category '" + cat + "'", lineno);
    if (!(ws >> constant)) throw ParseError("missing constant", lineno);
    std::string rest;
    std::getline(ws, rest);
    std::istringstream forms(rest);
    bool any = false;
    for (std::string form; std::getline(forms, form, ',');) {
      std::istringstream fs(form);
      std::vector<std::string> surface;
      for (std::string w; fs >> w;) surface.push_back(w);
      if (surface.empty()) continue;
      f.add_word(it->second, constant, surface);
      any = true;
    }
    if (!any) throw ParseError("missing surface form", lineno);
  }
  return f;
}

Fragment load_fragment(const std::string& path) { return parse_fragment(read_file(path)); }

std::vector<std::string> tokenize_sentence(std::string_view sentence) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : sentence) {
    unsigned char u = static_cast<unsigned char>(ch);
    if (std::isalnum(u) || ch == '_' || ch == '-' || ch == '\'') {
      cur += static_cast<char>(std::tolower(u));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

namespace {

using Category = Fragment::Category;

struct Parse {
  std::string term;
  std::size_t next;
};

class Parser {
public:
  Parser(const std::vector<Fragment::Word>& words, std::vector<std::string> tokens)
      : words_(words), toks_(std::move(tokens)) {}

  std::vector<Parse> sentence(std::size_t i) {
    std::vector<Parse> out;
    for (auto& first : clause(i)) extend_sentence(first, out);
    return out;
  }

private:
  void extend_sentence(const Parse& left, std::vector<Parse>& out) {
    out.push_back(left);
    if (is(left.next, "and") || is(left.next, "but")) {
      const std::string conj = toks_[left.next];
      for (auto& right : clause(left.next + 1))
        extend_sentence({"(" + conj + " " + right.term + " " + left.term + ")", right.next}, out);
    }
  }

  std::vector<Parse> clause(std::size_t i) {
    std::vector<Parse> out;
    for (auto& np : noun_phrase(i))
      for (auto& vp : verb_phrase(np.next)) out.push_back({"(" + np.term + " " + vp.term + ")", vp.next});
    return out;
  }

  std::vector<Parse> noun_phrase(std::size_t i) {
    std::vector<Parse> out;
    for (auto& first : simple_np(i)) extend_np(first, out);
    return out;
  }

  void extend_np(const Parse& left, std::vector<Parse>& out) {
    out.push_back(left);
    if (is(left.next, "and"))
      for (auto& right : simple_np(left.next + 1))
        extend_np({"(and " + right.term + " " + left.term + ")", right.next}, out);
  }

  std::vector<Parse> simple_np(std::size_t i) {
    std::vector<Parse> out;
    for (auto& [name, j] : match(i, Category::Name)) out.push_back({name, j});
    std::vector<std::pair<std::string, std::size_t>> dets = match(i, Category::Det);
    dets.push_back({"bare", i});
    for (auto& [det, j] : dets)
      for (auto& nom : nominal(j)) {
        out.push_back({"(" + det + " " + nom.term + ")", nom.next});
        if (is(nom.next, "who"))
          for (auto& vp : verb_phrase(nom.next + 1))
            out.push_back({"(" + det + " (who " + vp.term + " " + nom.term + "))", vp.next});
      }
    return out;
  }

  // ADJ* NOUN
  std::vector<Parse> nominal(std::size_t i) {
    std::vector<Parse> out;
    for (auto& [noun, j] : match(i, Category::Noun)) out.push_back({noun, j});
    for (auto& [adj, j] : match(i, Category::Adj))
      for (auto& rest : nominal(j)) out.push_back({"(" + adj + " " + rest.term + ")", rest.next});
    return out;
  }

  std::vector<Parse> verb_phrase(std::size_t i) {
    std::vector<Parse> out;
    if (is(i, "are") || is(i, "is")) {
      bool negated = is(i + 1, "not");
      std::size_t j = negated ? i + 2 : i + 1;
      auto wrap = [&](std::string vp) { return negated ? "(not " + vp + ")" : vp; };
      std::size_t a = is(j, "a") || is(j, "an") ? j + 1 : j;
      for (auto& nom : nominal(a)) out.push_back({wrap("(isa " + nom.term + ")"), nom.next});
      for (auto& [adj, k] : match(j, Category::Adj)) out.push_back({wrap("(are " + adj + ")"), k});
    }
    if ((is(i, "do") || is(i, "does")) && is(i + 1, "not"))
      for (auto& vp : verb_phrase(i + 2)) out.push_back({"(not " + vp.term + ")", vp.next});
    for (auto& [verb, j] : match(i, Category::Verb1)) out.push_back({verb, j});
    for (auto& [verb, j] : match(i, Category::Verb2))
      for (auto& obj : noun_phrase(j)) {
        std::string x = "x" + std::to_string(i), y = "y" + std::to_string(i);
        out.push_back({"(lam " + x + ":D (" + obj.term + " (lam " + y + ":D (" + verb + " " + y + " " +
                           x + "))))",
                       obj.next});
      }
    for (auto& [att, j] : match(i, Category::Attitude)) {
      std::size_t k = is(j, "that") ? j + 1 : j;
      for (auto& s : sentence(k)) out.push_back({"(" + att + " " + s.term + ")", s.next});
    }
    return out;
  }

  std::vector<std::pair<std::string, std::size_t>> match(std::size_t i, Category cat) const {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& w : words_) {
      if (w.category != cat || i + w.surface.size() > toks_.size()) continue;
      if (std::equal(w.surface.begin(), w.surface.end(), toks_.begin() + static_cast<std::ptrdiff_t>(i)))
        out.push_back({w.constant, i + w.surface.size()});
    }
    return out;
  }

  bool is(std::size_t i, const char* word) const { return i < toks_.size() && toks_[i] == word; }

  const std::vector<Fragment::Word>& words_;
  std::vector<std::string> toks_;
};

bool is_function_word(const std::string& t) {
  static const std::set<std::string> fw{"are", "is", "not", "do", "does", "and", "but", "who", "a", "an", "that"};
  return fw.count(t) > 0;
}

}  // namespace

std::string Fragment::to_term_text(std::string_view sentence) const {
  auto tokens = tokenize_sentence(sentence);
  if (tokens.empty()) throw SyntaxError("empty sentence", 0);
  for (const auto& t : tokens) {
    if (is_function_word(t)) continue;
    bool known = false;
    for (const auto& w : words_)
      if (std::find(w.surface.begin(), w.surface.end(), t) != w.surface.end()) known = true;
    if (!known) throw UnknownWord("'" + t + "' is not in the fragment");
  }
  Parser p(words_, tokens);
  for (const auto& parse : p.sentence(0))
    if (parse.next == tokens.size()) return parse.term;
  throw SyntaxError("no parse for '" + std::string(sentence) + "'", 0);
}

Term Fragment::to_term(std::string_view sentence, const Lexicon& lex) const {
  return parse_term(to_term_text(sentence), lex.source, Type::basic("S"));
}

}  // namespace ccpsem
