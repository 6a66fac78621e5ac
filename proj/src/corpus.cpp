#include "ccpsem/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "ccpsem/errors.hpp"
#include "ccpsem/parse.hpp"

namespace ccpsem {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

Quantifier parse_quantifier(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::size_t k = 0;
  if (colon != std::string::npos) {
    try {
      k = std::stoul(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error("bad quantifier count in '" + text + "'");
    }
  }
  if (kind == "forall" || kind == "all" || kind == "every") return {Quantifier::Kind::Forall, 0};
  if (kind == "some") return {Quantifier::Kind::Some, 0};
  if (kind == "most") return {Quantifier::Kind::Most, 0};
  if (kind == "at_least" && colon != std::string::npos) return {Quantifier::Kind::AtLeast, k};
  if (kind == "at_most" && colon != std::string::npos) return {Quantifier::Kind::AtMost, k};
  throw Error("unknown quantifier '" + text + "'");
}

AnnotatedCorpus parse_corpus(std::string_view text, const std::string& source) {
  AnnotatedCorpus corpus;
  corpus.source = source;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto colon = line.find(':');
    std::string key = colon == std::string::npos ? "" : line.substr(0, colon);
    std::string value = colon == std::string::npos ? "" : trim(line.substr(colon + 1));
    if (key == "sentence") {
      corpus.sentences.push_back({value, {}, {}, lineno});
      continue;
    }
    if (corpus.sentences.empty())
      throw ParseError("annotation before the first 'sentence:' line", lineno);
    AnnotatedSentence& s = corpus.sentences.back();
    if (key == "term") {
      if (value.empty()) throw ParseError("empty term", lineno);
      s.terms.push_back(value);
    } else if (key == "triple") {
      std::istringstream ws(value);
      Triple t;
      if (!(ws >> t.subject >> t.relation >> t.object))
        throw ParseError("triple needs subject, relation and object", lineno);
      for (std::string opt; ws >> opt;) {
        if (opt == "neg") {
          t.negated = true;
        } else if (opt.rfind("quant=", 0) == 0) {
          std::string q = opt.substr(6);
          if (auto at = q.find('@'); at != std::string::npos) {
            std::string slot = q.substr(at + 1);
            if (slot != "subj" && slot != "obj")
              throw ParseError("quantified slot must be @subj or @obj", lineno);
            t.quantify_object = slot == "obj";
            q.resize(at);
          }
          try {
            t.quantifier = parse_quantifier(q);
          } catch (const Error& e) {
            throw ParseError(e.what(), lineno);
          }
        } else {
          throw ParseError("unknown triple option '" + opt + "'", lineno);
        }
      }
      s.triples.push_back(std::move(t));
    } else {
      throw ParseError("expected 'sentence:', 'term:' or 'triple:'", lineno);
    }
  }
  return corpus;
}

AnnotatedCorpus load_corpus(const std::string& path) {
  return parse_corpus(read_file(path), path);
}

CooccurrenceConfig parse_cooccurrence_config(std::string_view text) {
  CooccurrenceConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ws(strip_comment(raw));
    std::string kw;
    if (!(ws >> kw)) continue;
    std::vector<std::string> args;
    for (std::string w; ws >> w;) args.push_back(w);
    if (kw == "lemma") {
      if (args.size() != 2) throw ParseError("expected 'lemma <from> <to>'", lineno);
      cfg.lemmas[args[0]] = args[1];
    } else if (kw == "stopword") {
      cfg.stopwords.insert(args.begin(), args.end());
    } else if (kw == "rows") {
      cfg.rows.insert(cfg.rows.end(), args.begin(), args.end());
    } else if (kw == "columns") {
      cfg.columns.insert(cfg.columns.end(), args.begin(), args.end());
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno);
    }
  }
  return cfg;
}

CooccurrenceConfig load_cooccurrence_config(const std::string& path) {
  return parse_cooccurrence_config(read_file(path));
}

std::vector<std::string> content_tokens(const std::string& surface, const CooccurrenceConfig& cfg) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    auto it = cfg.lemmas.find(cur);
    std::string w = it == cfg.lemmas.end() ? cur : it->second;
    if (!cfg.stopwords.count(w) && !cfg.stopwords.count(cur)) out.push_back(w);
    cur.clear();
  };
  for (char ch : surface) {
    unsigned char u = static_cast<unsigned char>(ch);
    if (std::isalnum(u) || ch == '-' || ch == '\'')
      cur += static_cast<char>(std::tolower(u));
    else
      flush();
  }
  flush();
  return out;
}

Window parse_window(const std::string& text) {
  if (text == "sentence") return Window::sentence();
  if (text.rfind("k:", 0) == 0) {
    try {
      std::size_t k = std::stoul(text.substr(2));
      if (k > 0) return Window::words(k);
    } catch (const std::exception&) {
    }
  }
  throw Error("window must be 'sentence' or 'k:<n>' with n >= 1");
}

Context build_cooccurrence(const AnnotatedCorpus& corpus, Window window,
                           const CooccurrenceConfig& cfg) {
  std::vector<std::vector<std::string>> sentences;
  Vocabulary seen;
  for (const auto& s : corpus.sentences) {
    sentences.push_back(content_tokens(s.surface, cfg));
    for (const auto& w : sentences.back()) seen.intern(w);
  }
  Vocabulary rows = cfg.rows.empty() ? seen : Vocabulary(cfg.rows);
  Vocabulary cols = cfg.columns.empty() ? seen : Vocabulary(cfg.columns);
  Tensor m = Tensor::zeros({rows, cols});
  auto count = [&](const std::string& a, const std::string& b) {
    if (a == b) return;
    auto i = rows.find(a);
    auto j = cols.find(b);
    if (i && j) m.at({*i, *j}) += 1.0;
  };
  for (const auto& tokens : sentences) {
    if (window.k == 0) {
      std::vector<std::string> distinct;
      for (const auto& w : tokens)
        if (std::find(distinct.begin(), distinct.end(), w) == distinct.end()) distinct.push_back(w);
      for (const auto& a : distinct)
        for (const auto& b : distinct) count(a, b);
    } else {
      for (std::size_t i = 0; i < tokens.size(); ++i)
        for (std::size_t j = i + 1; j < tokens.size() && j - i <= window.k; ++j) {
          count(tokens[i], tokens[j]);
          count(tokens[j], tokens[i]);
        }
    }
  }
  return Context::from_tensor(std::move(m));
}

Context build_entity_cube(const AnnotatedCorpus& corpus, Updater& up) {
  Vocabulary vocab;
  for (const auto& s : corpus.sentences)
    for (const auto& t : s.triples) {
      vocab.intern(t.subject);
      vocab.intern(t.relation);
      vocab.intern(t.object);
    }
  vocab.intern("is-a");
  Context c = Context::zeros(Backend::Cube, vocab);
  for (const auto& s : corpus.sentences)
    for (const auto& t : s.triples) {
      auto clause = [&](const std::string& subj, const std::string& obj, const Context& in) {
        if (t.negated) return up.negation(t.relation, obj, subj, in);
        return up.I(t.relation, obj, subj, in);
      };
      if (!t.quantifier) {
        c = clause(t.subject, t.object, c);
      } else if (t.quantify_object) {
        c = up.quantify(*t.quantifier, t.object,
                        [&](const std::string& x, const Context& in) { return clause(t.subject, x, in); },
                        c);
      } else {
        c = up.quantify(*t.quantifier, t.subject,
                        [&](const std::string& x, const Context& in) { return clause(x, t.object, in); },
                        c);
      }
    }
  return c;
}

WeightScheme parse_scheme(const std::string& name) {
  if (name == "raw") return WeightScheme::Raw;
  if (name == "l1") return WeightScheme::L1;
  if (name == "l2") return WeightScheme::L2;
  if (name == "ppmi") return WeightScheme::Ppmi;
  throw Error("unknown scheme '" + name + "' (raw|l1|l2|ppmi)");
}

std::string to_string(WeightScheme s) {
  switch (s) {
    case WeightScheme::Raw: return "raw";
    case WeightScheme::L1: return "l1";
    case WeightScheme::L2: return "l2";
    case WeightScheme::Ppmi: return "ppmi";
  }
  return "raw";
}

Context normalize_context(const Context& c, WeightScheme scheme) {
  Context out = c;
  if (scheme == WeightScheme::Raw) return out;
  std::vector<double>& d = out.numeric.data();
  const std::size_t width = out.numeric.dims().back();
  const std::size_t nrows = width == 0 ? 0 : d.size() / width;
  if (scheme == WeightScheme::L1 || scheme == WeightScheme::L2) {
    for (std::size_t r = 0; r < nrows; ++r) {
      double s = 0.0;
      for (std::size_t k = 0; k < width; ++k) {
        double x = d[r * width + k];
        s += scheme == WeightScheme::L1 ? std::fabs(x) : x * x;
      }
      if (scheme == WeightScheme::L2) s = std::sqrt(s);
      if (s == 0.0) continue;
      for (std::size_t k = 0; k < width; ++k) d[r * width + k] /= s;
    }
    return out;
  }
  std::vector<double> row_sum(nrows, 0.0), col_sum(width, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t k = 0; k < width; ++k) {
      double x = d[r * width + k];
      row_sum[r] += x;
      col_sum[k] += x;
      total += x;
    }
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t k = 0; k < width; ++k) {
      double& x = d[r * width + k];
      if (x <= 0.0) {
        x = 0.0;
        continue;
      }
      double pmi = std::log(x * total / (row_sum[r] * col_sum[k]));
      x = pmi > 0.0 ? pmi : 0.0;
    }
  return out;
}

}  // namespace ccpsem
