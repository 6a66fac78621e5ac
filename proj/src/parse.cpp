#include "ccpsem/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ccpsem/errors.hpp"

namespace ccpsem {

void Signature::add_basic(const std::string& name) { basics_.insert(name); }

void Signature::add_abbrev(const std::string& name, const Type& expansion) {
  for (auto& [n, t] : abbrevs_) {
    if (n == name) {
      t = expansion;
      return;
    }
  }
  abbrevs_.emplace_back(name, expansion);
}

void Signature::add_constant(const std::string& name, const Type& type) {
  if (has_symbol(name)) throw Error("duplicate symbol '" + name + "'");
  constants_.emplace(name, type);
}

void Signature::add_schema(const std::string& name, const Type& pattern) {
  if (has_symbol(name)) throw Error("duplicate symbol '" + name + "'");
  schemas_.emplace(name, pattern);
}

const Type* Signature::find_constant(const std::string& name) const {
  auto it = constants_.find(name);
  return it == constants_.end() ? nullptr : &it->second;
}

const Type* Signature::find_schema(const std::string& name) const {
  auto it = schemas_.find(name);
  return it == schemas_.end() ? nullptr : &it->second;
}

bool Signature::has_symbol(const std::string& name) const {
  return constants_.count(name) || schemas_.count(name);
}

TypeScope Signature::type_scope() const {
  TypeScope scope;
  scope.basics = basics_;
  scope.abbrevs = abbrevs_;
  return scope;
}

Type Signature::parse_type(std::string_view text) const {
  return ccpsem::parse_type(text, type_scope());
}

std::vector<std::string> Signature::undeclared_basics() const {
  std::vector<std::string> out;
  for (const auto& [name, type] : constants_) {
    std::set<std::string> used;
    collect_basics(type, used);
    for (const auto& b : used) {
      if (!basics_.count(b)) {
        out.push_back(name);
        break;
      }
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

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

Signature parse_signature(std::string_view text) {
  Signature sig;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    std::istringstream words(line);
    std::string keyword;
    words >> keyword;
    try {
      if (keyword == "basictype") {
        std::string name;
        while (words >> name) sig.add_basic(name);
      } else if (keyword == "constant" || keyword == "schema") {
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected ':'", lineno);
        std::string name = trim(line.substr(keyword.size(), colon - keyword.size()));
        std::string type_text = trim(line.substr(colon + 1));
        if (keyword == "constant") {
          sig.add_constant(name, sig.parse_type(type_text));
        } else {
          TypeScope scope = sig.type_scope();
          scope.basics.insert(kSequenceVariable);
          sig.add_schema(name, ccpsem::parse_type(type_text, scope));
        }
      } else if (keyword == "typedef") {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected '='", lineno);
        std::string name = trim(line.substr(keyword.size(), eq - keyword.size()));
        sig.add_abbrev(name, sig.parse_type(trim(line.substr(eq + 1))));
      } else {
        throw ParseError("unknown directive '" + keyword + "'", lineno);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return sig;
}

Signature load_signature(const std::string& path) {
  return parse_signature(read_file(path));
}

// ---------------------------------------------------------------------------
// S-expressions

namespace {

class SExprReader {
public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  SExpr read_top() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("empty term", pos_);
    SExpr e = read();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError("trailing input after term", pos_);
    return e;
  }

private:
  // Whitespace, and '#' comments running to the end of the line.
  void skip_ws() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == ')') throw SyntaxError("unexpected ')'", pos_);
    if (c == '(') {
      SExpr list;
      list.atom = false;
      list.position = pos_++;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size())
          throw SyntaxError("unbalanced '('", list.position);
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    SExpr atom;
    atom.position = pos_;
    int depth = 0;
    bool annotated = false;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) && depth == 0) break;
      if (d == '(') {
        if (!annotated) break;
        ++depth;
      } else if (d == ')') {
        if (depth == 0) break;
        --depth;
      } else if (d == ':') {
        annotated = true;
      }
      atom.text += d;
      ++pos_;
    }
    if (depth != 0) throw SyntaxError("unbalanced '(' in annotation", atom.position);
    return atom;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_lambda_keyword(const SExpr& e) {
  return e.atom && (e.text == "lam" || e.text == "λ" || e.text == "\\" ||
                    e.text == "lambda");
}

bool is_lambda(const SExpr& e) {
  return !e.atom && !e.items.empty() && is_lambda_keyword(e.items.front());
}

struct Binder {
  std::string name;
  std::optional<std::string> annotation;
};

Binder split_binder(const SExpr& e) {
  if (!e.atom) throw SyntaxError("binder must be a name", e.position);
  auto colon = e.text.find(':');
  if (colon == std::string::npos) return {e.text, std::nullopt};
  if (colon == 0) throw SyntaxError("binder without a name", e.position);
  return {e.text.substr(0, colon), e.text.substr(colon + 1)};
}

class Elaborator {
public:
  Elaborator(const Signature& sig, const std::vector<FreeVariable>& free)
      : sig_(sig) {
    for (const auto& f : free) env_.emplace_back(f.name, f.type);
  }

  Term elab(const SExpr& e, const std::optional<Type>& expected) {
    if (e.atom) return elab_atom(e, expected);
    if (e.items.empty()) throw SyntaxError("empty application", e.position);
    if (is_lambda(e)) return elab_lambda(e, expected, nullptr);
    if (e.items.size() == 1) return elab(e.items.front(), expected);
    return elab_app(e, expected);
  }

private:
  const Type* lookup_var(const std::string& name) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  const Type* lookup_schema(const SExpr& e) const {
    if (!e.atom || lookup_var(e.text) || sig_.find_constant(e.text)) return nullptr;
    return sig_.find_schema(e.text);
  }

  static Term check(Term t, const std::optional<Type>& expected,
                    const SExpr& where, const Type& actual) {
    if (expected && *expected != actual)
      throw TypeMismatch(to_string(*expected), to_string(actual),
                         "'" + to_string(where) + "'");
    return t;
  }

  Term elab_atom(const SExpr& e, const std::optional<Type>& expected) {
    if (is_lambda_keyword(e)) throw SyntaxError("misplaced binder keyword", e.position);
    if (e.text.find(':') != std::string::npos)
      throw SyntaxError("type annotation outside a binder", e.position);
    if (const Type* t = lookup_var(e.text))
      return check(Term::variable(e.text, *t), expected, e, *t);
    if (const Type* t = sig_.find_constant(e.text))
      return check(Term::constant(e.text, *t), expected, e, *t);
    if (const Type* pattern = sig_.find_schema(e.text)) {
      if (!expected)
        throw SyntaxError("cannot determine the instance of schematic '" +
                              e.text + "'; apply it to an argument",
                          e.position);
      if (!match_pattern(*pattern, *expected))
        throw TypeMismatch(to_string(*expected), "an instance of " + to_string(*pattern),
                           "'" + e.text + "'");
      return Term::constant(e.text, *expected);
    }
    throw UnknownSymbol(e.text);
  }

  Term elab_lambda(const SExpr& e, std::optional<Type> expected,
                   const std::vector<Type>* arg_types) {
    if (e.items.size() < 3)
      throw SyntaxError("abstraction needs a binder and a body", e.position);
    std::vector<std::pair<std::string, Type>> bound;
    for (std::size_t i = 1; i + 1 < e.items.size(); ++i) {
      Binder b = split_binder(e.items[i]);
      std::optional<Type> annotated;
      if (b.annotation) annotated = sig_.parse_type(*b.annotation);
      std::optional<Type> known;
      if (expected) {
        if (expected->is_basic())
          throw TypeMismatch(to_string(*expected), "a function",
                             "'" + to_string(e) + "'");
        known = expected->domain();
        expected = expected->codomain();
      } else if (arg_types && i - 1 < arg_types->size()) {
        known = (*arg_types)[i - 1];
      }
      if (known && annotated && *known != *annotated)
        throw TypeMismatch(to_string(*known), to_string(*annotated),
                           "binder " + b.name);
      if (!known && !annotated)
        throw SyntaxError("binder '" + b.name + "' needs a type annotation",
                          e.items[i].position);
      bound.emplace_back(b.name, known ? *known : *annotated);
      env_.emplace_back(b.name, bound.back().second);
    }
    Term body = elab(e.items.back(), expected);
    env_.erase(env_.end() - static_cast<std::ptrdiff_t>(bound.size()), env_.end());
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      body = Term::abstraction(it->first, it->second, body);
    return body;
  }

  Term elab_app(const SExpr& e, const std::optional<Type>& expected) {
    const SExpr& head_expr = e.items.front();
    const std::size_t nargs = e.items.size() - 1;
    std::vector<std::optional<Term>> args(nargs);
    std::optional<Term> head;

    if (const Type* pattern = lookup_schema(head_expr)) {
      std::optional<std::vector<Type>> alpha;
      if (expected) {
        // Pattern with its first nargs arguments applied must match.
        Type rest = *pattern;
        std::size_t k = 0;
        for (; k < nargs && rest.is_arrow(); ++k) rest = rest.codomain();
        if (k == nargs) alpha = match_pattern(rest, *expected);
      }
      if (!alpha) {
        args[0] = elab(e.items[1], std::nullopt);
        if (pattern->is_basic())
          throw TypeMismatch("an arrow type", to_string(*pattern), head_expr.text);
        alpha = match_pattern(pattern->domain(), infer_type(*args[0]));
        if (!alpha)
          throw TypeMismatch("an instance of " + to_string(pattern->domain()),
                             to_string(infer_type(*args[0])),
                             "first argument of '" + head_expr.text + "'");
      }
      head = Term::constant(head_expr.text, instantiate_pattern(*pattern, *alpha));
    } else if (is_lambda(head_expr) && needs_context(head_expr)) {
      std::vector<Type> arg_types;
      for (std::size_t i = 0; i < nargs; ++i) {
        args[i] = elab(e.items[i + 1], std::nullopt);
        arg_types.push_back(infer_type(*args[i]));
      }
      if (expected)
        head = elab_lambda(head_expr, Type::arrows(arg_types, *expected), nullptr);
      else
        head = elab_lambda(head_expr, std::nullopt, &arg_types);
    } else {
      head = elab(head_expr, std::nullopt);
    }

    Term result = *head;
    Type type = infer_type(result);
    for (std::size_t i = 0; i < nargs; ++i) {
      if (type.is_basic())
        throw TypeMismatch("an arrow type", to_string(type),
                           "head of '" + to_string(e) + "'");
      Term arg = args[i] ? *args[i] : elab(e.items[i + 1], type.domain());
      Type arg_type = infer_type(arg);
      if (arg_type != type.domain())
        throw TypeMismatch(to_string(type.domain()), to_string(arg_type),
                           "argument '" + to_string(e.items[i + 1]) + "'");
      result = Term::application(result, arg);
      type = type.codomain();
    }
    return check(result, expected, e, type);
  }

  static bool needs_context(const SExpr& lam) {
    for (std::size_t i = 1; i + 1 < lam.items.size(); ++i)
      if (lam.items[i].atom && lam.items[i].text.find(':') == std::string::npos)
        return true;
    return false;
  }

  const Signature& sig_;
  std::vector<std::pair<std::string, Type>> env_;
};

}  // namespace

SExpr parse_sexpr(std::string_view text) { return SExprReader(text).read_top(); }

std::string to_string(const SExpr& e) {
  if (e.atom) return e.text;
  std::string out = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += " ";
    out += to_string(e.items[i]);
  }
  return out + ")";
}

Term elaborate(const SExpr& e, const Signature& sig,
               const std::optional<Type>& expected,
               const std::vector<FreeVariable>& free) {
  return Elaborator(sig, free).elab(e, expected);
}

Term parse_term(std::string_view text, const Signature& sig,
                const std::optional<Type>& expected,
                const std::vector<FreeVariable>& free) {
  return elaborate(parse_sexpr(text), sig, expected, free);
}

Type infer_type(const Term& t, const Signature& sig) {
  for (const Term& c : constants_of(t)) {
    if (const Type* declared = sig.find_constant(c.name())) {
      if (*declared != c.type())
        throw TypeMismatch(to_string(*declared), to_string(c.type()),
                           "constant " + c.name());
    } else if (const Type* pattern = sig.find_schema(c.name())) {
      if (!match_pattern(*pattern, c.type()))
        throw TypeMismatch("an instance of " + to_string(*pattern),
                           to_string(c.type()), "constant " + c.name());
    } else {
      throw UnknownSymbol(c.name());
    }
  }
  return infer_type(t);
}

}  // namespace ccpsem
