#include "ccpsem/homomorphism.hpp"

#include <cctype>
#include <sstream>

#include "ccpsem/errors.hpp"

namespace ccpsem {

void TypeHom::map(const std::string& basic, const Type& image) {
  basic_map_.insert_or_assign(basic, image);
}

Type apply_type_hom(const TypeHom& h, const Type& t) {
  if (t.is_basic()) {
    auto it = h.basic_map().find(t.name());
    if (it == h.basic_map().end())
      throw UnmappedBasicType("no image for basic type " + t.name());
    return it->second;
  }
  return Type::arrow(apply_type_hom(h, t.domain()), apply_type_hom(h, t.codomain()));
}

namespace {

bool is_sequence_name(const std::string& s) {
  return s.size() > 1 && s.back() == '*';
}

SExpr expand_sequences(const SExpr& e, std::size_t arity) {
  if (e.atom) return e;
  SExpr out;
  out.atom = false;
  out.position = e.position;
  for (const SExpr& item : e.items) {
    if (item.atom && is_sequence_name(item.text)) {
      std::string stem = item.text.substr(0, item.text.size() - 1);
      for (std::size_t i = 1; i <= arity; ++i) {
        SExpr x;
        x.text = stem + std::to_string(i);
        x.position = item.position;
        out.items.push_back(x);
      }
    } else {
      out.items.push_back(expand_sequences(item, arity));
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

SchemaInstance instantiate_schema(const SchemaEntry& s, const std::vector<Type>& alpha,
                                  const TypeHom& h, const Signature& target) {
  Type abstract = instantiate_pattern(s.type_pattern, alpha);
  Type expected = apply_type_hom(h, abstract);
  Term image = elaborate(expand_sequences(s.term_template, alpha.size()), target, expected);
  return {abstract, image};
}

void Lexicon::add_entry(const std::string& constant, const Type& abstract_type,
                        const std::string& image_text) {
  source.add_constant(constant, abstract_type);
  try {
    Type expected = apply_type_hom(typehom, abstract_type);
    Term image = parse_term(image_text, target, expected);
    entries.insert_or_assign(constant, LexiconEntry{constant, abstract_type, image});
  } catch (const Error& e) {
    load_issues.push_back({constant, e.what()});
  }
}

void Lexicon::add_entry(const std::string& constant, const Type& abstract_type,
                        const Term& image) {
  source.add_constant(constant, abstract_type);
  entries.insert_or_assign(constant, LexiconEntry{constant, abstract_type, image});
}

void Lexicon::add_schema(const std::string& constant, const Type& pattern,
                         const std::string& template_text) {
  source.add_schema(constant, pattern);
  schemas.insert_or_assign(constant,
                           SchemaEntry{constant, pattern, parse_sexpr(template_text)});
}

void Lexicon::add_alias(const std::string& alias, const std::string& target_name) {
  std::string resolved = resolve_alias(target_name);
  if (const Type* t = source.find_constant(resolved)) {
    source.add_constant(alias, *t);
  } else if (const Type* p = source.find_schema(resolved)) {
    source.add_schema(alias, *p);
  } else {
    throw UnknownSymbol(target_name);
  }
  aliases.insert_or_assign(alias, resolved);
}

std::string Lexicon::resolve_alias(const std::string& name) const {
  auto it = aliases.find(name);
  return it == aliases.end() ? name : it->second;
}

Term Lexicon::image_of(const Term& constant) const {
  std::string name = resolve_alias(constant.name());
  if (auto it = entries.find(name); it != entries.end()) {
    if (it->second.abstract_type != constant.type())
      throw TypeMismatch(to_string(it->second.abstract_type), to_string(constant.type()),
                         "abstract constant " + constant.name());
    return it->second.image;
  }
  if (auto it = schemas.find(name); it != schemas.end()) {
    auto alpha = match_pattern(it->second.type_pattern, constant.type());
    if (!alpha)
      throw TypeMismatch("an instance of " + to_string(it->second.type_pattern),
                         to_string(constant.type()), "abstract constant " + constant.name());
    return instantiate_schema(it->second, *alpha, typehom, target).image;
  }
  throw MissingEntry("lexicon '" + this->name + "' has no entry for '" +
                     constant.name() + "'");
}

Term apply_term_hom(const Lexicon& lex, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return lex.image_of(t);
    case Term::Kind::Variable:
      return Term::variable(t.name(), apply_type_hom(lex.typehom, t.type()));
    case Term::Kind::Application:
      return Term::application(apply_term_hom(lex, t.function()),
                               apply_term_hom(lex, t.argument()));
    case Term::Kind::Abstraction:
      return Term::abstraction(t.name(), apply_type_hom(lex.typehom, t.type()),
                               apply_term_hom(lex, t.body()));
  }
  return t;
}

Lexicon parse_lexicon(std::string_view text, const std::string& name) {
  Lexicon lex;
  lex.name = name;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    std::istringstream words(line);
    std::string keyword;
    words >> keyword;
    auto after = [&](std::size_t from) { return trim(std::string_view(line).substr(from)); };
    try {
      if (keyword == "lexicon") {
        words >> lex.name;
      } else if (keyword == "basictype") {
        std::string b;
        while (words >> b) lex.target.add_basic(b);
      } else if (keyword == "typedef") {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected '='", lineno);
        std::string n = trim(std::string_view(line).substr(8, eq - 8));
        lex.target.add_abbrev(n, lex.target.parse_type(after(eq + 1)));
      } else if (keyword == "hom") {
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw ParseError("expected '->'", lineno);
        std::string basic = trim(std::string_view(line).substr(3, arrow - 3));
        lex.source.add_basic(basic);
        lex.typehom.map(basic, lex.target.parse_type(after(arrow + 2)));
      } else if (keyword == "object") {
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected ':'", lineno);
        std::string n = trim(std::string_view(line).substr(6, colon - 6));
        lex.target.add_constant(n, lex.target.parse_type(after(colon + 1)));
      } else if (keyword == "entry" || keyword == "schema") {
        auto colon = line.find(':');
        auto arrow = line.find("=>");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
          throw ParseError("expected '<constant> : <type> => <term>'", lineno);
        std::string n = trim(std::string_view(line).substr(keyword.size(), colon - keyword.size()));
        std::string type_text = trim(std::string_view(line).substr(colon + 1, arrow - colon - 1));
        std::string body = after(arrow + 2);
        if (keyword == "entry") {
          lex.add_entry(n, lex.source.parse_type(type_text), body);
        } else {
          TypeScope scope = lex.source.type_scope();
          scope.basics.insert(kSequenceVariable);
          lex.add_schema(n, parse_type(type_text, scope), body);
        }
      } else if (keyword == "alias") {
        std::string a, b;
        if (!(words >> a >> b)) throw ParseError("expected 'alias <name> <constant>'", lineno);
        lex.add_alias(a, b);
      } else if (keyword == "nominal") {
        std::string verb, noun;
        if (!(words >> verb >> noun)) throw ParseError("expected 'nominal <verb> <noun>'", lineno);
        lex.nominals.insert_or_assign(verb, noun);
      } else {
        throw ParseError("unknown directive '" + keyword + "'", lineno);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::string& path) {
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (auto dot = stem.find('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_lexicon(read_file(path), stem);
}

ValidationReport validate_lexicon(const Lexicon& lex) {
  ValidationReport report;
  report.failures = lex.load_issues;
  for (const auto& [name, entry] : lex.entries) {
    try {
      Type expected = apply_type_hom(lex.typehom, entry.abstract_type);
      Type actual = infer_type(entry.image, lex.target);
      if (actual != expected)
        report.failures.push_back(
            {name, "image has type " + to_string(actual, lex.target.abbrevs()) +
                       ", expected " + to_string(expected, lex.target.abbrevs())});
      else if (!free_variables(entry.image).empty())
        report.failures.push_back({name, "image is not closed"});
    } catch (const Error& e) {
      report.failures.push_back({name, e.what()});
    }
  }
  // Schemas are checked at arities 0, 1 and 2 over the source basic types.
  std::vector<std::vector<Type>> samples{{}};
  for (const auto& b : lex.source.basic_types()) {
    samples.push_back({Type::basic(b)});
    for (const auto& c : lex.source.basic_types())
      samples.push_back({Type::basic(b), Type::basic(c)});
  }
  for (const auto& [name, schema] : lex.schemas) {
    for (const auto& alpha : samples) {
      try {
        SchemaInstance inst = instantiate_schema(schema, alpha, lex.typehom, lex.target);
        Type expected = apply_type_hom(lex.typehom, inst.abstract_type);
        if (infer_type(inst.image, lex.target) != expected || !free_variables(inst.image).empty())
          report.failures.push_back({name, "instance at " + to_string(inst.abstract_type) +
                                               " is ill-typed"});
      } catch (const Error& e) {
        report.failures.push_back({name, e.what()});
      }
    }
  }
  return report;
}

}  // namespace ccpsem
