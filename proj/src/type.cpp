#include "ccpsem/type.hpp"

#include <cctype>
#include <optional>

#include "ccpsem/errors.hpp"

namespace ccpsem {

struct Type::Node {
  std::string name;
  std::optional<Type> domain;
  std::optional<Type> codomain;
};

Type Type::basic(std::string name) {
  return Type(std::make_shared<const Node>(Node{std::move(name), {}, {}}));
}

Type Type::arrow(Type domain, Type codomain) {
  return Type(std::make_shared<const Node>(
      Node{{}, std::move(domain), std::move(codomain)}));
}

Type Type::arrows(const std::vector<Type>& args, Type result) {
  Type t = std::move(result);
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = arrow(*it, t);
  return t;
}

bool Type::is_basic() const { return !node_->domain.has_value(); }

const std::string& Type::name() const { return node_->name; }

const Type& Type::domain() const { return *node_->domain; }

const Type& Type::codomain() const { return *node_->codomain; }

std::vector<Type> Type::arguments() const {
  std::vector<Type> out;
  const Type* t = this;
  while (t->is_arrow()) {
    out.push_back(t->domain());
    t = &t->codomain();
  }
  return out;
}

const Type& Type::result() const {
  const Type* t = this;
  while (t->is_arrow()) t = &t->codomain();
  return *t;
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_basic() != b.is_basic()) return false;
  if (a.is_basic()) return a.name() == b.name();
  return a.domain() == b.domain() && a.codomain() == b.codomain();
}

bool operator<(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return false;
  if (a.is_basic() != b.is_basic()) return a.is_basic();
  if (a.is_basic()) return a.name() < b.name();
  if (a.domain() != b.domain()) return a.domain() < b.domain();
  return a.codomain() < b.codomain();
}

const Type* TypeScope::find_abbrev(std::string_view name) const {
  for (const auto& [n, t] : abbrevs)
    if (n == name) return &t;
  return nullptr;
}

namespace {

bool all_single_char(const Type& t, const TypeAbbrevs& abbrevs) {
  for (const auto& [n, expansion] : abbrevs)
    if (t == expansion) return n.size() == 1;
  if (t.is_basic()) return t.name().size() == 1;
  return all_single_char(t.domain(), abbrevs) &&
         all_single_char(t.codomain(), abbrevs);
}

std::string render(const Type& t, const TypeAbbrevs& abbrevs, bool compact) {
  for (const auto& [n, expansion] : abbrevs)
    if (t == expansion) return n;
  if (t.is_basic()) return t.name();
  std::string left = render(t.domain(), abbrevs, compact);
  bool wrap = t.domain().is_arrow();
  for (const auto& [n, expansion] : abbrevs)
    if (t.domain() == expansion) wrap = false;
  if (wrap) left = "(" + left + ")";
  std::string right = render(t.codomain(), abbrevs, compact);
  return compact ? left + right : left + " " + right;
}

class TypeParser {
public:
  TypeParser(std::string_view text, const TypeScope& scope)
      : text_(text), scope_(scope) {}

  Type parse() {
    Type t = sequence();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError("unexpected ')' in type", pos_);
    return t;
  }

private:
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'' || c == '-' || c == '*';
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  Type sequence() {
    std::vector<Type> items;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ')') break;
      if (text_[pos_] == '(') {
        std::size_t open = pos_++;
        Type inner = sequence();
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ')')
          throw SyntaxError("unbalanced '(' in type", open);
        ++pos_;
        items.push_back(inner);
        continue;
      }
      std::size_t start = pos_;
      while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
      if (start == pos_)
        throw SyntaxError(std::string("unexpected character '") +
                              text_[pos_] + "' in type",
                          pos_);
      for (Type& t : resolve(text_.substr(start, pos_ - start), start))
        items.push_back(std::move(t));
    }
    if (items.empty()) throw SyntaxError("empty type", pos_);
    Type t = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;)
      t = Type::arrow(items[i], t);
    return t;
  }

  std::optional<Type> single(std::string_view name) const {
    if (const Type* a = scope_.find_abbrev(name)) return *a;
    if (scope_.basics.count(std::string(name))) return Type::basic(std::string(name));
    return std::nullopt;
  }

  std::vector<Type> resolve(std::string_view token, std::size_t at) const {
    if (auto t = single(token)) return {*t};
    std::vector<Type> out;
    for (char c : token) {
      std::string one(1, c);
      if (auto t = single(one)) {
        out.push_back(*t);
      } else if (scope_.open && std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back(Type::basic(one));
      } else {
        (void)at;
        throw UnknownSymbol(std::string(token));
      }
    }
    return out;
  }

  std::string_view text_;
  const TypeScope& scope_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Type& t) { return to_string(t, {}); }

std::string to_string(const Type& t, const TypeAbbrevs& abbrevs) {
  return render(t, abbrevs, all_single_char(t, abbrevs));
}

Type parse_type(std::string_view text, const TypeScope& scope) {
  return TypeParser(text, scope).parse();
}

void collect_basics(const Type& t, std::set<std::string>& out) {
  if (t.is_basic()) {
    out.insert(t.name());
    return;
  }
  collect_basics(t.domain(), out);
  collect_basics(t.codomain(), out);
}

}  // namespace ccpsem

namespace ccpsem {

namespace {

bool is_sequence_arrow(const Type& t) {
  return t.is_arrow() && t.domain().is_basic() &&
         t.domain().name() == kSequenceVariable;
}

bool match_rec(const Type& pattern, const Type& concrete,
               std::optional<std::vector<Type>>& alpha) {
  if (is_sequence_arrow(pattern)) {
    const Type& rest = pattern.codomain();
    if (alpha) {
      const Type* cur = &concrete;
      for (const Type& a : *alpha) {
        if (cur->is_basic() || cur->domain() != a) return false;
        cur = &cur->codomain();
      }
      return match_rec(rest, *cur, alpha);
    }
    std::vector<Type> prefix;
    const Type* cur = &concrete;
    for (;;) {
      std::optional<std::vector<Type>> attempt = prefix;
      if (match_rec(rest, *cur, attempt)) {
        alpha = attempt;
        return true;
      }
      if (cur->is_basic()) return false;
      prefix.push_back(cur->domain());
      cur = &cur->codomain();
    }
  }
  if (pattern.is_basic()) return pattern == concrete;
  if (concrete.is_basic()) return false;
  return match_rec(pattern.domain(), concrete.domain(), alpha) &&
         match_rec(pattern.codomain(), concrete.codomain(), alpha);
}

}  // namespace

Type instantiate_pattern(const Type& pattern, const std::vector<Type>& alpha) {
  if (is_sequence_arrow(pattern))
    return Type::arrows(alpha, instantiate_pattern(pattern.codomain(), alpha));
  if (pattern.is_basic()) return pattern;
  return Type::arrow(instantiate_pattern(pattern.domain(), alpha),
                     instantiate_pattern(pattern.codomain(), alpha));
}

std::optional<std::vector<Type>> match_pattern(const Type& pattern,
                                               const Type& concrete) {
  std::optional<std::vector<Type>> alpha;
  if (!match_rec(pattern, concrete, alpha)) return std::nullopt;
  if (!alpha) alpha.emplace();
  return alpha;
}

}  // namespace ccpsem
