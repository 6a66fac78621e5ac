#include "ccpsem/dynamic.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <set>
#include <variant>

#include "ccpsem/errors.hpp"
#include "ccpsem/normalize.hpp"

namespace ccpsem {

Arithmetic parse_arithmetic(const std::string& name) {
  if (name == "counting") return Arithmetic::Counting;
  if (name == "binary") return Arithmetic::Binary;
  throw Error("unknown mode '" + name + "' (counting|binary)");
}

std::string to_string(const Quantifier& q) {
  switch (q.kind) {
    case Quantifier::Kind::Forall: return "QALL";
    case Quantifier::Kind::Some: return "QSOME";
    case Quantifier::Kind::Most: return "QMOST";
    case Quantifier::Kind::AtLeast: return "QATLEAST" + std::to_string(q.k);
    case Quantifier::Kind::AtMost: return "QATMOST" + std::to_string(q.k);
  }
  return "Q";
}

Updater::Updater(UpdateMode mode) : mode_(mode), rng_(mode.seed) {}

std::string Updater::nominal(const std::string& verb) const {
  auto it = nominals.find(verb);
  return it == nominals.end() ? verb : it->second;
}

Context Updater::bump(const std::string& op, const std::vector<Cell>& cells, int sign, Context c) {
  std::vector<std::vector<std::size_t>> index;
  for (const Cell& cell : cells) {
    std::vector<std::size_t> ix;
    for (std::size_t a = 0; a < cell.size(); ++a) ix.push_back(c.numeric.axis(a).index(cell[a]));
    index.push_back(std::move(ix));
  }
  const bool binary = mode_.arithmetic == Arithmetic::Binary;
  if (binary) c.ensure_binary();
  for (const auto& ix : index) {
    if (binary) {
      c.binary->at(ix) = sign > 0 ? 1.0 : 0.0;
    } else {
      c.numeric.at(ix) += sign;
      if (c.binary) c.binary->at(ix) = sign > 0 ? 1.0 : 0.0;
    }
  }
  LogEntry e;
  e.op = op;
  e.cells = cells;
  e.sign = sign;
  e.detail = binary ? (sign > 0 ? "+'" : "-'") : (sign > 0 ? "+1" : "-1");
  log_.push_back(std::move(e));
  return c;
}

Context Updater::F(const std::string& adj, const std::string& noun, Context c) {
  if (c.backend == Backend::Matrix) return bump("F", {{adj, noun}}, 1, std::move(c));
  return bump("F", {{noun, "is", adj}}, 1, std::move(c));
}

Context Updater::G(const std::string& verb, const std::string& subj, Context c) {
  if (c.backend == Backend::Matrix) return bump("G", {{verb, subj}}, 1, std::move(c));
  return bump("G", {{subj, "is-a", nominal(verb)}}, 1, std::move(c));
}

Context Updater::I(const std::string& verb, const std::string& obj, const std::string& subj,
                   Context c) {
  if (c.backend == Backend::Matrix)
    return bump("I", {{verb, subj}, {subj, obj}, {verb, obj}}, 1, std::move(c));
  return bump("I", {{subj, verb, obj}}, 1, std::move(c));
}

Context Updater::J(const std::string& att, const std::string& subj, Context c) {
  if (c.backend == Backend::Cube)
    throw BackendMismatch("J on a cube needs the embedded proposition (use JP)");
  return bump("J", {{att, subj}}, 1, std::move(c));
}

Context Updater::JP(const std::string& att, const std::string& subj, const std::string& label,
                    Context c) {
  if (c.backend == Backend::Matrix) return bump("J", {{att, subj}}, 1, std::move(c));
  c.intern(label);
  return bump("J", {{subj, att, label}}, 1, std::move(c));
}

Context Updater::who(const std::string& head, const std::string& verb, const std::string& other,
                     Context c) {
  if (c.backend != Backend::Cube) throw BackendMismatch("WHO updates need a cube context");
  return bump("WHO", {{head, verb, other}}, 1, std::move(c));
}

Context Updater::isa(const std::string& entity, const std::string& noun, Context c) {
  if (c.backend == Backend::Matrix) return bump("ISA", {{entity, noun}}, 1, std::move(c));
  return bump("ISA", {{entity, "is-a", noun}}, 1, std::move(c));
}

Context Updater::negation(const std::string& verb, const std::string& obj,
                          const std::string& subj, Context c) {
  auto writes = probe([&] { I(verb, obj, subj, c); });
  return negate(writes, std::move(c));
}

Context Updater::negate(const std::vector<LogEntry>& writes, Context c) {
  if (mode_.arithmetic == Arithmetic::Binary)
    return bump("NEG", written_cells(writes), -1, std::move(c));
  for (const auto& e : writes) c = bump("NEG", e.cells, -e.sign, std::move(c));
  return c;
}

std::vector<std::string> Updater::restrictor(const std::string& noun, const Context& c) const {
  if (c.backend != Backend::Cube) throw BackendMismatch("quantifier updates need a cube context");
  std::vector<std::string> out;
  auto isa_ix = c.vocab.find("is-a");
  auto noun_ix = c.vocab.find(noun);
  if (!isa_ix || !noun_ix) return out;
  const Tensor& t = c.binary ? *c.binary : c.numeric;
  for (std::size_t x = 0; x < c.vocab.size(); ++x)
    if (t.at({x, *isa_ix, *noun_ix}) > 0) out.push_back(c.vocab.word(x));
  return out;
}

std::size_t Updater::uniform(std::size_t lo, std::size_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return lo + static_cast<std::size_t>(rng_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do draw = rng_(); while (draw >= limit);
  return lo + static_cast<std::size_t>(draw % range);
}

Context Updater::quantify(const Quantifier& q, const std::string& noun,
                          const std::function<Context(const std::string&, const Context&)>& scope,
                          Context c) {
  std::vector<std::string> domain = restrictor(noun, c);
  const std::size_t n = domain.size();
  if (n == 0) {
    warnings_.push_back("empty restrictor for '" + noun + "': context unchanged");
    log_.push_back({to_string(q), {}, "noun=" + noun, false, 0});
    return c;
  }
  std::size_t lo = n, hi = n;
  switch (q.kind) {
    case Quantifier::Kind::Forall: break;
    case Quantifier::Kind::Some: lo = hi = 1; break;
    case Quantifier::Kind::Most: lo = n / 2 + 1; break;
    case Quantifier::Kind::AtLeast:
      if (q.k > n) warnings_.push_back("at least " + std::to_string(q.k) + " " + noun +
                                       ": only " + std::to_string(n) + " available");
      lo = std::min(q.k, n);
      break;
    case Quantifier::Kind::AtMost:
      lo = q.k == 0 ? 0 : 1;
      hi = std::min(q.k, n);
      break;
  }
  std::size_t size = lo == hi ? lo : uniform(lo, hi);
  std::vector<std::string> chosen = domain;
  if (size < n) {
    for (std::size_t i = 0; i < size; ++i) std::swap(chosen[i], chosen[uniform(i, n - 1)]);
    chosen.resize(size);
    std::vector<std::string> ordered;
    for (const auto& x : domain)
      if (std::find(chosen.begin(), chosen.end(), x) != chosen.end()) ordered.push_back(x);
    chosen = std::move(ordered);
  }
  LogEntry sel{to_string(q), {}, "noun=" + noun, false, 0};
  for (const auto& x : chosen) sel.cells.push_back({x});
  log_.push_back(std::move(sel));
  for (const auto& x : chosen) c = scope(x, c);
  return c;
}

std::vector<LogEntry> Updater::probe(const std::function<void()>& f) {
  const std::size_t mark = log_.size();
  const std::size_t warn_mark = warnings_.size();
  auto saved_rng = rng_;
  f();
  std::vector<LogEntry> writes;
  for (std::size_t i = mark; i < log_.size(); ++i)
    if (log_[i].write) writes.push_back(log_[i]);
  log_.resize(mark);
  warnings_.resize(warn_mark);
  rng_ = saved_rng;
  return writes;
}

std::string format_cells(const std::vector<Cell>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < cells[i].size(); ++j) {
      if (j) out += '/';
      out += cells[i][j];
    }
  }
  return out;
}

std::string format_log_entry(const LogEntry& e) {
  return e.op + "\t" + format_cells(e.cells) + "\t" + e.detail;
}

std::vector<Cell> written_cells(const std::vector<LogEntry>& entries) {
  std::set<Cell> cells;
  for (const auto& e : entries)
    if (e.write) cells.insert(e.cells.begin(), e.cells.end());
  return {cells.begin(), cells.end()};
}

namespace {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Env {
  std::string name;
  ValuePtr value;
  std::shared_ptr<const Env> next;
};
using EnvPtr = std::shared_ptr<const Env>;

struct Closure {
  Term abstraction;
  EnvPtr env;
};

struct Primitive {
  std::string name;
  std::size_t arity = 0;
  std::vector<ValuePtr> args;
};

struct Word {
  std::string text;
};

struct Value {
  std::variant<Word, Context, Closure, Primitive> v;
};

std::optional<std::size_t> primitive_arity(const std::string& name) {
  static const std::map<std::string, std::size_t> fixed{
      {"F", 3}, {"G", 3}, {"I", 4}, {"J", 3}, {"JP", 4}, {"ISA", 3}, {"NOT", 2},
      {"WHO", 4}, {"FORALL", 3}, {"SOME", 3}, {"MOST", 3}};
  if (auto it = fixed.find(name); it != fixed.end()) return it->second;
  for (const char* prefix : {"AT_LEAST_", "AT_MOST_"}) {
    std::string p(prefix);
    if (name.size() > p.size() && name.rfind(p, 0) == 0 &&
        std::all_of(name.begin() + p.size(), name.end(), ::isdigit))
      return 3;
  }
  return std::nullopt;
}

std::optional<Quantifier> quantifier_of(const std::string& name) {
  if (name == "FORALL") return Quantifier{Quantifier::Kind::Forall, 0};
  if (name == "SOME") return Quantifier{Quantifier::Kind::Some, 0};
  if (name == "MOST") return Quantifier{Quantifier::Kind::Most, 0};
  if (name.rfind("AT_LEAST_", 0) == 0)
    return Quantifier{Quantifier::Kind::AtLeast, std::stoul(name.substr(9))};
  if (name.rfind("AT_MOST_", 0) == 0)
    return Quantifier{Quantifier::Kind::AtMost, std::stoul(name.substr(8))};
  return std::nullopt;
}

std::string label_of(const std::vector<LogEntry>& writes) {
  std::string out = "{";
  auto cells = written_cells(writes);
  out += format_cells(cells);
  return out + "}";
}

class Interpreter {
public:
  explicit Interpreter(Updater& up) : up_(up) {}

  ValuePtr eval(const Term& t, const EnvPtr& env) {
    switch (t.kind()) {
      case Term::Kind::Constant: {
        if (auto arity = primitive_arity(t.name()))
          return make(Primitive{t.name(), *arity, {}});
        if (t.type().is_basic()) return make(Word{t.name()});
        throw Error("constant '" + t.name() + "' has no update interpretation");
      }
      case Term::Kind::Variable:
        for (const Env* e = env.get(); e; e = e->next.get())
          if (e->name == t.name()) return e->value;
        throw Error("free variable '" + t.name() + "' in update term");
      case Term::Kind::Abstraction:
        return make(Closure{t, env});
      case Term::Kind::Application:
        return apply(eval(t.function(), env), eval(t.argument(), env));
    }
    throw Error("unreachable");
  }

  ValuePtr apply(const ValuePtr& f, const ValuePtr& arg) {
    if (const auto* cl = std::get_if<Closure>(&f->v)) {
      auto env = std::make_shared<const Env>(Env{cl->abstraction.name(), arg, cl->env});
      return eval(cl->abstraction.body(), env);
    }
    if (const auto* prim = std::get_if<Primitive>(&f->v)) {
      Primitive next = *prim;
      next.args.push_back(arg);
      if (next.args.size() == next.arity) return fire(next);
      return make(std::move(next));
    }
    throw Error("application of a non-function in update term");
  }

  Context run(const ValuePtr& update, const Context& c) {
    ValuePtr out = apply(update, make(c));
    if (const auto* ctx = std::get_if<Context>(&out->v)) return *ctx;
    throw Error("update term did not produce a context");
  }

private:
  template <class T>
  static ValuePtr make(T x) {
    return std::make_shared<const Value>(Value{std::move(x)});
  }

  static const std::string& word(const ValuePtr& v, const std::string& prim) {
    if (const auto* w = std::get_if<Word>(&v->v)) return w->text;
    throw Error(prim + ": expected a word argument");
  }
  static const Context& context(const ValuePtr& v, const std::string& prim) {
    if (const auto* c = std::get_if<Context>(&v->v)) return *c;
    throw Error(prim + ": expected a context argument");
  }

  ValuePtr fire(const Primitive& p) {
    const auto& a = p.args;
    const std::string& n = p.name;
    if (n == "F") return make(up_.F(word(a[0], n), word(a[1], n), context(a[2], n)));
    if (n == "G") return make(up_.G(word(a[0], n), word(a[1], n), context(a[2], n)));
    if (n == "I")
      return make(up_.I(word(a[0], n), word(a[1], n), word(a[2], n), context(a[3], n)));
    if (n == "J") return make(up_.J(word(a[0], n), word(a[1], n), context(a[2], n)));
    if (n == "ISA") return make(up_.isa(word(a[0], n), word(a[1], n), context(a[2], n)));
    if (n == "WHO")
      return make(up_.who(word(a[0], n), word(a[1], n), word(a[2], n), context(a[3], n)));
    if (n == "JP") {
      const Context& c = context(a[3], n);
      auto writes = up_.probe([&] { run(a[2], c); });
      return make(up_.JP(word(a[0], n), word(a[1], n), label_of(writes), c));
    }
    if (n == "NOT") {
      const Context& c = context(a[1], n);
      auto writes = up_.probe([&] { run(a[0], c); });
      return make(up_.negate(writes, c));
    }
    if (auto q = quantifier_of(n)) {
      ValuePtr scope = a[1];
      auto body = [&](const std::string& x, const Context& c) {
        return run(apply(scope, make(Word{x})), c);
      };
      return make(up_.quantify(*q, word(a[0], n), body, context(a[2], n)));
    }
    throw Error("unknown primitive '" + n + "'");
  }

  Updater& up_;
};

void collect_words(const Term& t, std::set<std::string>& seen, std::vector<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      if (!primitive_arity(t.name()) && t.type().is_basic() && seen.insert(t.name()).second)
        out.push_back(t.name());
      break;
    case Term::Kind::Variable: break;
    case Term::Kind::Abstraction: collect_words(t.body(), seen, out); break;
    case Term::Kind::Application:
      collect_words(t.function(), seen, out);
      collect_words(t.argument(), seen, out);
      break;
  }
}

}  // namespace

Context run_update(const Term& object_term, const Context& c, Updater& up) {
  Interpreter interp(up);
  return interp.run(interp.eval(object_term, nullptr), c);
}

Term ccp_image(const Term& abstract, const Lexicon& lex) {
  Type t = infer_type(abstract, lex.source);
  if (t != Type::basic("S")) throw TypeMismatch("S", to_string(t), "sentence");
  return beta_eta_normalize(apply_term_hom(lex, abstract));
}

Context apply_ccp(const Term& abstract, const Lexicon& lex, const Context& c, Updater& up) {
  return run_update(ccp_image(abstract, lex), c, up);
}

std::vector<std::string> image_words(const Term& object_term) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  collect_words(object_term, seen, out);
  return out;
}

}  // namespace ccpsem
