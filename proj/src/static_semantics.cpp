#include "ccpsem/static_semantics.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <variant>

#include "ccpsem/errors.hpp"
#include "ccpsem/normalize.hpp"

namespace ccpsem {

std::string to_string(StaticMode m) {
  switch (m) {
    case StaticMode::Contraction: return "contraction";
    case StaticMode::Additive: return "additive";
    case StaticMode::Multiplicative: return "multiplicative";
    case StaticMode::MatMul: return "matmul";
  }
  return "contraction";
}

StaticMode parse_static_mode(const std::string& name) {
  if (name == "contraction" || name == "tensor-contraction") return StaticMode::Contraction;
  if (name == "additive") return StaticMode::Additive;
  if (name == "multiplicative") return StaticMode::Multiplicative;
  if (name == "matmul") return StaticMode::MatMul;
  throw Error("unknown composition mode '" + name + "'");
}

std::size_t rank_of_basic(const std::string& name) {
  if (name == "V") return 1;
  if (name == "M") return 2;
  if (name == "C") return 3;
  if (name == "H") return 4;
  throw RankMismatch("type " + name + " has no tensor rank");
}

StaticModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  StaticModel m;
  bool have_vocab = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ws(line);
    std::string kw;
    if (!(ws >> kw)) continue;
    if (kw == "mode") {
      std::string name;
      ws >> name;
      try {
        m.mode = parse_static_mode(name);
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
      }
    } else if (kw == "assign") {
      std::string constant, file;
      if (!(ws >> constant >> file)) throw ParseError("expected 'assign <constant> <file>'", lineno);
      Tensor t = load_tensor((dir / file).string());
      for (const auto& axis : t.axes()) {
        if (!have_vocab) {
          m.vocab = axis;
          have_vocab = true;
        } else if (axis != m.vocab) {
          throw ParseError("tensor for '" + constant + "' uses a different vocabulary", lineno);
        }
      }
      m.assignments.insert_or_assign(constant, std::move(t));
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno);
    }
  }
  return m;
}

void save_model(const std::string& path, const StaticModel& m) {
  const std::filesystem::path p(path);
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "mode " << to_string(m.mode) << '\n';
  for (const auto& [name, t] : m.assignments) {
    std::string file = p.stem().string() + "." + name + ".tensor";
    save_tensor((p.parent_path() / file).string(), t);
    out << "assign " << name << ' ' << file << '\n';
  }
}

bool is_toolkit_operator(const std::string& name) {
  static const std::set<std::string> ops{"x1", "x2", "plus", "times", "smul", "dot", "rot", "rot2d"};
  return ops.count(name) > 0;
}

StaticModel random_model(const Signature& sig, const Vocabulary& vocab, std::uint64_t seed,
                         StaticMode mode) {
  StaticModel m;
  m.vocab = vocab;
  m.mode = mode;
  std::mt19937_64 rng(seed);
  for (const auto& [name, type] : sig.constants()) {
    if (is_toolkit_operator(name) || !type.is_basic()) continue;
    std::size_t r = rank_of_basic(type.name());
    Tensor t = Tensor::zeros(std::vector<Vocabulary>(r, vocab));
    for (double& x : t.data())
      x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    m.assignments.emplace(name, std::move(t));
  }
  return m;
}

namespace {

struct SValue;
using SValuePtr = std::shared_ptr<const SValue>;

struct SEnv {
  std::string name;
  SValuePtr value;
  std::shared_ptr<const SEnv> next;
};
using SEnvPtr = std::shared_ptr<const SEnv>;

struct SClosure {
  Term abstraction;
  SEnvPtr env;
};

struct SOp {
  std::string name;
  std::vector<SValuePtr> args;
};

struct SValue {
  std::variant<Tensor, double, SClosure, SOp> v;
};

template <class T>
SValuePtr make(T x) {
  return std::make_shared<const SValue>(SValue{std::move(x)});
}

const Tensor& tensor_arg(const SValuePtr& v, const std::string& op) {
  if (const auto* t = std::get_if<Tensor>(&v->v)) return *t;
  throw RankMismatch(op + ": expected a tensor argument");
}

class StaticEvaluator {
public:
  explicit StaticEvaluator(const StaticModel& m) : m_(m) {}

  SValuePtr eval(const Term& t, const SEnvPtr& env) {
    switch (t.kind()) {
      case Term::Kind::Constant: {
        if (is_toolkit_operator(t.name())) return make(SOp{t.name(), {}});
        auto it = m_.assignments.find(t.name());
        if (it == m_.assignments.end())
          throw UnassignedConstant("no tensor assigned to '" + t.name() + "'");
        if (t.type().is_basic() && rank_of_basic(t.type().name()) != it->second.rank())
          throw RankMismatch("'" + t.name() + "' has type " + t.type().name() +
                             " but its tensor has rank " + std::to_string(it->second.rank()));
        return make(it->second);
      }
      case Term::Kind::Variable:
        for (const SEnv* e = env.get(); e; e = e->next.get())
          if (e->name == t.name()) return e->value;
        throw Error("free variable '" + t.name() + "' in object term");
      case Term::Kind::Abstraction:
        return make(SClosure{t, env});
      case Term::Kind::Application:
        return apply(eval(t.function(), env), eval(t.argument(), env));
    }
    throw Error("unreachable");
  }

  SValuePtr apply(const SValuePtr& f, const SValuePtr& arg) {
    if (const auto* cl = std::get_if<SClosure>(&f->v)) {
      auto env = std::make_shared<const SEnv>(SEnv{cl->abstraction.name(), arg, cl->env});
      return eval(cl->abstraction.body(), env);
    }
    if (const auto* op = std::get_if<SOp>(&f->v)) {
      SOp next = *op;
      next.args.push_back(arg);
      if (next.args.size() == 2) return fire(next);
      return make(std::move(next));
    }
    throw Error("application of a non-function in object term");
  }

private:
  SValuePtr fire(const SOp& op) {
    const std::string& n = op.name;
    if (n == "smul") {
      const auto* r = std::get_if<double>(&op.args[0]->v);
      if (!r) throw RankMismatch("smul: expected a real first argument");
      return make(scalar_mul(*r, tensor_arg(op.args[1], n)));
    }
    const Tensor& a = tensor_arg(op.args[0], n);
    const Tensor& b = tensor_arg(op.args[1], n);
    if (n == "x1") return make(contract1(a, b));
    if (n == "x2") return make(contract2(a, b));
    if (n == "plus") return make(pointwise_add(a, b));
    if (n == "times") return make(pointwise_mul(a, b));
    if (n == "dot") return make(dot(a, b));
    if (n == "rot") return make(rotate(a, b, 1, RotationMode::GeneralSpan));
    if (n == "rot2d") return make(rotate(a, b, 1, RotationMode::Literal2D));
    throw Error("unknown operator '" + n + "'");
  }

  const StaticModel& m_;
};

}  // namespace

Tensor evaluate(const Term& object_term, const StaticModel& m) {
  StaticEvaluator ev(m);
  SValuePtr v = ev.eval(object_term, nullptr);
  if (const auto* t = std::get_if<Tensor>(&v->v)) return *t;
  if (std::holds_alternative<double>(v->v)) return Tensor::vector(Vocabulary({"value"}), {std::get<double>(v->v)});
  throw RankMismatch("object term denotes a function, not a tensor");
}

Tensor compose_sentence(const Term& abstract, const Lexicon& lex, const StaticModel& m) {
  Type t = infer_type(abstract, lex.source);
  if (t != Type::basic("S")) throw TypeMismatch("S", to_string(t), "sentence");
  Tensor out = evaluate(beta_eta_normalize(apply_term_hom(lex, abstract)), m);
  if (out.rank() != 1) throw RankMismatch("sentence denotation is not a vector");
  return out;
}

Lexicon make_mode_lexicon(StaticMode mode, const StaticFragment& words) {
  std::string op, word_type, verb_type, inner;
  switch (mode) {
    case StaticMode::Contraction: op = "x1"; word_type = "M"; verb_type = "C"; inner = "x2"; break;
    case StaticMode::Additive: op = "plus"; word_type = "V"; verb_type = "V"; inner = "plus"; break;
    case StaticMode::Multiplicative: op = "times"; word_type = "V"; verb_type = "V"; inner = "times"; break;
    case StaticMode::MatMul: op = "x1"; word_type = "M"; verb_type = "C"; inner = "x2"; break;
  }
  Lexicon lex;
  lex.name = to_string(mode);
  for (const char* b : {"V", "M", "C"}) lex.target.add_basic(b);
  for (const char* b : {"D", "N", "S"}) {
    lex.source.add_basic(b);
    lex.typehom.map(b, Type::basic("V"));
  }
  const Signature& tgt = lex.target;
  lex.target.add_constant(op, tgt.parse_type(op == "x1" ? "M V V" : "V V V"));
  if (inner != op) lex.target.add_constant(inner, tgt.parse_type("C V M"));

  auto object = [&](const std::string& name, const std::string& type) {
    lex.target.add_constant(name, tgt.parse_type(type));
  };
  auto entry = [&](const std::string& name, const std::string& type, const std::string& image) {
    lex.add_entry(name, lex.source.parse_type(type), image);
  };
  for (const auto& n : words.nouns) {
    object(n, "V");
    entry(n, "N", n);
  }
  for (const auto& a : words.adjectives) {
    object(a, word_type);
    entry(a, "N N", "(lam v (" + op + " " + a + " v))");
  }
  for (const auto& [c, o] : words.intransitives) {
    object(o, word_type);
    entry(c, "D S", "(lam v (" + op + " " + o + " v))");
  }
  auto binary_entry = [&](const std::string& c, const std::string& o, const std::string& type) {
    object(o, verb_type);
    entry(c, type, "(lam u v (" + op + " (" + inner + " " + o + " u) v))");
  };
  for (const auto& [c, o] : words.transitives) binary_entry(c, o, "D D S");
  for (const auto& [c, o] : words.attitudes) binary_entry(c, o, "S D S");
  for (const auto& d : words.determiners) {
    object(d, word_type);
    entry(d, "N (D S) S", "(lam v Z (Z (" + op + " " + d + " v)))");
  }
  return lex;
}

}  // namespace ccpsem
