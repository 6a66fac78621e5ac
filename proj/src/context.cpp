#include "ccpsem/context.hpp"

#include <fstream>

#include "ccpsem/errors.hpp"

namespace ccpsem {

std::string to_string(Backend b) { return b == Backend::Matrix ? "matrix" : "cube"; }

Backend parse_backend(const std::string& name) {
  if (name == "matrix") return Backend::Matrix;
  if (name == "cube") return Backend::Cube;
  throw Error("unknown backend '" + name + "' (matrix|cube)");
}

Context Context::zeros(Backend backend, const Vocabulary& vocab, double epsilon) {
  Context c;
  c.backend = backend;
  c.vocab = vocab;
  c.epsilon = epsilon;
  if (backend == Backend::Matrix) {
    c.numeric = Tensor::zeros({vocab, vocab});
    for (std::size_t i = 0; i < vocab.size(); ++i) c.numeric.at({i, i}) = epsilon;
  } else {
    c.numeric = Tensor::zeros({vocab, vocab, vocab});
  }
  return c;
}

Context Context::from_tensor(Tensor numeric, double epsilon) {
  if (numeric.rank() != 2 && numeric.rank() != 3)
    throw RankMismatch("a context is a matrix or a cube");
  if (numeric.rank() == 3)
    for (const auto& axis : numeric.axes())
      if (axis != numeric.axis(0)) throw ShapeMismatch("cube axes must share one vocabulary");
  Context c;
  c.backend = numeric.rank() == 2 ? Backend::Matrix : Backend::Cube;
  c.vocab = numeric.axis(0);
  c.numeric = std::move(numeric);
  c.epsilon = epsilon;
  return c;
}

std::size_t Context::intern(const std::string& w) {
  bool present = true;
  std::vector<Vocabulary> axes = numeric.axes();
  for (auto& axis : axes)
    if (!axis.contains(w)) {
      axis.intern(w);
      present = false;
    }
  if (!present) {
    numeric = numeric.extended(axes);
    if (binary) binary = binary->extended(axes);
    vocab = axes[0];
  }
  return vocab.index(w);
}

bool is_binary(const Tensor& t) {
  for (double x : t.data())
    if (x != 0.0 && x != 1.0) return false;
  return true;
}

const Tensor& Context::relation() const {
  if (binary) return *binary;
  if (!is_binary(numeric)) throw NotBinary("context has entries other than 0 and 1");
  return numeric;
}

void Context::ensure_binary() {
  if (binary) return;
  Tensor b = numeric;
  for (double& x : b.data()) x = x != 0.0 ? 1.0 : 0.0;
  binary = std::move(b);
}

void save_context(const std::string& path, const Context& c) {
  save_tensor(path, c.numeric);
  if (c.binary) save_tensor(path + ".binary", *c.binary);
}

Context load_context(const std::string& path, double epsilon) {
  Context c = Context::from_tensor(load_tensor(path, epsilon), epsilon);
  std::ifstream companion(path + ".binary");
  if (companion) {
    Tensor b = read_tensor(companion);
    if (!b.same_shape(c.numeric)) throw ShapeMismatch("binary companion differs in shape");
    if (!is_binary(b)) throw NotBinary("binary companion has entries other than 0 and 1");
    c.binary = std::move(b);
  }
  return c;
}

}  // namespace ccpsem
