#ifndef CCPSEM_CONTEXT_HPP
#define CCPSEM_CONTEXT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ccpsem/tensor.hpp"

namespace ccpsem {

enum class Backend { Matrix, Cube };

std::string to_string(Backend b);
Backend parse_backend(const std::string& name);

// Co-occurrence matrix or (subject, relation, object) cube, with an optional
// 0/1 companion used for admittance. Cube axes share one vocabulary; a
// matrix may have its own column vocabulary.
struct Context {
  Backend backend = Backend::Matrix;
  Vocabulary vocab;  // rows
  Tensor numeric;
  std::optional<Tensor> binary;
  double epsilon = 0.0;

  static Context zeros(Backend backend, const Vocabulary& vocab, double epsilon = 0.0);
  static Context from_tensor(Tensor numeric, double epsilon = 0.0);

  std::size_t rank() const { return backend == Backend::Matrix ? 2 : 3; }
  bool has_word(const std::string& w) const { return vocab.contains(w); }
  // Adds a word to every axis (tensors grow with zero cells).
  std::size_t intern(const std::string& w);

  // The 0/1 view: the binary companion, or the numeric tensor if it is 0/1.
  // Throws NotBinary otherwise.
  const Tensor& relation() const;
  // Adds the binary companion (nonzero numeric cells become 1) if missing.
  void ensure_binary();

  friend bool operator==(const Context& a, const Context& b) {
    return a.backend == b.backend && a.numeric == b.numeric && a.binary == b.binary;
  }
  friend bool operator!=(const Context& a, const Context& b) { return !(a == b); }
};

bool is_binary(const Tensor& t);

// Numeric tensor in the tensor file format; a binary companion goes to
// <path>.binary.
void save_context(const std::string& path, const Context& c);
Context load_context(const std::string& path, double epsilon = 0.0);

}  // namespace ccpsem

#endif
