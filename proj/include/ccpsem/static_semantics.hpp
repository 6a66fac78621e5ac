#ifndef CCPSEM_STATIC_SEMANTICS_HPP
#define CCPSEM_STATIC_SEMANTICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccpsem/homomorphism.hpp"
#include "ccpsem/tensor.hpp"
#include "ccpsem/term.hpp"

namespace ccpsem {

enum class StaticMode { Contraction, Additive, Multiplicative, MatMul };

std::string to_string(StaticMode m);
StaticMode parse_static_mode(const std::string& name);

// Tensors for the object constants of a static lexicon.
struct StaticModel {
  Vocabulary vocab;
  std::map<std::string, Tensor> assignments;
  StaticMode mode = StaticMode::Contraction;
};

// Rank of a basic object type: V 1, M 2, C 3, H 4.
std::size_t rank_of_basic(const std::string& name);

// Lines `mode <name>` and `assign <constant> <tensor-file>`; tensor paths are
// relative to the model file.
StaticModel load_model(const std::string& path);
void save_model(const std::string& path, const StaticModel& m);

// Deterministic tensors in [-1, 1) for every non-operator constant of sig.
StaticModel random_model(const Signature& sig, const Vocabulary& vocab, std::uint64_t seed,
                         StaticMode mode = StaticMode::Contraction);

// Toolkit operators recognised by evaluate: x1 x2 plus times smul dot rot rot2d.
bool is_toolkit_operator(const std::string& name);

// Structural evaluation of a normalized object term; partial applications
// become closures. Throws UnassignedConstant, RankMismatch.
Tensor evaluate(const Term& object_term, const StaticModel& m);

// evaluate(normalize(H(abstract))) for an abstract sentence of type S.
Tensor compose_sentence(const Term& abstract, const Lexicon& lex, const StaticModel& m);

// Word list the static lexicons are generated from.
struct StaticFragment {
  std::vector<std::string> nouns{"woman", "man"};
  std::vector<std::string> adjectives{"tall"};
  std::vector<std::pair<std::string, std::string>> intransitives{{"smokes", "smoke"}};
  std::vector<std::pair<std::string, std::string>> transitives{{"loves", "love"}};
  std::vector<std::pair<std::string, std::string>> attitudes{{"knows", "know"}};
  std::vector<std::string> determiners{"every", "a"};
};

// The contraction lexicon or one of the additive, multiplicative and matrix variants.
Lexicon make_mode_lexicon(StaticMode mode, const StaticFragment& words = {});

}  // namespace ccpsem

#endif
