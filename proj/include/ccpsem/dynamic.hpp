#ifndef CCPSEM_DYNAMIC_HPP
#define CCPSEM_DYNAMIC_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ccpsem/context.hpp"
#include "ccpsem/homomorphism.hpp"
#include "ccpsem/term.hpp"

namespace ccpsem {

enum class Arithmetic { Counting, Binary };

struct UpdateMode {
  Arithmetic arithmetic = Arithmetic::Counting;
  std::uint64_t seed = 0;
};

Arithmetic parse_arithmetic(const std::string& name);

using Cell = std::vector<std::string>;

struct LogEntry {
  std::string op;
  std::vector<Cell> cells;
  std::string detail;  // "+1", "-1", "+'", "-'" for writes
  bool write = true;
  int sign = 1;
};

struct Quantifier {
  enum class Kind { Forall, Some, Most, AtLeast, AtMost } kind = Kind::Forall;
  std::size_t k = 0;
};

std::string to_string(const Quantifier& q);

// Applies the primitive updates to contexts. Counting mode adds or
// subtracts 1; binary mode sets cells to 1 or 0. Contexts are values: every
// call returns the updated copy.
class Updater {
public:
  explicit Updater(UpdateMode mode = {});

  const UpdateMode& mode() const { return mode_; }
  const std::vector<LogEntry>& log() const { return log_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void clear_log() { log_.clear(); warnings_.clear(); }

  // verb -> agent noun used by G on cubes (smoke -> smoker).
  std::map<std::string, std::string> nominals;

  Context F(const std::string& adj, const std::string& noun, Context c);
  Context G(const std::string& verb, const std::string& subj, Context c);
  // The object comes first, as in I(love, object, subject, c).
  Context I(const std::string& verb, const std::string& obj, const std::string& subj, Context c);
  // Matrix only; cubes need the proposition (JP).
  Context J(const std::string& att, const std::string& subj, Context c);
  // Cube: (subj, att, label) with the label interned on demand.
  Context JP(const std::string& att, const std::string& subj, const std::string& label, Context c);
  Context who(const std::string& head, const std::string& verb, const std::string& other, Context c);
  Context isa(const std::string& entity, const std::string& noun, Context c);
  Context negation(const std::string& verb, const std::string& obj, const std::string& subj,
                   Context c);

  // Undoes the given writes: counting mode subtracts their deltas, binary
  // mode zeroes the cells.
  Context negate(const std::vector<LogEntry>& writes, Context c);

  // Entities x with a positive (x, is-a, noun) cell, in vocabulary order.
  std::vector<std::string> restrictor(const std::string& noun, const Context& c) const;
  Context quantify(const Quantifier& q, const std::string& noun,
                   const std::function<Context(const std::string&, const Context&)>& scope,
                   Context c);

  // Runs f without leaving log entries or advancing the RNG; returns the
  // writes it made.
  std::vector<LogEntry> probe(const std::function<void()>& f);

  std::string nominal(const std::string& verb) const;

private:
  Context bump(const std::string& op, const std::vector<Cell>& cells, int sign, Context c);
  std::size_t uniform(std::size_t lo, std::size_t hi);

  UpdateMode mode_;
  std::mt19937_64 rng_;
  std::vector<LogEntry> log_;
  std::vector<std::string> warnings_;
};

std::string format_log_entry(const LogEntry& e);
std::string format_cells(const std::vector<Cell>& cells);
// Cells written by the entries, deduplicated and sorted.
std::vector<Cell> written_cells(const std::vector<LogEntry>& entries);

// Executes a normalized object term of type U = (M M) against a context.
// Constants of type V denote the word with the same name; F, G, I, J, JP,
// ISA, NOT, WHO, FORALL, SOME, MOST, AT_LEAST_<k>, AT_MOST_<k> are the
// update primitives.
Context run_update(const Term& object_term, const Context& c, Updater& up);

// Translates, normalizes and executes an abstract sentence (type S).
Term ccp_image(const Term& abstract, const Lexicon& lex);
Context apply_ccp(const Term& abstract, const Lexicon& lex, const Context& c, Updater& up);

// Words (constants of type V) mentioned by the normalized image.
std::vector<std::string> image_words(const Term& object_term);

}  // namespace ccpsem

#endif
