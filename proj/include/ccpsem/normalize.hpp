#ifndef CCPSEM_NORMALIZE_HPP
#define CCPSEM_NORMALIZE_HPP

#include "ccpsem/term.hpp"

namespace ccpsem {

// Normal-order β-reduction to β-normal form, then η-contraction, then
// canonical bound names. Terminates on well-typed input.
Term beta_eta_normalize(const Term& t);

Term beta_normalize(const Term& t);
// Applicative order (arguments first); same normal form on typed terms.
Term beta_normalize_applicative(const Term& t);
Term eta_reduce(const Term& t);

// Renames binders so none shadows an enclosing binder or a free variable.
// Deterministic: a clashing name x becomes x', x'', ...
Term canonical_names(const Term& t);

bool is_beta_normal(const Term& t);

}  // namespace ccpsem

#endif
