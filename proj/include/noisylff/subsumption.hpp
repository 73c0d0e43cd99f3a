#pragma once

#include "noisylff/logic.hpp"

namespace noisylff {

// True iff some substitution maps c1's head onto c2's head and every body atom
// of c1 onto a body atom of c2.
bool clause_subsumes(const Clause& c1, const Clause& c2);

// As clause_subsumes, but the substitution must be an injective renaming of
// variables to variables (c1 is included in c2 up to renaming).
bool clause_included(const Clause& c1, const Clause& c2);

// Every clause of t2 is subsumed by some clause of t1.
bool theory_subsumes(const Hypothesis& t1, const Hypothesis& t2);

inline bool is_generalization_of(const Hypothesis& a, const Hypothesis& b) { return theory_subsumes(a, b); }
inline bool is_specialization_of(const Hypothesis& a, const Hypothesis& b) { return theory_subsumes(b, a); }

// Every clause of b equals some clause of a up to variable renaming.
bool is_superset_modulo_renaming(const Hypothesis& a, const Hypothesis& b);

}  // namespace noisylff
