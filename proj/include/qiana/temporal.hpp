// Event-calculus pack: the EC1-EC7 axioms and the temporal surface sugar.
#pragma once

#include "qiana/axioms.hpp"

namespace qiana {

struct TheoryDocument;  // frontend.hpp

// The event-calculus symbols injected in temporal mode.
struct TemporalSignature {
  Symbol holds_at = pred("HoldsAt", 2);
  Symbol happens = pred("Happens", 3);
  Symbol initiates = pred("Initiates", 3);
  Symbol terminates = pred("Terminates", 3);
  Symbol releases = pred("Releases", 3);
  Symbol clipped = pred("Clipped", 3);
  Symbol declipped = pred("Declipped", 3);
  Symbol initially = pred("Initially", 1);
  Symbol lt = pred("lt", 2);
  Symbol leq = pred("leq", 2);
  Symbol zero = func("0", 0);

  std::vector<Symbol> predicates() const;
};

// Exactly seven closed axioms transcribing EC1-EC7; constant output.
AxiomSet gen_event_calculus_axioms(const AugmentedSignature& asig);

// Rewrites Happens(a,t) to Happens(a,t,t) and validates EC symbol arities.
// A document with no temporal atoms is returned unchanged. Throws Error on
// an arity clash with an EC symbol.
TheoryDocument elaborate_temporal(const TheoryDocument& doc);

}  // namespace qiana
