// CNF transformation from the qiana TPTP reader's AST into prover clauses.
#pragma once

#include "prover.hpp"
#include "qiana/tptp.hpp"

namespace qprover {

// Builds the signature from the document (TFF type declarations when
// present), negates the conjecture, skolemizes and distributes to CNF with
// subformula renaming past a blowup threshold.
Problem clausify(const qiana::TptpDocument& doc);

}  // namespace qprover
