// The quotation operator, its inverse, and substitution on quotations.
#pragma once

#include "qiana/ast.hpp"

namespace qiana {

// mu. Pre: is_quotable(node, asig). Throws Error("not quotable: ...") else.
Term quote(const Term& t, const AugmentedSignature& asig);
Term quote(const Formula& f, const AugmentedSignature& asig);

// mu^-1, total on Qv; returns the input term unchanged outside the productive
// cases. Throws Error when classify(t).in_Qv is false.
TermOrFormula unquote(const Term& t, const AugmentedSignature& asig);

// z[qvar <- t]_q. qvar must be a quoted-variable constant of asig. Total.
Term subst_quoted(const Term& z, const Symbol& qvar, const Term& t,
                  const AugmentedSignature& asig);

// Standard capture-avoiding substitution on unquoted syntax (meta-notation of
// the preliminaries; used by the frontend and the test oracles). Quoted
// variables are constants, so nothing is ever renamed inside quotations.
Term subst(const Term& t, const std::string& var, const Term& replacement);
Formula subst(const Formula& f, const std::string& var, const Term& replacement);

}  // namespace qiana
