// Generators for the finite Qiana axiomatization: the ist reasoning axioms,
// the helper-symbol axioms (equality, Reach, Wft, E, Sub), the finite truth
// schemas, and the optional packs (explosion, disambiguation).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qiana/ast.hpp"

namespace qiana {

struct Axiom {
  std::string name;        // unique within an AxiomSet
  Formula formula;         // closed
  std::string provenance;  // schema tag: A5..A10, A12..A34, A1fin..A4fin,
                           // A11fin, EXPLOSION, DISAMBIG1/2, USER, EC1..EC7,
                           // MODAL-*
  std::string params;      // instantiation parameters (symbol names, line)
};

struct AxiomSet {
  std::vector<Axiom> axioms;
  std::string manifest;  // filled by finalize_manifest

  void add(std::string name, Formula formula, std::string provenance,
           std::string params = "");
  void append(AxiomSet other);
  size_t count_of(const std::string& provenance) const;
};

struct ClosureOptions {
  bool explicit_equality = false;  // emit A12-A16 (equality as a helper symbol)
  bool explosion = false;
  bool disambiguation = false;

  // Recorded in the manifest by the driver; no effect on the core generators.
  std::string mode_note;
};

// a qor b  :=  qneg(qand(qneg a, qneg b)); the remaining quoted sugar builds
// on it the same way the unquoted sugar does.
Term qor(const AugmentedSignature& asig, Term a, Term b);
Term qimplies(const AugmentedSignature& asig, Term a, Term b);
Term qiff(const AugmentedSignature& asig, Term a, Term b);

// A5-A10; exactly six axioms, independent of the signature size.
AxiomSet gen_ist_axioms(const AugmentedSignature& asig);

// A12-A34 (A12-A16 only when opts.explicit_equality).
AxiomSet gen_helper_axioms(const AugmentedSignature& asig,
                           const ClosureOptions& opts);

// A1fin-A4fin and A11fin.
AxiomSet gen_truth_fin(const AugmentedSignature& asig);

// Explosion / disambiguation packs; empty when the options are off.
AxiomSet gen_optional(const AugmentedSignature& asig, const ClosureOptions& opts);

struct UserAxiom {
  Formula formula;
  std::string label;  // e.g. "line 12"
};

// USER + gen_ist_axioms + gen_helper_axioms + gen_truth_fin + gen_optional,
// with the manifest finalized. Throws Error("open formula...") when a user
// axiom has free variables.
AxiomSet qiana_closure(const std::vector<UserAxiom>& theory,
                       const AugmentedSignature& asig,
                       const ClosureOptions& opts);

// Rebuilds the manifest text (signature snapshot, options note, per-tag
// counts). Deterministic; byte-identical across runs for equal inputs.
void finalize_manifest(AxiomSet& set, const AugmentedSignature& asig,
                       const ClosureOptions& opts);

uint64_t fnv1a64(const std::string& text);

}  // namespace qiana
