#include "qiana/signature.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace qiana {

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (name == names::kEq) return true;  // the one permitted operator name
  bool digits = std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
  if (digits) return true;  // numeral constants
  if (std::isdigit(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

bool has_prefix(const std::string& name, const char* prefix) {
  return name.rfind(prefix, 0) == 0;
}

}  // namespace

bool is_reserved_name(const std::string& name) {
  static const std::set<std::string> kReserved = {
      names::kTruth, names::kQuot,  names::kQand, names::kQneg,
      names::kQforall, names::kWft, names::kReach, names::kEval,
      names::kSubq, names::kQeq};
  if (kReserved.count(name)) return true;
  return has_prefix(name, names::kQuotedPrefix) ||
         has_prefix(name, names::kQuotedVarPrefix) ||
         has_prefix(name, names::kMangleEscapePrefix);
}

void Signature::add_function(const std::string& name, int arity) {
  auto [it, inserted] = functions.emplace(name, func(name, arity));
  if (!inserted && it->second.arity != arity)
    throw Error("function " + name + " redeclared with arity " +
                std::to_string(arity) + " (was " +
                std::to_string(it->second.arity) + ")");
}

void Signature::add_predicate(const std::string& name, int arity) {
  auto [it, inserted] = predicates.emplace(name, pred(name, arity));
  if (!inserted && it->second.arity != arity)
    throw Error("predicate " + name + " redeclared with arity " +
                std::to_string(arity) + " (was " +
                std::to_string(it->second.arity) + ")");
}

const Symbol* Signature::find_function(const std::string& name) const {
  auto it = functions.find(name);
  return it == functions.end() ? nullptr : &it->second;
}

const Symbol* Signature::find_predicate(const std::string& name) const {
  auto it = predicates.find(name);
  return it == predicates.end() ? nullptr : &it->second;
}

bool Signature::has_quotable_var(const std::string& name) const {
  return std::find(quotable_vars.begin(), quotable_vars.end(), name) !=
         quotable_vars.end();
}

int Signature::max_arity() const {
  int m = 0;
  for (const auto& [_, s] : functions) m = std::max(m, s.arity);
  for (const auto& [_, s] : predicates) m = std::max(m, s.arity);
  return m;
}

std::vector<Diagnostic> validate_base(const Signature& sig) {
  std::vector<Diagnostic> out;
  auto check_symbol = [&](const Symbol& s) {
    if (!valid_identifier(s.name))
      out.push_back({"invalid symbol name: '" + s.name + "'"});
    if (s.arity < 0)
      out.push_back({"negative arity: " + s.name});
  };
  for (const auto& [name, s] : sig.functions) {
    check_symbol(s);
    if (sig.predicates.count(name)) out.push_back({"name collision: " + name});
    if (sig.has_quotable_var(name)) out.push_back({"name collision: " + name});
  }
  for (const auto& [name, s] : sig.predicates) {
    check_symbol(s);
    if (sig.has_quotable_var(name)) out.push_back({"name collision: " + name});
  }
  std::set<std::string> seen_vars;
  for (const auto& v : sig.quotable_vars) {
    if (!valid_identifier(v) || v == names::kEq)
      out.push_back({"invalid variable name: '" + v + "'"});
    if (!seen_vars.insert(v).second)
      out.push_back({"duplicate quotable variable: " + v});
  }
  if (sig.quotable_vars.size() < 2)
    out.push_back({"V too small: need >= 2"});
  if (static_cast<int>(sig.quotable_vars.size()) < sig.max_arity())
    out.push_back({"V too small: need >= max arity " +
                   std::to_string(sig.max_arity())});
  return out;
}

AugmentedSignature augment(const Signature& sig) {
  {
    auto diags = validate_base(sig);
    if (!diags.empty()) throw Error("invalid base signature: " + diags.front().message);
  }

  auto reject_reserved = [](const std::string& name) {
    if (is_reserved_name(name)) throw Error("reserved name: " + name);
  };
  for (const auto& [name, _] : sig.functions) {
    reject_reserved(name);
    if (name == names::kIst) throw Error("reserved name: ist (predicate only)");
  }
  for (const auto& [name, s] : sig.predicates) {
    if (name == names::kIst) {
      if (s.arity != 2) throw Error("ist must have arity 2");
      continue;
    }
    reject_reserved(name);
  }
  for (const auto& v : sig.quotable_vars) {
    reject_reserved(v);
    if (v == names::kIst) throw Error("reserved name: ist");
  }

  AugmentedSignature out;
  out.base = sig;
  out.base.add_predicate(names::kIst, 2);  // assumed by the ist axioms

  std::set<std::string> quoted_names;
  auto claim = [&quoted_names](const std::string& qname) {
    if (!quoted_names.insert(qname).second)
      throw Error("quoted-name collision: " + qname);
  };
  for (const auto& [name, s] : out.base.functions) {
    std::string qname = name == names::kEq
                            ? std::string(names::kQuotedPrefix) + "eq"
                            : names::kQuotedPrefix + name;
    claim(qname);
    out.quoted_functions.emplace(name, func(qname, s.arity));
    out.reverse_functions_.emplace(qname, name);
  }
  // The quoted predicate set is built from P = P_b plus ist; truth is never
  // quoted.
  for (const auto& [name, s] : out.base.predicates) {
    std::string qname = name == names::kEq
                            ? std::string(names::kQuotedPrefix) + "eq"
                            : names::kQuotedPrefix + name;
    claim(qname);
    out.quoted_predicates.emplace(name, func(qname, s.arity));
    out.reverse_predicates_.emplace(qname, name);
  }
  for (const auto& v : out.base.quotable_vars) {
    std::string qname = names::kQuotedVarPrefix + v;
    claim(qname);
    out.quoted_vars.emplace(v, func(qname, 0));
    out.reverse_vars_.emplace(qname, v);
  }
  return out;
}

const Symbol* AugmentedSignature::quoted_of_function(const std::string& n) const {
  auto it = quoted_functions.find(n);
  return it == quoted_functions.end() ? nullptr : &it->second;
}
const Symbol* AugmentedSignature::quoted_of_predicate(const std::string& n) const {
  auto it = quoted_predicates.find(n);
  return it == quoted_predicates.end() ? nullptr : &it->second;
}
const Symbol* AugmentedSignature::quoted_of_var(const std::string& n) const {
  auto it = quoted_vars.find(n);
  return it == quoted_vars.end() ? nullptr : &it->second;
}

const Symbol* AugmentedSignature::base_function_of(const std::string& q) const {
  auto it = reverse_functions_.find(q);
  return it == reverse_functions_.end() ? nullptr
                                        : base.find_function(it->second);
}
const Symbol* AugmentedSignature::base_predicate_of(const std::string& q) const {
  auto it = reverse_predicates_.find(q);
  return it == reverse_predicates_.end() ? nullptr
                                         : base.find_predicate(it->second);
}
std::optional<std::string> AugmentedSignature::var_of(const std::string& q) const {
  auto it = reverse_vars_.find(q);
  if (it == reverse_vars_.end()) return std::nullopt;
  return it->second;
}

bool AugmentedSignature::is_quoted_function(const Symbol& s) const {
  return reverse_functions_.count(s.name) > 0;
}
bool AugmentedSignature::is_quoted_predicate(const Symbol& s) const {
  return reverse_predicates_.count(s.name) > 0;
}
bool AugmentedSignature::is_quoted_var(const Symbol& s) const {
  return s.arity == 0 && reverse_vars_.count(s.name) > 0;
}
bool AugmentedSignature::is_quotation_symbol(const Symbol& s) const {
  return s == qand || s == qneg || s == qforall || s == quot ||
         is_quoted_function(s) || is_quoted_predicate(s) || is_quoted_var(s);
}

}  // namespace qiana
