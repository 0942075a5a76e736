#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qiana/axioms.hpp"
#include "qiana/quotation.hpp"
#include "qiana/tptp.hpp"

using namespace qiana;

TEST_CASE("smoke") {
  Signature sig;
  sig.add_function("f", 1);
  sig.add_function("c", 0);
  sig.add_predicate("p", 1);
  sig.quotable_vars = {"x", "y"};
  CHECK(validate_base(sig).empty());
  auto asig = augment(sig);
  CHECK(asig.quoted_of_function("f")->name == "q_f");
  Formula phi = Formula::atom(*sig.find_predicate("p"), {Term::var("x")});
  Term q = quote(phi, asig);
  CHECK(to_string(q) == "q_p(qv_x)");
  auto back = unquote(q, asig);
  CHECK(std::get<Formula>(back) == phi);
  auto closure = qiana_closure({}, asig, {});
  CHECK(closure.axioms.size() > 20);
  auto doc = emit_fof(closure, std::nullopt, asig);
  auto text = render(doc);
  auto doc2 = parse_tptp(text);
  CHECK(render(doc2) == text);
}
