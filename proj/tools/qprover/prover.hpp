// A small saturation prover for the TPTP dialect the qiana compiler emits:
// given-clause loop, ordered resolution with negative-literal selection,
// positive factoring, equality resolution, unit paramodulation and
// LPO-oriented demodulation. Sound for FOF/TFF with equality; reports the
// result on an SZS status line.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qprover {

// Interned symbol tables. Sort 0 is the untyped/default sort.
struct Sig {
  struct Fn {
    std::string name;
    int arity = 0;
    int result_sort = 0;
    std::vector<int> arg_sorts;
    bool skolem = false;
  };
  struct Pr {
    std::string name;
    int arity = 0;
    std::vector<int> arg_sorts;
  };

  std::vector<Fn> fns;
  std::vector<Pr> prs;
  std::map<std::string, int> fn_ids;
  std::map<std::string, int> pr_ids;
  std::vector<std::string> sort_names{"$d"};
  std::map<std::string, int> sort_ids{{"$d", 0}};
  int eq = -1;  // predicate id of "="

  int sort(const std::string& name);
  int fn(const std::string& name, int arity);
  int pr(const std::string& name, int arity);
  int fresh_fn(const std::string& stem, int arity, int result_sort,
               std::vector<int> arg_sorts, bool skolem);
  int fresh_pr(const std::string& stem, int arity);

  // LPO precedence, computed once after loading: higher rank wins.
  std::vector<int> fn_prec;
  std::vector<int> pr_prec;
  void compute_precedence();
};

struct T {
  int f = -1;   // function id; -1 for variables
  int v = -1;   // variable index when f == -1
  std::vector<T> args;

  bool is_var() const { return f < 0; }
  static T var(int v) {
    T t;
    t.v = v;
    return t;
  }
  static T app(int f, std::vector<T> args = {}) {
    T t;
    t.f = f;
    t.args = std::move(args);
    return t;
  }
  bool operator==(const T& o) const {
    if (f != o.f || v != o.v) return false;
    return args == o.args;
  }
};

struct Lit {
  bool pos = true;
  int pr = -1;
  std::vector<T> args;  // for eq: exactly {lhs, rhs}
  bool operator==(const Lit& o) const {
    return pos == o.pos && pr == o.pr && args == o.args;
  }
};

struct Clause {
  std::vector<Lit> lits;
  std::vector<int> var_sorts;  // indexed by variable
  uint32_t id = 0;
  uint32_t age = 0;
  bool from_goal = false;
  int weight = 0;
};

// term / literal helpers
int term_size(const T& t);
int term_sort(const Sig& sig, const Clause& c, const T& t);
bool occurs(int v, const T& t);
void collect_vars(const T& t, std::vector<int>& out);

// one-sided and two-sided unification over an explicit binding map
struct Subst {
  std::map<int, T> b;
  const T* lookup(int v) const;
  T apply(const T& t) const;
  Lit apply(const Lit& l) const;
};
bool unify(const Sig& sig, const Clause& ca, const Clause& cb, const T& a,
           const T& b, Subst& s);
bool match(const T& pattern, const T& target, Subst& s);

// LPO with the signature's precedence.
bool lpo_gt(const Sig& sig, const T& a, const T& b);
bool lit_gt(const Sig& sig, const Lit& a, const Lit& b);

struct Options {
  double timeout_seconds = 30;
  size_t max_clauses = 4000000;
  int age_pick_every = 5;
  bool trace = false;
};

struct Result {
  enum class Status {
    Theorem, Unsatisfiable, CounterSatisfiable, Satisfiable, Timeout, GaveUp
  } status;
  size_t generated = 0;
  size_t activated = 0;
  double seconds = 0;
};

struct Problem {
  Sig sig;
  std::vector<Clause> clauses;
  bool has_conjecture = false;
};

Result saturate(Problem problem, const Options& opts);

}  // namespace qprover
