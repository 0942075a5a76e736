// qprover: a TPTP FOF/TFF prover answering on SZS status lines.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "clausify.hpp"
#include "qiana/tptp.hpp"

namespace {

const char* szs_name(qprover::Result::Status s) {
  using S = qprover::Result::Status;
  switch (s) {
    case S::Theorem: return "Theorem";
    case S::Unsatisfiable: return "Unsatisfiable";
    case S::CounterSatisfiable: return "CounterSatisfiable";
    case S::Satisfiable: return "Satisfiable";
    case S::Timeout: return "Timeout";
    case S::GaveUp: return "GaveUp";
  }
  return "GaveUp";
}

}  // namespace

int main(int argc, char** argv) {
  std::string file;
  double timeout = 30;
  bool parse_only = false;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--timeout" && i + 1 < argc) {
      timeout = std::atof(argv[++i]);
    } else if (a.rfind("--timeout=", 0) == 0) {
      timeout = std::atof(a.c_str() + 10);
    } else if (a == "--parse-only") {
      parse_only = true;
    } else if (a == "--help" || a == "-h") {
      std::cout << "usage: qprover FILE [--timeout SECS] [--parse-only]\n";
      return 0;
    } else if (!a.empty() && a[0] != '-') {
      file = a;
    } else {
      std::cerr << "qprover: unknown option " << a << "\n";
      return 2;
    }
  }
  if (file.empty()) {
    std::cerr << "usage: qprover FILE [--timeout SECS] [--parse-only]\n";
    return 2;
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "qprover: cannot open " << file << "\n";
    std::cout << "% SZS status Error for " << file << "\n";
    return 2;
  }
  std::ostringstream os;
  os << in.rdbuf();

  try {
    qiana::TptpDocument doc = qiana::parse_tptp(os.str());
    if (parse_only) {
      std::cout << "% SZS status Success for " << file << " ("
                << doc.formulas.size() << " formulas)\n";
      return 0;
    }
    qprover::Problem problem = qprover::clausify(doc);
    qprover::Options opts;
    opts.timeout_seconds = timeout;
    qprover::Result r = qprover::saturate(std::move(problem), opts);
    std::cout << "% SZS status " << szs_name(r.status) << " for " << file
              << "\n";
    std::cout << "% generated " << r.generated << ", activated " << r.activated
              << ", " << r.seconds << " s\n";
    using S = qprover::Result::Status;
    return (r.status == S::Theorem || r.status == S::Unsatisfiable) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "qprover: " << e.what() << "\n";
    std::cout << "% SZS status Error for " << file << "\n";
    return 2;
  }
}
