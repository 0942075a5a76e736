#include "qiana/runner.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "qiana/temporal.hpp"

namespace qiana {

namespace {

bool executable_exists(const std::string& path) {
  return ::access(path.c_str(), X_OK) == 0;
}

std::optional<std::string> find_on_path(const std::string& name) {
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::string p(path);
  size_t start = 0;
  while (start <= p.size()) {
    size_t end = p.find(':', start);
    if (end == std::string::npos) end = p.size();
    std::string dir = p.substr(start, end - start);
    if (!dir.empty()) {
      std::string cand = dir + "/" + name;
      if (executable_exists(cand)) return cand;
    }
    start = end + 1;
  }
  return std::nullopt;
}

std::string self_directory() {
  char buf[4096];
  ssize_t n = ::readlink("/proc/self/exe", buf, sizeof(buf) - 1);
  if (n <= 0) return ".";
  buf[n] = '\0';
  return std::filesystem::path(buf).parent_path().string();
}

}  // namespace

ProverConfig default_prover_config(double timeout_seconds) {
  ProverConfig cfg;
  cfg.timeout_seconds = timeout_seconds;
  if (const char* env = std::getenv("QIANA_PROVER")) {
    cfg.executable = env;
    return cfg;
  }
  for (const char* name : {"vampire", "eprover"}) {
    if (auto p = find_on_path(name)) {
      cfg.executable = *p;
      return cfg;
    }
  }
  // The bundled prover, next to the calling binary or on PATH.
  std::string sibling = self_directory() + "/qprover";
  if (executable_exists(sibling)) {
    cfg.executable = sibling;
    return cfg;
  }
  std::string tool = self_directory() + "/../tools/qprover";
  if (executable_exists(tool)) {
    cfg.executable = tool;
    return cfg;
  }
  if (auto p = find_on_path("qprover")) {
    cfg.executable = *p;
    return cfg;
  }
  cfg.executable = "qprover";
  return cfg;
}

std::vector<std::string> args_for(const ProverConfig& cfg,
                                  const std::string& file) {
  auto timeout = std::to_string(
      std::max(1, static_cast<int>(cfg.timeout_seconds + 0.5)));
  std::vector<std::string> out;
  if (!cfg.args.empty()) {
    for (auto a : cfg.args) {
      size_t p;
      while ((p = a.find("{file}")) != std::string::npos)
        a.replace(p, 6, file);
      while ((p = a.find("{timeout}")) != std::string::npos)
        a.replace(p, 9, timeout);
      out.push_back(std::move(a));
    }
    return out;
  }
  std::string base = std::filesystem::path(cfg.executable).filename().string();
  if (base.find("vampire") != std::string::npos) {
    out = {"--mode", "casc", "-t", timeout, file};
  } else if (base.find("eprover") != std::string::npos) {
    out = {"--auto", "--silent", "--cpu-limit=" + timeout, file};
  } else {
    out = {file, "--timeout", timeout};
  }
  return out;
}

std::string to_string(ProverVerdict::Status s) {
  switch (s) {
    case ProverVerdict::Status::Theorem: return "Theorem";
    case ProverVerdict::Status::CounterSatisfiable: return "CounterSatisfiable";
    case ProverVerdict::Status::Satisfiable: return "Satisfiable";
    case ProverVerdict::Status::Unsatisfiable: return "Unsatisfiable";
    case ProverVerdict::Status::Timeout: return "Timeout";
    case ProverVerdict::Status::GaveUp: return "GaveUp";
    case ProverVerdict::Status::Error: return "Error";
  }
  return "Error";
}

ProverVerdict::Status parse_szs(const std::string& output) {
  static const std::pair<const char*, ProverVerdict::Status> kTable[] = {
      {"Theorem", ProverVerdict::Status::Theorem},
      {"ContradictoryAxioms", ProverVerdict::Status::Unsatisfiable},
      {"Unsatisfiable", ProverVerdict::Status::Unsatisfiable},
      {"CounterSatisfiable", ProverVerdict::Status::CounterSatisfiable},
      {"Satisfiable", ProverVerdict::Status::Satisfiable},
      {"Timeout", ProverVerdict::Status::Timeout},
      {"ResourceOut", ProverVerdict::Status::Timeout},
      {"GaveUp", ProverVerdict::Status::GaveUp},
  };
  size_t pos = output.find("SZS status ");
  if (pos == std::string::npos) return ProverVerdict::Status::Error;
  size_t start = pos + strlen("SZS status ");
  size_t end = start;
  while (end < output.size() &&
         (std::isalnum(static_cast<unsigned char>(output[end]))))
    ++end;
  std::string word = output.substr(start, end - start);
  for (const auto& [name, status] : kTable)
    if (word == name) return status;
  return ProverVerdict::Status::Error;
}

namespace {

// Deletes the temporary problem file on scope exit.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    const char* tmp = std::getenv("TMPDIR");
    std::string templ =
        std::string(tmp && *tmp ? tmp : "/tmp") + "/qiana_XXXXXX";
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    int fd = ::mkstemp(buf.data());
    if (fd < 0) throw Error("cannot create temporary file");
    path.assign(buf.data());
    ssize_t rc = ::write(fd, contents.data(), contents.size());
    ::close(fd);
    if (rc != static_cast<ssize_t>(contents.size())) {
      ::unlink(path.c_str());
      throw Error("cannot write temporary file");
    }
  }
  ~TempFile() {
    if (!path.empty()) ::unlink(path.c_str());
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
};

}  // namespace

ProverVerdict run_prover_text(const std::string& tptp_text,
                              const ProverConfig& cfg) {
  using clock = std::chrono::steady_clock;
  ProverVerdict v;
  if (!executable_exists(cfg.executable) &&
      !find_on_path(cfg.executable).has_value()) {
    v.status = ProverVerdict::Status::Error;
    v.raw_excerpt = "prover executable not found: " + cfg.executable;
    return v;
  }

  TempFile file(tptp_text);
  std::vector<std::string> args = args_for(cfg, file.path);

  int pipefd[2];
  if (::pipe(pipefd) != 0) throw Error("pipe failed");
  auto t0 = clock::now();
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    throw Error("fork failed");
  }
  if (pid == 0) {
    ::dup2(pipefd[1], STDOUT_FILENO);
    ::dup2(pipefd[1], STDERR_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(cfg.executable.c_str()));
    for (auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    ::execvp(cfg.executable.c_str(), argv.data());
    const char msg[] = "exec failed\n";
    ssize_t ignored = ::write(STDERR_FILENO, msg, sizeof(msg) - 1);
    (void)ignored;
    ::_exit(127);
  }
  ::close(pipefd[1]);
  // Grace margin over the prover's own limit before the hard kill.
  double deadline = cfg.timeout_seconds * 1.25 + 5.0;
  std::string output;
  char buf[4096];
  bool killed = false;
  int flags = ::fcntl(pipefd[0], F_GETFL, 0);
  ::fcntl(pipefd[0], F_SETFL, flags | O_NONBLOCK);
  for (;;) {
    ssize_t n = ::read(pipefd[0], buf, sizeof(buf));
    if (n > 0) {
      output.append(buf, static_cast<size_t>(n));
      continue;
    }
    if (n == 0) break;
    if (errno != EAGAIN && errno != EWOULDBLOCK) break;
    int status = 0;
    pid_t done = ::waitpid(pid, &status, WNOHANG);
    double elapsed =
        std::chrono::duration<double>(clock::now() - t0).count();
    if (done == pid) {
      // Drain whatever is left.
      while ((n = ::read(pipefd[0], buf, sizeof(buf))) > 0)
        output.append(buf, static_cast<size_t>(n));
      pid = -1;
      break;
    }
    if (elapsed > deadline && !killed) {
      ::kill(pid, SIGKILL);
      killed = true;
    }
    ::usleep(20000);
  }
  ::close(pipefd[0]);
  if (pid > 0) {
    int status = 0;
    ::waitpid(pid, &status, 0);
  }
  v.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  v.status = killed ? ProverVerdict::Status::Timeout : parse_szs(output);
  if (v.status == ProverVerdict::Status::Error && output.find("exec failed") !=
                                                      std::string::npos) {
    v.raw_excerpt = "cannot execute " + cfg.executable;
    return v;
  }
  v.raw_excerpt = output.size() > 2000
                      ? output.substr(0, 1000) + "\n...\n" +
                            output.substr(output.size() - 1000)
                      : output;
  return v;
}

ProverVerdict run_prover(const TptpDocument& doc, const ProverConfig& cfg) {
  return run_prover_text(render(doc), cfg);
}

CompileResult compile(const TheoryDocument& doc, const Overrides& o) {
  CompileResult out;
  out.elab = elaborate(doc, o);
  const auto& e = out.elab;

  if (e.typed && e.closure_options.explicit_equality)
    throw Error("explicit equality is not supported in typed mode");
  if (e.typed && e.modal)
    throw Error("modal mode is not supported together with typed mode");

  if (e.typed) {
    AxiomSet set = gen_typed_closure(e.axioms, *e.tsig, e.closure_options);
    if (e.temporal) {
      set.append(gen_typed_event_calculus_axioms(*e.tsig));
      finalize_manifest(set, e.asig, e.closure_options);
    }
    out.axioms = std::move(set);
    out.doc = emit_tff(out.axioms, e.conjecture, *e.tsig, {});
    return out;
  }

  AxiomSet set = qiana_closure(e.axioms, e.asig, e.closure_options);
  bool extended = false;
  if (e.temporal) {
    set.append(gen_event_calculus_axioms(e.asig));
    extended = true;
  }
  if (e.modal) {
    set.append(gen_modal_system(*e.modal, e.asig));
    extended = true;
  }
  if (extended) finalize_manifest(set, e.asig, e.closure_options);
  out.axioms = std::move(set);
  EmitOptions emit_opts;
  emit_opts.explicit_equality = e.closure_options.explicit_equality;
  out.doc = emit_fof(out.axioms, e.conjecture, e.asig, emit_opts);
  return out;
}

CompileResult compile_source(const std::string& source, const Overrides& o) {
  return compile(parse(source), o);
}

GrowthResult solve_with_var_growth(const TheoryDocument& doc,
                                   const Overrides& o, const ProverConfig& cfg,
                                   int n_max) {
  GrowthResult out;
  int start = 0;
  {
    CompileResult probe = compile(doc, o);
    if (!probe.elab.conjecture) throw Error("var growth needs a conjecture");
    start = static_cast<int>(probe.elab.asig.base.quotable_vars.size());
  }
  for (int n = start; n <= std::max(start, n_max); ++n) {
    Overrides grown = o;
    grown.vars = n;
    CompileResult step = compile(doc, grown);
    ProverVerdict v = run_prover(step.doc, cfg);
    out.attempts.push_back({n, v});
    out.verdict = v;
    if (v.status == ProverVerdict::Status::Theorem) return out;
  }
  return out;
}

}  // namespace qiana
