// chorc -- batch front end for the choreography toolkit: well-formedness
// checking, endpoint projection, execution under both semantics, network
// simulation, trace enumeration, and the randomized property suites.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "chorc/conc.hpp"
#include "chorc/epp.hpp"
#include "chorc/net.hpp"
#include "chorc/seq.hpp"
#include "chorc/syntax.hpp"
#include "chorc/verify.hpp"
#include "chorc/wellformed.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;  // well-formedness or projection errors
constexpr int kExitUsage = 2;        // usage or parse errors
constexpr int kExitPropertyFailure = 3;

bool use_color() {
  const char* mode = std::getenv("CHORC_COLOR");
  std::string m = mode ? mode : "auto";
  if (m == "always") return true;
  if (m == "never") return false;
  return isatty(fileno(stderr)) != 0;
}

std::string error_prefix() {
  return use_color() ? "\x1b[31merror:\x1b[0m " : "error: ";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

chorc::ChorPtr load_chor(const std::string& path) {
  std::string text = read_file(path);
  try {
    return chorc::parse_chor(text);
  } catch (const chorc::ParseError& e) {
    throw UsageFailure(path + ":" + e.what());
  }
}

chorc::Network load_network(const std::string& path) {
  std::string text = read_file(path);
  try {
    return chorc::parse_network(text);
  } catch (const chorc::ParseError& e) {
    throw UsageFailure(path + ":" + e.what());
  }
}

chorc::State load_state(const std::string& path) {
  if (path.empty()) return chorc::State{};
  std::string text = read_file(path);
  try {
    return chorc::parse_state(text);
  } catch (const chorc::ParseError& e) {
    throw UsageFailure(path + ":" + e.what());
  }
}

int report_violations(const std::vector<chorc::Violation>& vs, bool json) {
  if (json) {
    std::cout << chorc::to_json_text(vs) << "\n";
  } else {
    for (const auto& v : vs) std::cout << chorc::to_text(v) << "\n";
  }
  return vs.empty() ? kExitOk : kExitDiagnostics;
}

void print_run(const chorc::Trace& trace, const chorc::State& final_state) {
  for (const auto& label : trace.labels)
    std::cout << "* " << chorc::to_text(label) << "\n";
  std::cout << chorc::status_text(trace.status) << "\n";
  std::string state_text = chorc::print_state(final_state);
  if (!state_text.empty()) std::cout << state_text << "\n";
}

int cmd_check(const std::string& file, bool json) {
  chorc::ChorPtr c = load_chor(file);
  return report_violations(chorc::check_chor(c), json);
}

int cmd_project(const std::string& file, const std::string& out) {
  chorc::ChorPtr c = load_chor(file);
  std::vector<chorc::Violation> vs = chorc::check_chor(c);
  if (!vs.empty()) return report_violations(vs, false);
  chorc::Network n;
  try {
    n = chorc::project(chorc::annotate(c));
  } catch (const chorc::ProjectionError& e) {
    std::cerr << error_prefix() << e.what() << "\n";
    return kExitDiagnostics;
  }
  std::string text = chorc::print_network(n) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return kExitOk;
}

int cmd_run(const std::string& file, const std::string& sem,
            const std::string& state_file, std::uint64_t seed,
            std::uint64_t fuel, const std::string& trace_out) {
  chorc::ChorPtr c = load_chor(file);
  std::vector<chorc::Violation> vs = chorc::check_chor(c);
  if (!vs.empty()) return report_violations(vs, false);
  chorc::State sigma = load_state(state_file);
  chorc::SeqRun run;
  if (sem == "seq")
    run = chorc::run_seq({c, sigma}, fuel);
  else
    run = chorc::run_conc({c, sigma}, fuel, seed);
  print_run(run.trace, run.final.state);
  if (!trace_out.empty())
    write_file(trace_out, chorc::to_json_text(run.trace) + "\n");
  return kExitOk;
}

int cmd_simulate(const std::string& file, const std::string& state_file,
                 std::uint64_t seed, std::uint64_t fuel,
                 const std::string& trace_out) {
  chorc::Network n = load_network(file);
  chorc::State sigma = load_state(state_file);
  chorc::NetRun run = chorc::run_net({n, sigma}, fuel, seed);
  print_run(run.trace, run.final.state);
  if (!trace_out.empty())
    write_file(trace_out, chorc::to_json_text(run.trace) + "\n");
  return kExitOk;
}

int cmd_traces(const std::string& file, std::size_t max_steps,
               const std::string& sem) {
  chorc::ChorPtr c = load_chor(file);
  std::vector<chorc::Violation> vs = chorc::check_chor(c);
  if (!vs.empty()) return report_violations(vs, false);
  std::vector<chorc::Trace> traces;
  if (sem == "seq") {
    traces.push_back(chorc::run_seq({c, chorc::State{}}, max_steps).trace);
  } else {
    traces = chorc::all_traces({c, chorc::State{}}, max_steps);
  }
  std::cout << chorc::to_json_text(traces) << "\n";
  return kExitOk;
}

int cmd_verify(int corpus_size, int depth, int groups, int procs,
               std::uint64_t seed, std::uint64_t fuel, int schedules,
               std::size_t bound, int oracle_size, std::size_t oracle_bound,
               const std::string& props_csv,
               const std::vector<std::string>& files,
               const std::string& json_out) {
  std::vector<std::string> props;
  {
    std::stringstream ss(props_csv);
    std::string item;
    while (std::getline(ss, item, ',')) props.push_back(item);
  }
  auto wants = [&](const std::string& p) {
    if (props.empty()) return true;
    for (const auto& x : props)
      if (x == p || x == "all") return true;
    return false;
  };

  chorc::GenConfig gen;
  gen.seed = seed;
  gen.max_depth = depth;
  gen.max_group_size = groups;
  gen.process_pool = procs;
  gen.require_projectable = true;

  chorc::Corpus corpus = chorc::gen_corpus(gen, corpus_size);
  for (const std::string& f : files) {
    chorc::ChorPtr c = load_chor(f);
    std::vector<chorc::Violation> vs = chorc::check_chor(c);
    if (!vs.empty()) {
      std::cerr << error_prefix() << f << " is not well-formed\n";
      return report_violations(vs, false);
    }
    corpus.chors.push_back(chorc::annotate(c));
    corpus.seeds.push_back(seed);
  }

  chorc::CheckOptions opts;
  opts.fuel = fuel;
  opts.schedules = schedules;
  opts.seed = seed;
  opts.max_group_size = groups;
  opts.join_bound = bound;
  opts.closure_bound = bound;

  std::vector<chorc::CheckReport> reports;
  if (wants("progress")) {
    reports.push_back(chorc::check_progress(corpus, opts));
    // Negative control: a hand-written, non-projected network that
    // deadlocks; the checker must flag it as stuck.
    chorc::Network deadlock =
        chorc::parse_network("p |> q?x | q |> p?y");
    bool stuck = chorc::enabled_net({deadlock, chorc::State{}}).empty() &&
                 !chorc::is_terminated_net(deadlock);
    chorc::CheckReport control;
    control.property = "progress negative control (deadlocking network)";
    control.instances = 1;
    if (!stuck)
      control.failures.push_back(
          {0, "p |> q?x | q |> p?y", "checker failed to flag the deadlock"});
    reports.push_back(std::move(control));
  }
  if (wants("confluence"))
    reports.push_back(chorc::check_confluence(corpus, opts));
  if (wants("seqconc")) reports.push_back(chorc::check_seq_conc(corpus, opts));
  if (wants("epp")) reports.push_back(chorc::check_epp(corpus, opts));
  if (wants("oracle"))
    reports.push_back(chorc::check_oracle(oracle_size, oracle_bound));

  bool failed = false;
  for (const auto& r : reports) {
    std::cout << chorc::to_text(r) << "\n";
    std::fprintf(stderr, "%s: %.2fs\n", r.property.c_str(),
                 r.elapsed_seconds);
    failed = failed || !r.ok();
  }
  if (!json_out.empty()) write_file(json_out, chorc::to_json_text(reports));
  return failed ? kExitPropertyFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chorc -- choreographies with grouped interactions"};
  app.require_subcommand(1);

  std::string file, out, state_file, trace_out, sem = "seq";
  std::string props = "all", json_out;
  std::uint64_t seed = 0, fuel = 10000;
  std::size_t max_steps = 0, bound = 0, oracle_bound = 8;
  bool json = false;
  int corpus_size = 500, depth = 4, groups = 4, procs = 5, schedules = 3,
      oracle_size = 5;
  std::vector<std::string> extra_files;

  CLI::App* check = app.add_subcommand("check", "check well-formedness");
  check->add_option("file", file)->required();
  check->add_flag("--json", json, "machine-readable diagnostics");

  CLI::App* project = app.add_subcommand("project", "endpoint projection");
  project->add_option("file", file)->required();
  project->add_option("-o,--output", out, "write the network here");

  CLI::App* run = app.add_subcommand("run", "execute a choreography");
  run->add_option("file", file)->required();
  run->add_option("--sem", sem, "seq or conc")
      ->check(CLI::IsMember({"seq", "conc"}));
  run->add_option("--state", state_file, "initial state file");
  run->add_option("--seed", seed, "scheduler seed (conc)");
  run->add_option("--fuel", fuel, "maximum number of steps");
  run->add_option("--trace", trace_out, "write the JSON trace here");

  CLI::App* simulate = app.add_subcommand("simulate", "execute a network");
  simulate->add_option("file", file)->required();
  simulate->add_option("--state", state_file, "initial state file");
  simulate->add_option("--seed", seed, "scheduler seed");
  simulate->add_option("--fuel", fuel, "maximum number of steps");
  simulate->add_option("--trace", trace_out, "write the JSON trace here");

  CLI::App* traces =
      app.add_subcommand("traces", "enumerate all concurrent traces");
  traces->add_option("file", file)->required();
  traces->add_option("--max-steps", max_steps)->required();
  std::string traces_sem = "conc";
  traces->add_option("--sem", traces_sem, "seq or conc (default conc)")
      ->check(CLI::IsMember({"seq", "conc"}));

  CLI::App* verify =
      app.add_subcommand("verify", "randomized property suites");
  verify->add_option("files", extra_files, "extra choreographies");
  verify->add_option("--random", corpus_size, "generated corpus size");
  verify->add_option("--depth", depth, "generator depth");
  verify->add_option("--groups", groups, "max group size");
  verify->add_option("--procs", procs, "process pool size");
  verify->add_option("--seed", seed, "corpus seed");
  std::uint64_t verify_fuel = 64;
  verify->add_option("--fuel", verify_fuel, "steps per execution");
  verify->add_option("--schedules", schedules, "schedules per instance");
  verify->add_option("--bound", bound, "join/closure search bound");
  verify->add_option("--oracle-size", oracle_size,
                     "max AST nodes for the oracle enumeration");
  verify->add_option("--oracle-bound", oracle_bound, "oracle rewrite bound");
  verify->add_option("--props", props,
                     "comma list of progress,confluence,seqconc,epp,oracle");
  verify->add_option("--json", json_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(file, json);
    if (project->parsed()) return cmd_project(file, out);
    if (run->parsed())
      return cmd_run(file, sem, state_file, seed, fuel, trace_out);
    if (simulate->parsed())
      return cmd_simulate(file, state_file, seed, fuel, trace_out);
    if (traces->parsed()) return cmd_traces(file, max_steps, traces_sem);
    if (verify->parsed())
      return cmd_verify(corpus_size, depth, groups, procs, seed, verify_fuel,
                        schedules, bound, oracle_size, oracle_bound, props,
                        extra_files, json_out);
  } catch (const UsageFailure& e) {
    std::cerr << error_prefix() << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << error_prefix() << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
