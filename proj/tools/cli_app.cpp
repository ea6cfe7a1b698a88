#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <span>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "qeof/io/json_io.hpp"
#include "qeof/qeof.hpp"

namespace qeof::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json config_json(const RunConfig& c) {
  json j = {{"command", c.command},
            {"in", c.in},
            {"out", c.out},
            {"kind", c.kind},
            {"lambda", c.lambda},
            {"mode", c.mode},
            {"basis", c.basis},
            {"shots", c.shots},
            {"seed", c.seed},
            {"count", c.count},
            {"tol", c.tol},
            {"allow_uncertified", c.allow_uncertified}};
  j["m"] = c.m ? json(*c.m) : json(nullptr);
  j["n"] = c.n ? json(*c.n) : json(nullptr);
  return j;
}

std::size_t require(const std::optional<std::size_t>& v, const char* flag, const std::string& kind) {
  if (!v) throw UsageError("--kind " + kind + " needs " + flag);
  return *v;
}

PureState generate(const RunConfig& c) {
  const std::string& kind = c.kind;
  if (kind == "bell") return gen::bell();
  if (kind == "haar_random") return gen::haar_random(require(c.m, "--m", kind), require(c.n, "--n", kind), c.seed);
  if (kind == "product") return gen::product(require(c.m, "--m", kind), require(c.n, "--n", kind), c.seed);
  if (kind == "max_entangled") {
    const std::size_t d = require(c.m, "--m", kind);
    return gen::max_entangled(d, c.n.value_or(d));
  }
  if (kind == "schmidt_diag") {
    if (c.lambda.empty()) throw UsageError("--kind schmidt_diag needs --lambda");
    return gen::schmidt_diag(std::span<const double>(c.lambda), c.n.value_or(c.lambda.size()));
  }
  if (kind == "rotated") {
    if (c.in.empty()) throw UsageError("--kind rotated needs --in with the base state");
    return gen::randomly_rotated(io::read_state_file(c.in), c.seed);
  }
  throw UsageError("unknown --kind '" + kind + "'");
}

PureState load_input(const RunConfig& c) {
  if (!c.in.empty() && !c.kind.empty()) throw UsageError("--in and --kind are mutually exclusive");
  if (!c.in.empty()) return io::read_state_file(c.in);
  if (!c.kind.empty()) return generate(c);
  throw UsageError("an input state is required: pass --in FILE or --kind KIND");
}

Basis certified_basis(const RunConfig& c) {
  const Basis basis = parse_basis(c.basis);
  if (basis == Basis::raw && !c.allow_uncertified) {
    throw UsageError("--basis raw is not certified; add --allow-uncertified to run it anyway");
  }
  return basis;
}

struct Outcome {
  json report;
  bool passed = true;
};

Outcome cmd_gen(const RunConfig& c) {
  if (c.kind.empty()) throw UsageError("gen needs --kind");
  return {io::state_to_json(generate(c))};
}

Outcome cmd_direct(const RunConfig& c) {
  const PureState state = load_input(c);
  const auto values = schmidt(state).values;
  return {{{"m", state.m()}, {"n", state.n()}, {"schmidt_values", values}, {"eof_bits", eof_direct(state)}}};
}

Outcome cmd_reconstruct(const RunConfig& c) {
  const PureState state = load_input(c);
  const ReconstructionReport r = reconstruct_eof(state, parse_mode(c.mode), certified_basis(c));
  json report = io::to_json(r);
  const bool passed = !r.certified() || r.residual_vs_direct <= c.tol;
  report["passed"] = passed;
  return {std::move(report), passed};
}

Outcome cmd_measure(const RunConfig& c) {
  if (c.shots == 0) throw UsageError("--shots must be at least 1");
  const PureState state = load_input(c);
  ShotPlan plan;
  plan.shots_per_observable = c.shots;
  plan.master_seed = c.seed;
  json report = io::to_json(estimate_eof(state, plan, parse_mode(c.mode), certified_basis(c)));
  report["eof_direct"] = eof_direct(state);
  return {std::move(report)};
}

Outcome cmd_verify(const RunConfig& c) {
  if (!c.m || !c.n) throw UsageError("verify needs --m and --n");
  if (c.count == 0) throw UsageError("--count must be at least 1");
  const EnumerationMode mode = parse_mode(c.mode);
  double worst = 0.0, total = 0.0;
  for (std::size_t k = 0; k < c.count; ++k) {
    const PureState state = gen::haar_random(*c.m, *c.n, derive_seed(c.seed, k, 0));
    const double residual = verify_theorem(state, mode);
    worst = std::max(worst, residual);
    total += residual;
  }
  const bool passed = worst <= c.tol;
  return {{{"m", *c.m},
           {"n", *c.n},
           {"mode", c.mode},
           {"count", c.count},
           {"max_residual", worst},
           {"mean_residual", total / static_cast<double>(c.count)},
           {"tolerance", c.tol},
           {"passed", passed}},
          passed};
}

Outcome cmd_census(const RunConfig& c) {
  const PureState state = to_schmidt_basis(load_input(c));
  const EnumerationMode mode = parse_mode(c.mode);
  const auto census = spectrum_census(state, mode);
  const std::size_t m = state.m(), n = state.n();
  const std::size_t expected = mode == EnumerationMode::paper ? (m - 1) * (m - 1) : (m - 1) * (n - 1);
  json mult = json::object();
  for (const auto& [k, count] : census) mult[std::to_string(k)] = count;
  return {{{"m", m},
           {"n", n},
           {"mode", c.mode},
           {"schmidt_values", schmidt(state).values},
           {"multiplicity", std::move(mult)},
           {"expected_multiplicity", expected}}};
}

void add_input_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--in", c.in, "State file (JSON)");
  sub->add_option("--kind", c.kind, "Generate the input inline instead of reading --in");
  sub->add_option("--m", c.m, "Dimension of subsystem A");
  sub->add_option("--n", c.n, "Dimension of subsystem B");
  sub->add_option("--lambda", c.lambda, "Schmidt values, comma separated")->delimiter(',');
  sub->add_option("--seed", c.seed, "Seed for random state families and sampling");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Entanglement of formation of bipartite pure states by three routes"};
  app.require_subcommand(1);

  auto* gen_cmd = app.add_subcommand("gen", "Write a state file");
  add_input_flags(gen_cmd, c);

  auto* direct_cmd = app.add_subcommand("direct", "Entropy of the Schmidt spectrum");
  add_input_flags(direct_cmd, c);

  auto* rec_cmd = app.add_subcommand("reconstruct", "Two-qubit block decomposition");
  add_input_flags(rec_cmd, c);

  auto* measure_cmd = app.add_subcommand("measure", "Simulated local-observable measurement");
  add_input_flags(measure_cmd, c);
  measure_cmd->add_option("--shots", c.shots, "Shots per observable");

  auto* verify_cmd = app.add_subcommand("verify", "Randomized sweep of block sum vs direct entropy");
  verify_cmd->add_option("--m", c.m, "Dimension of subsystem A");
  verify_cmd->add_option("--n", c.n, "Dimension of subsystem B");
  verify_cmd->add_option("--count", c.count, "Number of random states");
  verify_cmd->add_option("--seed", c.seed, "Master seed");

  auto* census_cmd = app.add_subcommand("census", "Multiplicity of each Schmidt value across blocks");
  add_input_flags(census_cmd, c);

  for (auto* sub : {gen_cmd, direct_cmd, rec_cmd, measure_cmd, verify_cmd, census_cmd}) {
    sub->add_option("--out", c.out, "Write the result here instead of standard output");
  }
  for (auto* sub : {rec_cmd, measure_cmd, verify_cmd, census_cmd}) {
    sub->add_option("--mode", c.mode, "Pair enumeration")->check(CLI::IsMember({"paper", "rect"}));
  }
  for (auto* sub : {rec_cmd, measure_cmd}) {
    sub->add_option("--basis", c.basis, "Evaluation basis")->check(CLI::IsMember({"schmidt", "raw"}));
    sub->add_flag("--allow-uncertified", c.allow_uncertified, "Acknowledge that --basis raw is demonstrative");
  }
  for (auto* sub : {rec_cmd, verify_cmd}) {
    sub->add_option("--tol", c.tol, "Largest accepted residual against the direct entropy")
        ->check(CLI::NonNegativeNumber);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    Outcome result;
    if (c.command == "gen") result = cmd_gen(c);
    else if (c.command == "direct") result = cmd_direct(c);
    else if (c.command == "reconstruct") result = cmd_reconstruct(c);
    else if (c.command == "measure") result = cmd_measure(c);
    else if (c.command == "verify") result = cmd_verify(c);
    else result = cmd_census(c);

    // State files stay in the plain state schema; everything else is a report.
    json doc = std::move(result.report);
    if (c.command != "gen") {
      doc["command"] = c.command;
      doc["config"] = config_json(c);
    }
    const std::string text = doc.dump(2) + "\n";
    if (c.out.empty()) {
      out << text;
    } else {
      io::write_text_file(c.out, text);
      if (c.command == "gen") out << json{{"command", "gen"}, {"config", config_json(c)}, {"out", c.out}}.dump(2) << "\n";
    }
    if (!result.passed) {
      err << "validation failure: residual exceeds tolerance " << c.tol << "\n";
      return kValidationFailure;
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "validation failure: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace qeof::cli
