#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/harness.hpp"

namespace {

using namespace lcuwalk;
using namespace lcuwalk::harness;

enum Exit { kOk = 0, kVerification = 1, kConfig = 2, kIo = 3 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Verification:
    case ErrorKind::Numeric:
      return kVerification;
    case ErrorKind::Io:
      return kIo;
    default:
      return kConfig;
  }
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("lcuwalk");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("LCUWALK_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else if (level == "info") spdlog::set_level(spdlog::level::info);
  else spdlog::set_level(spdlog::level::err);
}

struct InstanceFlags {
  std::string kind = "random";
  std::string variant = "H2";
};

void add_instance_options(CLI::App* app, InstanceConfig& ic, InstanceFlags& flags) {
  app->add_option("--instance", flags.kind, "random | parity | blowup | file")
      ->check(CLI::IsMember({"random", "parity", "blowup", "file"}));
  app->add_option("--n", ic.n, "qubits of a random instance");
  app->add_option("--d", ic.d, "sparsity of a random instance");
  app->add_option("--hmax", ic.h_max, "||H||_max of a random instance");
  app->add_option("--seed", ic.seed, "seed for random instances and random bits");
  app->add_option("--N", ic.path_length, "parity path length");
  app->add_option("--x", ic.bits, "parity bit string (random when omitted)");
  app->add_option("--blowup", ic.blowup, "copies per vertex for blowup instances");
  app->add_option("--variant", flags.variant, "H1 | H2 for parity instances")->check(CLI::IsMember({"H1", "H2"}));
  app->add_option("--file", ic.file, "JSON Hamiltonian for --instance file");
}

void finish_instance(InstanceConfig& ic, const InstanceFlags& flags) {
  static const std::map<std::string, InstanceKind> kinds = {{"random", InstanceKind::Random},
                                                            {"parity", InstanceKind::Parity},
                                                            {"blowup", InstanceKind::BlownUp},
                                                            {"file", InstanceKind::File}};
  ic.kind = kinds.at(flags.kind);
  ic.variant = flags.variant == "H1" ? ParityVariant::H1 : ParityVariant::H2;
  if (ic.kind == InstanceKind::File && ic.file.empty()) throw ParameterError("--instance file needs --file");
}

Strategy parse_strategy(const std::string& s) {
  if (s == "fixed_z") return Strategy::FixedZ;
  if (s == "tradeoff") return Strategy::Tradeoff;
  throw ParameterError(fmt::format("unknown strategy '{}'", s));
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) std::cout << text;
  else write_file(out, text);
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Quantum-walk LCU Hamiltonian simulation verifier"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  InstanceFlags flags;
  std::string t_text = "1";
  std::string strategy = "fixed_z";
  std::string format;
  std::string out;
  std::string svg;
  std::string suite = "all";
  double x_value = 0.0;

  auto* sim = app.add_subcommand("simulate", "run one simulation and write a JSON report");
  add_instance_options(sim, cfg.instance, flags);
  sim->add_option("--t", t_text, "evolution time, or 'auto' for parity instances");
  sim->add_option("--eps", cfg.epsilon, "error budget");
  sim->add_option("--strategy", strategy, "fixed_z | tradeoff")->check(CLI::IsMember({"fixed_z", "tradeoff"}));
  sim->add_option("--alpha", cfg.alpha, "tradeoff exponent in [0, 1]");
  auto* x_opt = sim->add_option("--X", x_value, "entry bound X >= ||H||_max");
  sim->add_option("--out", out, "report path (stdout when omitted)");
  sim->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* sw = app.add_subcommand("sweep", "parameter sweep over random instances, CSV output");
  add_instance_options(sw, cfg.instance, flags);
  sw->add_option("--tau", cfg.taus, "tau values")->delimiter(',');
  sw->add_option("--eps", cfg.epsilons, "epsilon values")->delimiter(',');
  sw->add_option("--ds", cfg.ds, "sparsity values")->delimiter(',');
  sw->add_option("--alpha", cfg.alphas, "alpha values")->delimiter(',');
  sw->add_option("--strategy", strategy, "fixed_z | tradeoff")->check(CLI::IsMember({"fixed_z", "tradeoff"}));
  sw->add_option("--jobs", cfg.jobs, "concurrent sweep points");
  sw->add_flag("--plan-only", cfg.plan_only, "skip the dense simulation, report plans only");
  sw->add_option("--out", out, "output path (stdout when omitted)");
  sw->add_option("--format", format, "csv | json")->check(CLI::IsMember({"json", "csv"}));
  sw->add_option("--svg", svg, "also write an SVG chart of queries against tau");

  auto* ver = app.add_subcommand("verify", "run an invariant suite with fixed seeds");
  ver->add_option("suite", suite, "walk | bessel | lcu | diamond | parity | all")
      ->check(CLI::IsMember({"walk", "bessel", "lcu", "diamond", "parity", "all"}));
  ver->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  ver->add_option("--out", out, "summary path (stdout when omitted)");

  auto* inst = app.add_subcommand("instance", "emit a Hamiltonian as JSON");
  add_instance_options(inst, cfg.instance, flags);
  inst->add_option("--out", out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sim) {
      finish_instance(cfg.instance, flags);
      cfg.strategy = parse_strategy(strategy);
      if (*x_opt) cfg.x = x_value;
      if (t_text != "auto") {
        std::size_t used = 0;
        try {
          cfg.t = std::stod(t_text, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != t_text.size()) throw ParameterError(fmt::format("--t: cannot parse '{}'", t_text));
      }
      const auto res = simulate(cfg);
      if (format == "csv") {
        const auto& p = res.report.plan;
        const auto& head = p.num_segments > 1 ? p.full : p.last;
        SweepRow row;
        row.tau = p.tau;
        row.epsilon = p.epsilon;
        row.d = res.sparsity;
        row.alpha = p.alpha;
        row.k = p.num_segments ? head.k : 0;
        row.segments = p.num_segments;
        row.l = p.num_segments ? head.l_iters : 0;
        row.queries = res.report.queries;
        row.spectral_error = res.report.spectral_error;
        row.wall_ms = res.report.wall_ms;
        emit(out, sweep_csv({row}));
      } else {
        emit(out, res.json);
      }
      if (!out.empty() || format == "csv") std::cout << res.summary << "\n";
      else std::cerr << res.summary << "\n";
      return res.report.spectral_error <= cfg.epsilon ? kOk : kVerification;
    }
    if (*sw) {
      finish_instance(cfg.instance, flags);
      cfg.strategy = parse_strategy(strategy);
      const auto rows = sweep(cfg);
      const auto fits = sweep_fits(rows, cfg.strategy);
      emit(out, format == "json" ? sweep_json(rows, fits) : sweep_csv(rows));
      if (!svg.empty()) write_file(svg, sweep_svg(rows));
      auto& fit_stream = out.empty() ? std::cerr : std::cout;
      for (const auto& f : fits) {
        std::string coef;
        for (double c : f.coef) coef += fmt::format("{}{:.4g}", coef.empty() ? "" : ", ", c);
        fit_stream << fmt::format("fit {}: coef [{}], rel_residual {:.3f}, points {}\n", f.model, coef,
                                  f.rel_residual, f.points);
      }
      return kOk;
    }
    if (*ver) {
      const auto rep = verify(suite);
      emit(out, format == "json" ? rep.json() : rep.text());
      return rep.pass() ? kOk : kVerification;
    }
    if (*inst) {
      finish_instance(cfg.instance, flags);
      emit(out, instance_json(cfg.instance) + "\n");
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerification;
  }
  return kOk;
}
