#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcuwalk/hamiltonian.hpp"
#include "lcuwalk/simulator.hpp"

namespace lcuwalk::harness {

enum class InstanceKind { Random, Parity, BlownUp, File };

struct InstanceConfig {
  InstanceKind kind = InstanceKind::Random;
  int n = 2;
  int d = 2;
  double h_max = 1.0;
  std::uint64_t seed = 1;
  int path_length = 4;          // parity N
  std::string bits;             // empty: drawn from seed
  int blowup = 1;
  ParityVariant variant = ParityVariant::H2;
  std::filesystem::path file;
};

struct Instance {
  SparseHamiltonian h;
  std::optional<ParitySpec> parity;
  ParityVariant variant = ParityVariant::H2;
  bool blown_up = false;
};

Instance make_instance(const InstanceConfig& cfg);

/// N pi / (2 blowup) for blown-up instances, pi/2 for the plain paths,
/// nullopt otherwise.
std::optional<double> auto_time(const Instance& inst);

/// |<N, parity, *| effective |0, 0, *>|^2 (|<N|effective|0>|^2 for H1);
/// nullopt for non-parity instances.
std::optional<double> parity_fidelity(const Instance& inst, const CMatrix& effective);

struct ExperimentConfig {
  InstanceConfig instance;
  std::optional<double> t;      // nullopt means "auto"
  double epsilon = 1e-6;
  Strategy strategy = Strategy::FixedZ;
  double alpha = 1.0;
  std::optional<double> x;

  std::vector<double> taus;
  std::vector<double> epsilons;
  std::vector<int> ds;
  std::vector<double> alphas;
  bool plan_only = false;
  int jobs = 1;

  /// Throws ParameterError for non-positive or empty settings.
  void validate_simulate() const;
  void validate_sweep() const;
};

struct SimulateOutcome {
  SimulationReport report;
  std::optional<double> fidelity;
  int sparsity = 0;     // d of the simulated instance
  std::string json;
  std::string summary;  // one line
};

SimulateOutcome simulate(const ExperimentConfig& cfg);

struct SweepRow {
  double tau = 0.0;
  double epsilon = 0.0;
  int d = 0;
  double alpha = 0.0;
  int k = 0;
  int segments = 0;
  int l = 0;
  std::int64_t queries = 0;
  double spectral_error = 0.0;  // NaN when the point was only planned
  double wall_ms = 0.0;
};

/// Cartesian product of the sweep axes on seeded random instances; rows
/// sorted by (tau, epsilon, d, alpha). Points run on up to `jobs` threads.
std::vector<SweepRow> sweep(const ExperimentConfig& cfg);

inline constexpr std::string_view kSweepHeader =
    "tau,epsilon,d,alpha,k,segments,l,queries,spectral_error,wall_ms";

std::string sweep_csv(const std::vector<SweepRow>& rows);

struct Fit {
  std::string model;
  std::vector<double> coef;
  double rel_residual = 0.0;  // RMS of (observed - model) / model
  std::size_t points = 0;
};

/// queries ~ c tau log(tau/eps) / log log(tau/eps), fitted on log scale.
Fit fit_query_envelope(const std::vector<SweepRow>& rows);
/// k ~ c log(1/eps) / log log(1/eps).
Fit fit_k_envelope(const std::vector<SweepRow>& rows);
/// queries ~ c1 tau^(1+alpha/2) + c2 tau^(1-alpha/2) log(1/eps), linear least squares.
Fit fit_tradeoff(const std::vector<SweepRow>& rows);

std::vector<Fit> sweep_fits(const std::vector<SweepRow>& rows, Strategy strategy);
std::string sweep_json(const std::vector<SweepRow>& rows, const std::vector<Fit>& fits);

/// Self-contained SVG line chart of queries against tau, one line per
/// (epsilon, d, alpha) group.
std::string sweep_svg(const std::vector<SweepRow>& rows);

struct CheckLine {
  std::string suite;
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckLine> checks;
  bool pass() const;
  std::string text() const;
  std::string json() const;
};

/// Runs "walk", "bessel", "lcu", "diamond", "parity" or "all" with fixed
/// seeds. Throws ParameterError for an unknown suite name.
SuiteReport verify(std::string_view suite);

/// Instance in the JSON Hamiltonian schema.
std::string instance_json(const InstanceConfig& cfg);

void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace lcuwalk::harness
