#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/harness.hpp"
#include "lcuwalk/rng.hpp"

namespace lcuwalk::harness {

namespace {

ParitySpec parity_spec(const InstanceConfig& cfg, int blowup) {
  if (cfg.path_length < 1) throw ParameterError("instance: N must be positive");
  if (!cfg.bits.empty()) {
    if (static_cast<int>(cfg.bits.size()) != cfg.path_length)
      throw ParameterError(fmt::format("instance: --x has {} bits but N = {}", cfg.bits.size(), cfg.path_length));
    return ParitySpec::from_bits(cfg.bits, blowup);
  }
  Rng rng(cfg.seed);
  std::string bits;
  for (int i = 0; i < cfg.path_length; ++i) bits.push_back(rng.below(2) ? '1' : '0');
  return ParitySpec::from_bits(bits, blowup);
}

}  // namespace

Instance make_instance(const InstanceConfig& cfg) {
  switch (cfg.kind) {
    case InstanceKind::Random:
      return {make_random_sparse(cfg.n, cfg.d, cfg.h_max, cfg.seed), std::nullopt, ParityVariant::H2, false};
    case InstanceKind::Parity: {
      auto spec = parity_spec(cfg, 1);
      return {make_parity_path(spec, cfg.variant), spec, cfg.variant, false};
    }
    case InstanceKind::BlownUp: {
      auto spec = parity_spec(cfg, cfg.blowup);
      return {make_blown_up_parity(spec), spec, ParityVariant::H2, true};
    }
    case InstanceKind::File:
      return {load_json(cfg.file), std::nullopt, ParityVariant::H2, false};
  }
  throw ParameterError("instance: unknown kind");
}

std::optional<double> auto_time(const Instance& inst) {
  if (!inst.parity) return std::nullopt;
  if (inst.blown_up) return parity_time(*inst.parity);
  return std::numbers::pi / 2.0;
}

std::optional<double> parity_fidelity(const Instance& inst, const CMatrix& effective) {
  if (!inst.parity) return std::nullopt;
  const auto& spec = *inst.parity;
  const int big_n = spec.path_length;
  if (!inst.blown_up && inst.variant == ParityVariant::H1) return std::norm(effective(big_n, 0));
  const CVector start = parity_uniform_state(spec, inst.h, 0, 0);
  const CVector target = parity_uniform_state(spec, inst.h, big_n, parity_of(spec));
  return std::norm(target.dot(effective * start));
}

void ExperimentConfig::validate_simulate() const {
  if (!(epsilon > 0.0)) throw ParameterError("--eps must be positive");
  if (t && !(*t >= 0.0)) throw ParameterError("--t must be non-negative or 'auto'");
  if (strategy == Strategy::Tradeoff && !(alpha >= 0.0 && alpha <= 1.0))
    throw ParameterError("--alpha must lie in [0, 1]");
  if (x && !(*x > 0.0)) throw ParameterError("--X must be positive");
}

void ExperimentConfig::validate_sweep() const {
  if (taus.empty() || epsilons.empty()) throw ParameterError("sweep: --tau and --eps lists must be non-empty");
  for (double v : taus)
    if (!(v > 0.0)) throw ParameterError("sweep: tau values must be positive");
  for (double v : epsilons)
    if (!(v > 0.0)) throw ParameterError("sweep: epsilon values must be positive");
  for (int v : ds)
    if (v < 1) throw ParameterError("sweep: d values must be positive");
  for (double v : alphas)
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("sweep: alpha values must lie in [0, 1]");
  if (jobs < 1) throw ParameterError("sweep: --jobs must be at least 1");
  if (instance.kind != InstanceKind::Random) throw ParameterError("sweep: only random instances are swept");
}

std::string instance_json(const InstanceConfig& cfg) { return to_json(make_instance(cfg).h); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace lcuwalk::harness
