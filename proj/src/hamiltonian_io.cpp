#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "lcuwalk/errors.hpp"
#include "lcuwalk/hamiltonian.hpp"

namespace lcuwalk {

std::string to_json(const SparseHamiltonian& h) {
  std::string out = fmt::format("{{\"n\": {}, \"d\": {}, \"entries\": [", h.n(), h.d());
  bool first = true;
  for (Eigen::Index j = 0; j < h.dim(); ++j) {
    for (auto k : h.row(j)) {
      if (k < j) continue;
      const cplx v = h.entries()(j, k);
      out += fmt::format("{}\n  [{}, {}, {:.17g}, {:.17g}]", first ? "" : ",", j, k,
                         v.real() + 0.0, v.imag() + 0.0);  // no "-0" in the output
      first = false;
    }
  }
  out += first ? "]}\n" : "\n]}\n";
  return out;
}

SparseHamiltonian from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("d") || !doc.contains("entries"))
    throw ParseError("expected an object with keys n, d, entries");
  if (!doc["n"].is_number_integer() || !doc["d"].is_number_integer() || !doc["entries"].is_array())
    throw ParseError("n and d must be integers and entries an array");

  const auto n = doc["n"].get<std::int64_t>();
  const auto d = doc["d"].get<std::int64_t>();
  if (n < 0 || n > 20) throw ParseError("n out of supported range");
  if (d < 1) throw ParseError("d must be positive");
  const std::int64_t dim = std::int64_t{1} << n;

  // (row, col) with row <= col -> (value, seen from upper, seen from lower)
  struct Slot {
    cplx value;
    bool upper = false;
    bool lower = false;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, Slot> slots;

  for (const auto& e : doc["entries"]) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number() || !e[3].is_number())
      throw ParseError("each entry must be [row:int, col:int, re:float, im:float]");
    const auto r = e[0].get<std::int64_t>();
    const auto c = e[1].get<std::int64_t>();
    if (r < 0 || c < 0 || r >= dim || c >= dim) throw ParseError("entry index out of range");
    const cplx v{e[2].get<double>(), e[3].get<double>()};
    const bool is_upper = r <= c;
    const auto key = is_upper ? std::make_pair(r, c) : std::make_pair(c, r);
    const cplx canonical = is_upper ? v : std::conj(v);
    auto [it, inserted] = slots.try_emplace(key);
    Slot& s = it->second;
    if ((is_upper && s.upper) || (!is_upper && s.lower))
      throw ParseError(fmt::format("duplicate entry ({}, {})", r, c));
    if (!inserted && s.value != canonical)
      throw HermiticityError(fmt::format("entry ({}, {}) is not the conjugate of its mirror", r, c));
    s.value = canonical;
    (is_upper ? s.upper : s.lower) = true;
  }

  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& [key, s] : slots) {
    const auto [r, c] = key;
    if (r == c && s.value.imag() != 0.0)
      throw HermiticityError(fmt::format("diagonal entry {} is not real", r));
    m(r, c) = s.value;
    m(c, r) = std::conj(s.value);
  }
  if (d > dim) throw ParseError("d exceeds the dimension 2^n");
  return SparseHamiltonian(static_cast<int>(n), static_cast<int>(d), std::move(m));
}

void save_json(const SparseHamiltonian& h, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(h);
  if (!out) throw IoError("failed writing " + path.string());
}

SparseHamiltonian load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace lcuwalk
