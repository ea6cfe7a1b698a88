#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qeof/measurement/estimator.hpp"
#include "qeof/reconstruction.hpp"
#include "qeof/states.hpp"

// State files: {"m": int, "n": int, "amplitudes": [[re, im], ...]}, m*n entries,
// A index major. Doubles are written with round-trip precision.

namespace qeof::io {

using nlohmann::json;

inline json state_to_json(const PureState& state) {
  json amps = json::array();
  for (const auto& z : state.amplitudes()) amps.push_back(json::array({z.real(), z.imag()}));
  return {{"m", state.m()}, {"n", state.n()}, {"amplitudes", std::move(amps)}};
}

namespace detail {

inline std::size_t read_dimension(const json& doc, const char* field) {
  if (!doc.contains(field)) throw Error(ErrorKind::invalid_input, std::string("state is missing field '") + field + "'");
  const json& v = doc.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw Error(ErrorKind::invalid_input, std::string("field '") + field + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace detail

inline PureState state_from_json(const json& doc, bool renormalize = false) {
  if (!doc.is_object()) throw Error(ErrorKind::invalid_input, "state document must be a JSON object");
  const std::size_t m = detail::read_dimension(doc, "m");
  const std::size_t n = detail::read_dimension(doc, "n");
  if (!doc.contains("amplitudes") || !doc.at("amplitudes").is_array()) {
    throw Error(ErrorKind::invalid_input, "field 'amplitudes' must be an array of [re, im] pairs");
  }
  const json& amps = doc.at("amplitudes");
  std::vector<Complex> values;
  values.reserve(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const json& entry = amps[k];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      throw Error(ErrorKind::invalid_input, "field 'amplitudes[" + std::to_string(k) + "]' must be [re, im]");
    }
    values.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return PureState(m, n, std::move(values), renormalize);
}

inline PureState parse_state(const std::string& text, bool renormalize = false) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::invalid_input, std::string("malformed JSON: ") + e.what());
  }
  return state_from_json(doc, renormalize);
}

inline PureState read_state_file(const std::string& path, bool renormalize = false) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open state file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_state(buffer.str(), renormalize);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_input, "cannot write '" + path + "'");
  out << text;
}

inline json pair_json(GeneratorIndex g) { return json::array({g.lo, g.hi}); }

inline json to_json(const ReconstructionReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"alpha", pair_json(t.alpha)},
                     {"beta", pair_json(t.beta)},
                     {"weight_T", t.weight_T},
                     {"c_const", t.c_const},
                     {"block_eof", t.block_eof},
                     {"contribution", t.contribution}});
  }
  return {{"mode", to_string(r.mode)},
          {"basis", to_string(r.basis)},
          {"certified", r.certified()},
          {"normalization", r.normalization},
          {"terms", std::move(terms)},
          {"total", r.total},
          {"eof_direct", r.direct},
          {"residual_vs_direct", r.residual_vs_direct}};
}

inline json to_json(const ShotPlan& p) {
  return {{"shots_per_observable", p.shots_per_observable},
          {"master_seed", p.master_seed},
          {"use_exact_probabilities", p.use_exact_probabilities},
          {"unbiased_squares", p.unbiased_squares},
          {"bootstrap_resamples", p.bootstrap_resamples}};
}

inline json to_json(const EstimateReport& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    blocks.push_back({{"alpha", pair_json(b.alpha)},
                      {"beta", pair_json(b.beta)},
                      {"t_hat", b.t_hat},
                      {"c_const_hat", b.c_const_hat},
                      {"concurrence_sq_hat", b.concurrence_sq_hat},
                      {"c_hat", b.c_hat},
                      {"e_block_hat", b.e_block_hat},
                      {"contribution", b.contribution},
                      {"std_error", b.std_error},
                      {"clamps", b.clamps}});
  }
  json out = {{"mode", to_string(r.mode)},
              {"basis", to_string(r.basis)},
              {"certified", r.certified()},
              {"plan", to_json(r.plan)},
              {"normalization", r.normalization},
              {"blocks", std::move(blocks)},
              {"dropped_blocks", r.dropped_blocks},
              {"e_hat", r.e_hat},
              {"std_error", r.std_error},
              {"shots_used", r.shots_used},
              {"clamp_count", r.clamp_count},
              {"squared_means", r.plan.unbiased_squares ? "bias-corrected" : "plug-in (C^2 biased by O(1/N))"}};
  if (r.bootstrap_std_error) out["bootstrap_std_error"] = *r.bootstrap_std_error;
  return out;
}

}  // namespace qeof::io
