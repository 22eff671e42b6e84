#pragma once

// json_io.hpp -- JSON serialization for reports, certificates, and cone
// verdicts.  Kept out of the core headers so they stay standard-library only.

#include <json.hpp>

#include "freeness.hpp"
#include "order.hpp"
#include "torsion.hpp"

namespace britton {

inline nlohmann::json freeness_report_to_json(const MultipleHnnPresentation& p,
                                              const FreenessReport& r) {
  nlohmann::json j;
  j["verdict"] = r.verdict;
  j["lengths"] = nlohmann::json::array();
  for (auto [ls, lt] : r.length_pairs) j["lengths"].push_back({ls, lt});
  j["classes"] = nlohmann::json::array();
  for (const auto& block : r.conjugacy_partition) {
    nlohmann::json b = nlohmann::json::array();
    for (const Word& w : block) b.push_back(format_word(p.base(), w));
    j["classes"].push_back(std::move(b));
  }
  j["failures"] = r.failures;
  j["note"] =
      "checks hyperbolicity, equal translation lengths, and pairwise "
      "non-conjugacy of the associated elements and their inverses; these are "
      "the hypotheses used with Bass's criterion, whose full statement is not "
      "restated here";
  return j;
}

inline nlohmann::json certificate_to_json(const MultipleHnnPresentation& p,
                                          const TorsionCertificate& c) {
  nlohmann::json j;
  j["g"] = format_hnn_word(p, c.g);
  j["conjugators"] = nlohmann::json::array();
  for (const HnnWord& h : c.conjugators) j["conjugators"].push_back(format_hnn_word(p, h));
  return j;
}

inline TorsionCertificate certificate_from_json(const MultipleHnnPresentation& p,
                                                const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("conjugators"))
    throw parse_error("certificate: need an object with 'g' and 'conjugators'");
  if (!j["g"].is_string() || !j["conjugators"].is_array())
    throw parse_error("certificate: 'g' must be a word and 'conjugators' a list of words");
  TorsionCertificate c;
  c.g = parse_hnn_word(p, j["g"].get<std::string>());
  for (const auto& h : j["conjugators"]) {
    if (!h.is_string()) throw parse_error("certificate: conjugators must be words");
    c.conjugators.push_back(parse_hnn_word(p, h.get<std::string>()));
  }
  if (c.conjugators.empty())
    throw parse_error("certificate: at least one conjugator is required");
  return c;
}

inline nlohmann::json cone_verdict_to_json(const ConeVerdict& v, OrderMode mode, int radius) {
  nlohmann::json j;
  j["mode"] = mode == OrderMode::bi ? "bi" : "left";
  j["radius"] = radius;
  j["verdict"] = v.kind == ConeVerdict::Kind::refuted ? "refuted" : "no-obstruction";
  j["cone"] = v.cone;
  j["trace"] = nlohmann::json::array();
  for (const TraceStep& s : v.trace)
    j["trace"].push_back({{"axiom", s.axiom}, {"elements", s.elements}});
  return j;
}

inline std::vector<TraceStep> trace_from_json(const nlohmann::json& j) {
  std::vector<TraceStep> trace;
  if (!j.is_array()) throw parse_error("trace: expected an array of steps");
  for (const auto& s : j) {
    if (!s.is_object() || !s.contains("axiom") || !s.contains("elements"))
      throw parse_error("trace: each step needs 'axiom' and 'elements'");
    TraceStep step;
    step.axiom = s["axiom"].get<std::string>();
    for (const auto& e : s["elements"]) step.elements.push_back(e.get<int>());
    trace.push_back(std::move(step));
  }
  return trace;
}

}  // namespace britton
