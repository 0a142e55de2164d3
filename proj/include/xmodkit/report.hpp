#pragma once

// JSON views of the library's reports. Elements are always written by name.

#include <json.hpp>

#include <string>
#include <vector>

#include "xmodkit/condition_p.hpp"
#include "xmodkit/lifting.hpp"
#include "xmodkit/words.hpp"
#include "xmodkit/xmod.hpp"

namespace xmodkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// [[x, f(x)], ...] in source index order.
inline Json hom_json(const GroupHom& f) {
  Json a = Json::array();
  for (std::size_t x = 0; x < f.source().order(); ++x)
    a.push_back({f.source().name(static_cast<Elem>(x)), f.target().name(f(static_cast<Elem>(x)))});
  return a;
}

inline Json group_json(const FiniteGroup& g) {
  Json names = Json::array();
  for (const auto& n : g.names()) names.push_back(n);
  return {{"order", g.order()}, {"abelian", g.is_commutative()}, {"exponent", g.exponent()}, {"elements", names}};
}

inline Json certificate_json(const SectionCertificate& c) {
  Json eqs = Json::array();
  for (const auto& e : c.equations) {
    Json j{{"label", e.label}, {"passed", e.passed}};
    if (!e.detail.empty()) j["detail"] = e.detail;
    eqs.push_back(j);
  }
  Json j{{"status", to_string(c.status)}, {"ok", c.ok()}, {"message", c.message}, {"nodes", c.nodes}, {"equations", eqs}};
  if (c.section) j["section"] = {{"f_t", hom_json(c.section->f_t)}, {"f_g", hom_json(c.section->f_g)}};
  return j;
}

inline Json word_audit_json(const WordAuditReport& r, const FactorSignature& sig) {
  Json j{{"words", r.words}, {"pass", r.ok()}};
  if (r.violation) j["violation"] = format_word(sig, *r.violation);
  return j;
}

/// Elementwise axioms with witnesses and both sides of the failing equation,
/// word-level axioms at `word_len` and the ternary condition at `ternary_len`.
inline Json check_json(const std::string& name, const CrossedModule& xm, std::size_t word_len, std::size_t ternary_len) {
  const auto& t = xm.t();
  const auto& g = xm.g();
  const auto& a = xm.action();
  const auto& d = xm.boundary();
  const AxiomReport ax = check_axioms(xm);
  Json pre{{"pass", ax.precrossed()}};
  if (ax.precrossed_witness) {
    const auto [ge, te] = *ax.precrossed_witness;
    pre["witness"] = {{"g", g.name(ge)}, {"t", t.name(te)}};
    pre["lhs"] = g.name(d(a(ge, te)));
    pre["rhs"] = g.name(g.conj(ge, d(te)));
  }
  Json pf{{"pass", ax.peiffer()}};
  if (ax.peiffer_witness) {
    const auto [x, y] = *ax.peiffer_witness;
    pf["witness"] = {{"t", t.name(x)}, {"t2", t.name(y)}};
    pf["lhs"] = t.name(a(d(x), y));
    pf["rhs"] = t.name(t.conj(x, y));
  }
  const WordLevelReport wl = check_axioms_wordlevel(xm, word_len);
  const WordAuditReport tr = check_ternary(xm, ternary_len);
  const bool agree = wl.precrossed() == ax.precrossed() && wl.peiffer() == ax.peiffer();
  // A ternary failure on a candidate satisfying the first two axioms would
  // contradict the equivalence with the classical notion.
  const bool anomaly = ax.ok() && !tr.ok();
  return {{"name", name},
          {"t_order", t.order()},
          {"g_order", g.order()},
          {"axioms", {{"precrossed", pre}, {"peiffer", pf}}},
          {"wordlevel",
           {{"length", word_len},
            {"condition1", word_audit_json(wl.condition1, FactorSignature{g, t})},
            {"condition2", word_audit_json(wl.condition2, FactorSignature{t, t})}}},
          {"ternary", {{"length", ternary_len}, {"audit", word_audit_json(tr, FactorSignature{g, t, t})}}},
          {"routes_agree", agree},
          {"ternary_anomaly", anomaly},
          {"pass", ax.ok() && agree && !anomaly}};
}

inline Json classes_json(const Quotient& q) {
  Json classes = Json::array();
  for (std::size_t c = 0; c < q.group.order(); ++c) {
    Json members = Json::array();
    for (std::size_t x = 0; x < q.projection.source().order(); ++x)
      if (q.projection(static_cast<Elem>(x)) == c) members.push_back(q.projection.source().name(static_cast<Elem>(x)));
    classes.push_back(members);
  }
  return classes;
}

inline Json pi0_json(const std::string& name, const CrossedModule& xm) {
  Json j{{"name", name}};
  try {
    const Quotient a = pi0(xm);
    const Quotient b = pi0_via_coequalizer(xm);
    bool agree = true;
    try {
      quotient_comparison(a, b);
    } catch (const InvariantBreach&) {
      agree = false;
    }
    j["pi0"] = {{"order", a.group.order()},
                {"abelian", a.group.is_commutative()},
                {"exponent", a.group.exponent()},
                {"classes", classes_json(a)}};
    j["coequalizer_order"] = b.group.order();
    j["routes_agree"] = agree;
    j["pass"] = agree;
  } catch (const AlgebraError& e) {
    j["error"] = e.what();
    j["pass"] = false;
  }
  return j;
}

inline Json diagram_json(const DiagramReport& r) {
  Json objs = Json::array(), seqs = Json::array(), certs = Json::array();
  for (const auto& o : r.objects)
    objs.push_back({{"name", o.name}, {"order", o.order}, {"projective", o.projective}, {"cover_splits", o.cover_splits}});
  for (const auto& [n, v] : r.sequences) seqs.push_back({{"name", n}, {"split_exact", v.empty()}, {"violation", v}});
  for (const auto& c : r.certificates) certs.push_back({{"status", to_string(c.status)}, {"ok", c.ok()}});
  return {{"objects", objs},
          {"sequences", seqs},
          {"crossed_module_ok", r.crossed_module_ok},
          {"crossed_module_projective", r.crossed_module_projective},
          {"generic_route_agrees", r.generic_route_agrees},
          {"certificates", certs},
          {"pass", r.ok()}};
}

inline Json non_schreier_json(const NonSchreierReport& r) {
  Json certs = Json::array();
  for (const auto& [n, c] : r.certificates) {
    Json j = certificate_json(c);
    j.erase("section");
    certs.push_back({{"epi", n}, {"certificate", j}});
  }
  return {{"t_order", r.t_order},
          {"g_order", r.g_order},
          {"relatively_projective", r.relatively_projective},
          {"generic_route_agrees", r.generic_route_agrees},
          {"free_shaped", r.shape.free_shaped},
          {"obstruction", r.shape.reason},
          {"relabel_stable", r.relabel_stable},
          {"certificates", certs},
          {"pass", r.ok()}};
}

inline Json transfer_json(const TransferReport& r) {
  return {{"sequences", r.sequences},
          {"middle_projective", r.middle_projective},
          {"discrete_instances", r.discrete_instances},
          {"budget_exhausted", r.budget_exhausted},
          {"counterexamples", r.counterexamples},
          {"oracle_disagreements", r.oracle_disagreements},
          {"pass", r.ok()}};
}

inline Json preservation_json(const Pi0PreservationReport& r) {
  return {{"projective_checked", r.projective_checked},
          {"projective_failures", r.projective_failures},
          {"discrete_checked", r.discrete_checked},
          {"discrete_failures", r.discrete_failures},
          {"sequences_checked", r.sequences_checked},
          {"exactness_failures", r.exactness_failures},
          {"pass", r.ok()}};
}

}  // namespace xmodkit
