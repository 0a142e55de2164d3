// xmodkit: batch front end over definition files.
//
// Exit codes: 0 all checks pass, 1 a property is falsified, 2 input or usage
// error, 3 a search budget ran out before a verdict.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "xmodkit/condition_p.hpp"
#include "xmodkit/io.hpp"
#include "xmodkit/lifting.hpp"
#include "xmodkit/report.hpp"

namespace {

using namespace xmodkit;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Outcome { kPass, kFail, kBudget, kError };

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kPass: return "pass";
    case Outcome::kFail: return "fail";
    case Outcome::kBudget: return "budget-exhausted";
    case Outcome::kError: return "error";
  }
  return "?";
}

struct Options {
  std::string command;
  std::string sub;
  std::string file;
  std::vector<std::string> names;
  std::size_t budget = HomSearchOptions{}.budget;
  std::size_t ternary_len = 8;
  std::size_t word_len = 4;
  std::uint64_t seed = 0;
  std::string family;
  std::string algorithm = "projective-section";
  std::size_t count = 30;
  std::size_t max_order = 12;
  std::size_t max_x = 3;
  bool summary = false;
};

struct Run {
  Json results = Json::array();
  bool failed = false;
  bool exhausted = false;
  bool errored = false;

  void add(Json r, Outcome o) {
    r["outcome"] = outcome_name(o);
    failed = failed || o == Outcome::kFail;
    exhausted = exhausted || o == Outcome::kBudget;
    errored = errored || o == Outcome::kError;
    results.push_back(std::move(r));
  }
  int exit_code() const { return errored ? 2 : failed ? 1 : exhausted ? 3 : 0; }
};

const char* verdict_name(int code) {
  switch (code) {
    case 0: return "pass";
    case 1: return "fail";
    case 2: return "error";
    default: return "budget-exhausted";
  }
}

Outcome from_pass(bool pass) { return pass ? Outcome::kPass : Outcome::kFail; }

struct Loaded {
  Definitions defs;
  Json inputs;
};

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Loaded l{load_definitions(ss.str()), {}};
  const std::string canon = canonical_text(l.defs);
  l.inputs = {{"path", path}, {"digest", digest_hex(canon)}, {"canonical", canon}};
  return l;
}

std::vector<std::string> select(const Definitions& d, const std::vector<std::string>& names, const char* kind) {
  if (names.empty()) {
    auto all = d.names_of(kind);
    if (all.empty()) throw UsageError(std::string("the file defines no ") + kind + " blocks");
    return all;
  }
  for (const auto& n : names) {
    const DefBlock* b = d.block(n);
    if (!b) throw UsageError("unknown name '" + n + "'");
    if (b->kind != kind) throw UsageError("'" + n + "' is a " + b->kind + ", expected a " + kind);
  }
  return names;
}

LiftOptions lift_options(const Options& o) {
  LiftOptions l;
  l.budget = o.budget;
  l.ternary_len = o.ternary_len;
  return l;
}

void cmd_check(const Options& o, const Definitions& d, Run& run) {
  for (const auto& n : select(d, o.names, "xmod")) {
    Json r = check_json(n, d.xmods.at(n).xm, o.word_len, o.ternary_len);
    const bool pass = r["pass"].get<bool>();
    run.add(std::move(r), from_pass(pass));
  }
}

void cmd_pi0(const Options& o, const Definitions& d, Run& run) {
  for (const auto& n : select(d, o.names, "xmod")) {
    Json r = pi0_json(n, d.xmods.at(n).xm);
    const bool pass = r["pass"].get<bool>();
    run.add(std::move(r), from_pass(pass));
  }
}

Outcome lift_outcome(const SectionCertificate& c) {
  switch (c.status) {
    case LiftStatus::kSuccess: return from_pass(c.ok());
    case LiftStatus::kBudgetExhausted: return Outcome::kBudget;
    case LiftStatus::kPrecondition: return Outcome::kError;
    default: return Outcome::kFail;
  }
}

void cmd_lift(const Options& o, const Definitions& d, Run& run) {
  if (o.algorithm != "projective-section" && o.algorithm != "pullback-section")
    throw UsageError("--algorithm must be projective-section or pullback-section");
  for (const auto& n : select(d, o.names, "morphism")) {
    const MorphismDef& m = d.morphisms.at(n);
    if (!m.xmod) throw UsageError("'" + n + "' is a morphism of split extensions; lift needs a crossed-module epi");
    const XModDef& src = d.xmods.at(m.source);
    const XModDef& tgt = d.xmods.at(m.target);
    const XModEpi e{src.xm, tgt.xm, *m.xmod};
    SectionCertificate c;
    if (o.algorithm == "projective-section") {
      if (!tgt.extension)
        throw UsageError("projective-section needs the target '" + m.target + "' declared with 'extension = ...'");
      c = projective_section(e, d.sses.at(*tgt.extension), lift_options(o));
    } else {
      c = pullback_section(e, lift_options(o));
    }
    Json r{{"name", n}, {"algorithm", o.algorithm}, {"source", m.source}, {"target", m.target},
           {"certificate", certificate_json(c)}};
    run.add(std::move(r), lift_outcome(c));
  }
}

std::string family_digest(const std::string& name, const std::vector<std::string>& members, const Definitions& d) {
  std::string s = name + ":";
  for (const auto& m : members) {
    const MorphismDef& md = d.morphisms.at(m);
    s += m + "(" + md.source + "->" + md.target + ")";
    if (md.xmod) s += hom_json(md.xmod->f_t).dump() + hom_json(md.xmod->f_g).dump();
    if (md.sse) s += hom_json(md.sse->g).dump();
  }
  return digest_hex(s);
}

bool is_module_arrow(const CrossedModule& xm) {
  return is_z4_module(xm.t()) && is_z4_module(xm.g()) && xm.action().is_trivial();
}

void cmd_audit(const Options& o, const Definitions& d, Run& run) {
  if (o.names.size() != 1) throw UsageError("audit takes exactly one object name");
  const std::string& n = o.names.front();
  const DefBlock* b = d.block(n);
  if (!b) throw UsageError("unknown name '" + n + "'");
  const std::vector<std::string>* members = nullptr;
  if (!o.family.empty()) {
    auto it = d.families.find(o.family);
    if (it == d.families.end()) throw UsageError("unknown family '" + o.family + "'");
    members = &it->second;
  }
  if (b->kind == "sse") {
    if (!members) throw UsageError("auditing a split extension needs --family");
    const SplitExtension& obj = d.sses.at(n);
    EpiFamily fam{o.family, {}};
    for (const auto& m : *members) {
      const MorphismDef& md = d.morphisms.at(m);
      if (!md.sse) throw UsageError("family '" + o.family + "' holds crossed-module morphisms");
      if (!(md.sse->target.base() == obj.base())) throw UsageError("family member '" + m + "' is over another base");
      if (!md.sse->f.is_surjective()) throw UsageError("family member '" + m + "' is not a regular epimorphism");
      fam.epis.push_back(*md.sse);
    }
    const ProjectivityReport p = is_projective_rel(obj, fam, o.budget);
    Json r{{"name", n},
           {"family", o.family},
           {"family_digest", family_digest(o.family, *members, d)},
           {"projective", p.projective},
           {"epis", p.epis},
           {"morphisms", p.morphisms},
           {"budget_exhausted", p.budget_exhausted}};
    if (p.failed_epi) r["failed_epi"] = (*members)[*p.failed_epi];
    run.add(std::move(r), p.budget_exhausted ? Outcome::kBudget : from_pass(p.projective));
    return;
  }
  if (b->kind != "xmod") throw UsageError("audit needs an sse or xmod, '" + n + "' is a " + b->kind);
  const CrossedModule& xm = d.xmods.at(n).xm;
  if (!is_module_arrow(xm))
    throw UsageError("relative projectivity of crossed modules is audited for Z/4-module arrows only");
  XModEpiFamily fam;
  std::vector<std::string> names;
  if (members) {
    fam.name = o.family;
    fam.epis.push_back({"canonical-cover", canonical_cover(xm)});
    for (const auto& m : *members) {
      const MorphismDef& md = d.morphisms.at(m);
      if (!md.xmod) throw UsageError("family '" + o.family + "' holds split-extension morphisms");
      const CrossedModule& tgt = d.xmods.at(md.target).xm;
      if (!(tgt.boundary() == xm.boundary()))
        throw UsageError("family member '" + m + "' does not land in '" + n + "'");
      fam.epis.push_back({m, {d.xmods.at(md.source).xm, xm, *md.xmod}});
    }
  } else {
    fam = default_family(xm, o.seed);
  }
  for (const auto& e : fam.epis) names.push_back(e.name);
  const RelProjectivity p = certify_rel_projective(fam, o.budget);
  const bool structure = projective_arrow_z4(xm);
  const bool agree = p.budget_exhausted || p.projective == structure;
  Json r{{"name", n},
         {"family", fam.name},
         {"members", names},
         {"family_digest", members ? family_digest(o.family, *members, d) : digest_hex(fam.name + ":" + std::to_string(o.seed))},
         {"projective", p.projective},
         {"structure_criterion", structure},
         {"routes_agree", agree},
         {"epis", p.epis},
         {"budget_exhausted", p.budget_exhausted}};
  if (p.failed_epi) r["failed_epi"] = *p.failed_epi;
  run.add(std::move(r), p.budget_exhausted ? Outcome::kBudget : from_pass(p.projective && agree));
}

void cmd_condp(const Options& o, Run& run, Json& inputs) {
  const LiftOptions lo = lift_options(o);
  if (o.sub == "z4-pipeline") {
    std::vector<std::pair<std::string, SetEpi>> maps;
    if (!o.file.empty()) {
      Loaded l = load(o.file);
      inputs = l.inputs;
      for (const auto& n : select(l.defs, o.names, "setmap")) {
        const SetMapDef& m = l.defs.setmaps.at(n);
        maps.push_back({n, {m.f, m.s}});
      }
    } else {
      for (auto& e : split_set_epis(o.max_x)) maps.push_back({"", e});
    }
    for (auto& [n, e] : maps) {
      const DiagramReport r = pipeline_diagram_P(e.f, e.s, o.seed, lo);
      Json j = diagram_json(r);
      if (!n.empty()) j["name"] = n;
      j["f"] = e.f;
      j["s"] = e.s;
      bool exhausted = false;
      for (const auto& c : r.certificates) exhausted = exhausted || c.status == LiftStatus::kBudgetExhausted;
      run.add(std::move(j), r.ok() ? Outcome::kPass : exhausted ? Outcome::kBudget : Outcome::kFail);
    }
  } else if (o.sub == "non-schreier") {
    const NonSchreierReport r = non_schreier_demo(o.seed, lo);
    bool exhausted = false;
    for (const auto& [n, c] : r.certificates) exhausted = exhausted || c.status == LiftStatus::kBudgetExhausted;
    Json j = non_schreier_json(r);
    j["name"] = o.sub;
    run.add(std::move(j), r.ok() ? Outcome::kPass : exhausted ? Outcome::kBudget : Outcome::kFail);
  } else if (o.sub == "transfer") {
    const TransferReport r = theorem_P_transfer_check(o.seed, o.count);
    const bool falsified = !r.counterexamples.empty() || !r.oracle_disagreements.empty();
    Json j = transfer_json(r);
    j["name"] = o.sub;
    run.add(std::move(j), falsified ? Outcome::kFail : r.budget_exhausted ? Outcome::kBudget : Outcome::kPass);
  } else if (o.sub == "preservation") {
    const Pi0PreservationReport r = pi0_preservation_suite(o.seed, o.max_order);
    Json j = preservation_json(r);
    j["name"] = o.sub;
    run.add(std::move(j), from_pass(r.ok()));
  } else {
    throw UsageError("unknown condp subcommand '" + o.sub +
                     "' (expected z4-pipeline, non-schreier, transfer or preservation)");
  }
}

std::string summary_line(const Json& r) {
  std::string line = r.value("outcome", "?");
  line += "  ";
  if (r.contains("name")) line += r["name"].get<std::string>();
  else if (r.contains("f")) line += "f=" + r["f"].dump() + " s=" + r["s"].dump();
  if (r.contains("certificate")) line += "  " + r["certificate"]["status"].get<std::string>();
  if (r.contains("pi0")) line += "  |pi0| = " + std::to_string(r["pi0"]["order"].get<std::size_t>());
  if (r.contains("obstruction")) line += "  " + r["obstruction"].get<std::string>();
  if (r.contains("error")) line += "  " + r["error"].get<std::string>();
  return line;
}

void emit(const Options& o, const Json& report, std::ostream& out) {
  if (!o.summary) {
    out << report.dump(2) << '\n';
    return;
  }
  out << report["command"].get<std::string>() << ": " << report["verdict"].get<std::string>() << " (exit "
      << report["exit_code"].get<int>() << ")\n";
  if (report.contains("error")) out << "  " << report["error"]["message"].get<std::string>() << '\n';
  for (const auto& r : report["results"]) out << "  " << summary_line(r) << '\n';
}

int run_command(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  Json report{{"tool", "xmodkit"}, {"tool_version", kToolVersion}, {"command", o.command}};
  if (o.command == "condp") report["subcommand"] = o.sub;
  report["seed"] = o.seed;
  report["parameters"] = {{"budget", o.budget}, {"ternary_len", o.ternary_len}, {"word_len", o.word_len}};
  Json inputs = nullptr;
  Run run;
  int code = 0;
  try {
    if (o.command == "condp") {
      cmd_condp(o, run, inputs);
    } else {
      Loaded l = load(o.file);
      inputs = l.inputs;
      if (o.command == "check") cmd_check(o, l.defs, run);
      else if (o.command == "pi0") cmd_pi0(o, l.defs, run);
      else if (o.command == "lift") cmd_lift(o, l.defs, run);
      else cmd_audit(o, l.defs, run);
    }
    code = run.exit_code();
  } catch (const ParseError& e) {
    report["error"] = {{"message", e.message()}, {"line", e.line()}, {"column", e.column()}};
    std::cerr << o.file << ":" << e.line() << ":" << e.column() << ": " << e.message() << '\n';
    code = 2;
  } catch (const UsageError& e) {
    report["error"] = {{"message", e.what()}};
    std::cerr << "xmodkit: " << e.what() << '\n';
    code = 2;
  } catch (const AlgebraError& e) {
    report["error"] = {{"message", e.what()}};
    std::cerr << "xmodkit: " << e.what() << '\n';
    code = 2;
  } catch (const BudgetExhausted& e) {
    report["error"] = {{"message", std::string("budget exhausted: ") + e.what()}};
    code = 3;
  } catch (const InvariantBreach& e) {
    report["error"] = {{"message", std::string("invariant breach: ") + e.what()}};
    std::cerr << "xmodkit: invariant breach: " << e.what() << '\n';
    code = 1;
  }
  report["inputs"] = inputs;
  report["verdict"] = verdict_name(code);
  report["exit_code"] = code;
  report["results"] = run.results;
  report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit(o, report, std::cout);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Crossed-module laboratory over finite groups and Z/4-modules"};
  app.set_version_flag("--version", std::string("xmodkit ") + kToolVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_flag_function("--json", [&](std::int64_t) { o.summary = false; }, "JSON report on stdout (default)");
    c->add_flag("--summary", o.summary, "One line per result instead of JSON");
    c->add_option("--budget", o.budget, "Node budget for each exhaustive search")->check(CLI::PositiveNumber);
    c->add_option("--ternary-len", o.ternary_len, "Word length for ternary audits")->check(CLI::Range(0, 16));
    c->add_option("--seed", o.seed, "Seed for every generated corpus");
    c->add_option("--family", o.family, "Named family of test epis");
  };

  auto* check = app.add_subcommand("check", "Crossed-module axioms: elementwise, word-level and ternary");
  common(check);
  check->add_option("file", o.file, "Definition file")->required();
  check->add_option("names", o.names, "xmod blocks to check (default: all)");
  check->add_option("--word-len", o.word_len, "Word length for the word-level axioms")->check(CLI::Range(0, 12));

  auto* pi0c = app.add_subcommand("pi0", "Connected components by cokernel and by coequalizer");
  common(pi0c);
  pi0c->add_option("file", o.file, "Definition file")->required();
  pi0c->add_option("names", o.names, "xmod blocks (default: all)");

  auto* lift = app.add_subcommand("lift", "Section certificates for epimorphisms of crossed modules");
  common(lift);
  lift->add_option("file", o.file, "Definition file")->required();
  lift->add_option("names", o.names, "morphism blocks (default: all)");
  lift->add_option("--algorithm", o.algorithm, "projective-section or pullback-section")
      ->check(CLI::IsMember({"projective-section", "pullback-section"}));

  auto* condp = app.add_subcommand("condp", "Projective-closure experiments");
  common(condp);
  condp->add_option("sub", o.sub, "z4-pipeline, non-schreier, transfer or preservation")->required();
  condp->add_option("file", o.file, "Definition file with setmap blocks (z4-pipeline only)");
  condp->add_option("names", o.names, "setmap blocks (default: all)");
  condp->add_option("--count", o.count, "Number of generated sequences (transfer)")->check(CLI::PositiveNumber);
  condp->add_option("--max-order", o.max_order, "Largest group order (preservation)");
  condp->add_option("--max-x", o.max_x, "Largest domain of the set maps (z4-pipeline)")->check(CLI::Range(0, 3));

  auto* audit = app.add_subcommand("audit", "Relative projectivity against a family of epis");
  common(audit);
  audit->add_option("file", o.file, "Definition file")->required();
  audit->add_option("names", o.names, "sse or xmod block")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto* c : {check, pi0c, lift, condp, audit})
    if (c->parsed()) o.command = c->get_name();
  if (o.command == "condp" && o.sub != "z4-pipeline" && !o.file.empty()) {
    std::cerr << "xmodkit: condp " << o.sub << " takes no definition file\n";
    return 2;
  }
  return run_command(o);
}
