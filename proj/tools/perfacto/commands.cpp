#include "commands.hpp"

#include <iomanip>
#include <map>
#include <sstream>

#include "corpus.hpp"
#include "perfacto/bifunctor.hpp"
#include "perfacto/colimit.hpp"
#include "perfacto/errors.hpp"
#include "perfacto/resolution.hpp"
#include "properties.hpp"

namespace perfacto::cli {

namespace {

// Standard input can only be read once, so every document is cached by path.
const Json& document(const std::string& path) {
  static std::map<std::string, Json> cache;
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, read_json_file(path)).first;
  return it->second;
}

std::pair<std::string, std::string> split_ref(const std::string& ref) {
  auto hash = ref.rfind('#');
  if (hash == std::string::npos || ref == "-") return {ref, ""};
  return {ref.substr(0, hash), ref.substr(hash + 1)};
}

ChainComplex complex_ref(const std::string& ref) {
  auto [path, name] = split_ref(ref);
  return load(path).complex(name);
}

ChainMap map_ref(const std::string& ref) {
  auto [path, name] = split_ref(ref);
  return load(path).map(name);
}

std::string homology_lines(const ChainComplex& c, Json* out = nullptr) {
  std::ostringstream text;
  auto h = homology_report(c);
  Json j = Json::object();
  for (const auto& [v, desc] : h) {
    text << "  H_" << v << " = " << desc << "\n";
    j[std::to_string(v)] = desc;
  }
  if (h.empty()) text << "  (empty support: every homology group is 0)\n";
  if (out) *out = j;
  return text.str();
}

Outcome finish(Outcome o, WorkspaceWriter& w, const std::string& command) {
  Json doc = w.json();
  for (const auto& [k, v] : o.report.items()) doc[k] = v;
  doc["command"] = command;
  o.report = doc;
  return o;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// The probes named by a reference: the chosen map, every map of the file
// landing in y, or, for a complex P, generators of the chain maps P -> y
// (lifting is linear, so generators decide every map out of P).
std::vector<Probe> probes_from(const std::string& ref, const ChainComplex& y) {
  auto [path, name] = split_ref(ref);
  auto ws = load(path);
  auto from_map = [&](const ChainMap& f) {
    if (!identical(f.target(), y))
      throw ReferenceError(ref + ": probe map does not land in the target of the map under test");
    return Probe{f.source(), f};
  };
  auto from_complex = [&](const ChainComplex& p) {
    std::vector<Probe> out;
    auto h = total_hom(p, y);
    auto pieces = zbhc(h.complex);
    auto it = pieces.cycles_in.find(0);
    if (it == pieces.cycles_in.end()) return out;
    const Matrix& gens = it->second.action();
    for (std::size_t j = 0; j < gens.cols(); ++j) out.push_back({p, h.to_chain_map(gens.col(j))});
    return out;
  };
  if (!name.empty()) {
    if (ws.maps.count(name)) return {from_map(ws.maps.at(name))};
    return from_complex(ws.complex(name));
  }
  if (!ws.maps.empty()) {
    std::vector<Probe> out;
    for (const auto& [n, f] : ws.maps)
      if (identical(f.target(), y)) out.push_back({f.source(), f});
    if (out.empty()) throw ReferenceError(ref + ": no probe map lands in the target");
    return out;
  }
  return from_complex(ws.complex());
}

ComplexFunctor functor_from(const std::string& spec) {
  if (spec == "Z") return ComplexFunctor::graded(GradedFunctor::Z);
  if (spec == "B") return ComplexFunctor::graded(GradedFunctor::B);
  if (spec == "C") return ComplexFunctor::graded(GradedFunctor::C);
  if (spec == "H") return ComplexFunctor::graded(GradedFunctor::H);
  if (spec.rfind("tensor:", 0) == 0) return ComplexFunctor::tensor_with(complex_ref(spec.substr(7)));
  if (spec.rfind("hom:", 0) == 0) return ComplexFunctor::hom_from(complex_ref(spec.substr(4)));
  throw ParseError("unknown functor '" + spec + "' (expected Z, B, C, H, tensor:REF or hom:REF)");
}

}  // namespace

Workspace load(const std::string& path) { return Workspace::from_json(document(path)); }

Outcome check(const std::vector<std::string>& inputs) {
  Outcome o;
  std::ostringstream text;
  Json files = Json::array();
  bool all_ok = true;
  for (const auto& path : inputs) {
    const Json& doc = document(path);
    auto ws = Workspace::from_json(doc);
    Json again = reemit(doc);
    auto back = Workspace::from_json(again);
    // every object must come back equal, possibly under the name of an
    // identical object when the input repeated itself
    bool equal = true;
    for (const auto& [name, c] : ws.complexes) {
      bool found = back.complexes.count(name) && identical(back.complexes.at(name), c);
      for (const auto& [n2, c2] : back.complexes) found = found || identical(c2, c);
      equal = equal && found;
    }
    for (const auto& [name, f] : ws.maps) {
      bool found = back.maps.count(name) && identical(back.maps.at(name), f);
      for (const auto& [n2, f2] : back.maps) found = found || identical(f2, f);
      equal = equal && found;
    }
    bool exact = again == doc;
    all_ok = all_ok && equal;
    text << path << ":\n" << ws.summary() << "round trip: "
         << (equal ? (exact ? "exact" : "equal values") : "FAILED") << "\n";
    files.push_back(Json{{"path", path},
                         {"modules", ws.modules.size()},
                         {"complexes", ws.complexes.size()},
                         {"maps", ws.maps.size()},
                         {"diagrams", ws.diagrams.size()},
                         {"roundtrip", equal},
                         {"exact", exact}});
  }
  o.code = all_ok ? kTrue : kFalse;
  o.text = text.str();
  o.report = Json{{"command", "check"}, {"files", files}, {"valid", all_ok}};
  return o;
}

Outcome homology(const std::string& ref) {
  auto c = complex_ref(ref);
  WorkspaceWriter w;
  Outcome o;
  Json h;
  o.text = c.describe() + " over " + c.ring().name() + "\n" + homology_lines(c, &h);
  bool acyclic = is_acyclic(c);
  o.text += std::string("acyclic: ") + yes_no(acyclic) + "\n";
  o.report["complex"] = w.add("M", c);
  o.report["homology"] = h;
  o.report["acyclic"] = acyclic;
  return finish(o, w, "homology");
}

Outcome cone(const std::string& ref) {
  auto alpha = map_ref(ref);
  auto data = perfacto::cone(alpha);
  bool qi = is_quasi_iso(alpha);
  WorkspaceWriter w;
  Outcome o;
  Json h;
  o.text = "Cone = " + data.complex.describe() + "\n" + homology_lines(data.complex, &h) +
           "quasi-isomorphism: " + yes_no(qi) + "\n";
  o.report["map"] = w.add("alpha", alpha);
  o.report["cone"] = w.add("cone", data.complex);
  o.report["inclusion"] = w.add("inclusion", data.inclusion);
  o.report["projection"] = w.add("projection", data.projection);
  o.report["homology"] = h;
  o.report["quasi_iso"] = qi;
  return finish(o, w, "cone");
}

Outcome hom(const std::string& left, const std::string& right) {
  auto m = complex_ref(left);
  auto n = complex_ref(right);
  auto h = total_hom(m, n);
  WorkspaceWriter w;
  Outcome o;
  Json hj;
  o.text = "Hom = " + h.complex.describe() + "\n" + homology_lines(h.complex, &hj);
  o.report["left"] = w.add("M", m);
  o.report["right"] = w.add("N", n);
  o.report["hom"] = w.add("Hom", h.complex);
  o.report["homology"] = hj;
  return finish(o, w, "hom");
}

Outcome tensor(const std::string& left, const std::string& right) {
  auto m = complex_ref(left);
  auto n = complex_ref(right);
  auto t = total_tensor(m, n);
  WorkspaceWriter w;
  Outcome o;
  Json hj;
  o.text = "Tensor = " + t.complex.describe() + "\n" + homology_lines(t.complex, &hj);
  o.report["left"] = w.add("M", m);
  o.report["right"] = w.add("N", n);
  o.report["tensor"] = w.add("Tensor", t.complex);
  o.report["homology"] = hj;
  return finish(o, w, "tensor");
}

Outcome snf(const std::string& path) {
  const Json& doc = document(path);
  if (!doc.is_object() || !doc.contains("ring") || !doc.contains("matrix"))
    throw ParseError(path + ": expected {\"ring\": ..., \"matrix\": [[...]]}");
  Ring ring = ring_from_json(doc["ring"]);
  Matrix a = matrix_from_json(doc["matrix"], ring);
  auto d = perfacto::snf(a);
  bool verified = d.U * a * d.V == d.S &&
                  d.U * d.U_inv == Matrix::identity(ring, a.rows()) &&
                  d.V * d.V_inv == Matrix::identity(ring, a.cols());
  Outcome o;
  std::ostringstream text;
  text << "diagonal:";
  Json diag = Json::array();
  for (const auto& x : d.diagonal()) {
    text << " " << ring.to_string(x);
    diag.push_back(ring.to_string(x));
  }
  text << "\nrank: " << d.rank << "\nU * A * V == S: " << yes_no(verified) << "\n";
  o.text = text.str();
  o.code = verified ? kTrue : kFalse;
  o.report = Json{{"command", "snf"},
                  {"ring", to_json(ring)},
                  {"matrix", to_json(a)},
                  {"S", to_json(d.S)},
                  {"U", to_json(d.U)},
                  {"V", to_json(d.V)},
                  {"diagonal", diag},
                  {"rank", d.rank},
                  {"verified", verified}};
  return o;
}

Outcome contract(const std::string& ref) {
  auto c = complex_ref(ref);
  auto found = contraction(c);
  WorkspaceWriter w;
  Outcome o;
  o.report["complex"] = w.add("C", c);
  o.report["contractible"] = bool(found);
  o.report["acyclic"] = is_acyclic(c);
  if (found) {
    o.report["sigma"] = w.add("sigma", found->sigma);
    o.report["verified"] = found->verify();
  }
  o.text = c.describe() + "\ncontractible: " + yes_no(bool(found)) +
           (found ? std::string(" (d sigma + sigma d = id verified: ") + yes_no(found->verify()) + ")"
                  : std::string(is_acyclic(c) ? " (acyclic but not split)" : " (not acyclic)")) +
           "\n";
  o.code = found && found->verify() ? kTrue : kFalse;
  return finish(o, w, "contract");
}

Outcome factorize(const std::string& ref, const Options& options, int margin, int rounds) {
  auto phi = map_ref(ref);
  WorkspaceWriter w;
  Outcome o;
  o.report["map"] = w.add("phi", phi);
  try {
    auto cert = factor_through_perfect(phi, {margin, rounds});
    bool ok = cert.verify(phi);
    o.report["certificate"] = write_certificate(w, cert, options.trace);
    o.report["verified"] = ok;
    std::ostringstream text;
    text << "N = " << phi.source().describe() << ", F = " << phi.target().describe() << "\n"
         << "L = " << cert.L.describe() << " (perfect: " << yes_no(cert.L.is_degreewise_free_presented())
         << ")\n"
         << "deepening rounds: " << cert.trace.rounds
         << ", window [" << cert.trace.resolution.window_lo << ", " << cert.trace.resolution.ceiling
         << "]\n"
         << "lambda * kappa == phi: " << yes_no(ok) << "\n";
    o.text = text.str();
    o.code = ok ? kTrue : kFalse;
  } catch (const WindowExhausted& e) {
    o.report["verified"] = false;
    o.report["error"] = e.what();
    o.text = std::string("no factorization found: ") + e.what() + "\n";
    o.code = kFalse;
  }
  return finish(o, w, "factorize");
}

Outcome purity(const std::string& ref, const std::vector<std::string>& probe_refs) {
  auto alpha = map_ref(ref);
  std::vector<Probe> probes;
  if (probe_refs.empty()) {
    probes = standard_probes(alpha.target());
  } else {
    for (const auto& p : probe_refs)
      for (auto& probe : probes_from(p, alpha.target())) probes.push_back(std::move(probe));
  }
  auto verdict = is_pure_epi(alpha, probes);
  WorkspaceWriter w;
  Outcome o;
  o.report["purity"] = write_purity(w, alpha, probes, verdict);
  o.report["surjective"] = alpha.is_degreewise_surjective();
  std::ostringstream text;
  text << "source: " << alpha.source().describe() << "\n"
       << "target: " << alpha.target().describe() << "\n"
       << "degreewise surjective: " << yes_no(alpha.is_degreewise_surjective()) << "\n"
       << "probes: " << probes.size() << "\n"
       << "verdict: " << (verdict.pure ? "pure" : "not pure") << "\n";
  if (verdict.counterexample) {
    const auto& c = *verdict.counterexample;
    text << "counterexample: probe " << c.probe_index << " from " << c.probe.source.describe()
         << " does not lift; obstruction certified: " << yes_no(c.outcome.certificate_verifies())
         << "\n";
  }
  o.text = text.str();
  o.code = verdict.pure ? kTrue : kFalse;
  return finish(o, w, "purity");
}

Outcome colimit(const std::string& ref, const std::vector<std::string>& functors) {
  auto [path, name] = split_ref(ref);
  auto d = load(path).diagram(name);
  auto c = perfacto::colimit(d);
  WorkspaceWriter w;
  Outcome o;
  Json h;
  std::ostringstream text;
  text << to_string(d.shape) << " of " << d.objects.size() << " objects\n"
       << "colimit = " << c.complex.describe() << "\n"
       << homology_lines(c.complex, &h);
  o.report["diagram"] = w.add("D", d);
  o.report["colimit"] = w.add("colim", c.complex);
  Json legs = Json::array();
  for (std::size_t k = 0; k < c.cocone.size(); ++k)
    legs.push_back(w.add("leg" + std::to_string(k), c.cocone[k]));
  o.report["cocone"] = legs;
  o.report["homology"] = h;
  Json checks = Json::array();
  bool all = true;
  for (const auto& spec : functors) {
    auto f = functor_from(spec);
    auto rep = preservation_check(f, d);
    all = all && rep.is_isomorphism;
    text << f.name() << " preserves it: " << yes_no(rep.is_isomorphism) << "\n";
    checks.push_back(Json{{"functor", spec},
                          {"name", f.name()},
                          {"comparison", w.add("comparison", rep.comparison)},
                          {"is_isomorphism", rep.is_isomorphism}});
  }
  o.report["preservation"] = checks;
  o.text = text.str();
  o.code = all ? kTrue : kFalse;
  return finish(o, w, "colimit");
}

Outcome demo() {
  Outcome o;
  std::ostringstream text;
  Json checks = Json::array();
  bool all = true;
  for (const auto& c : corpus::run_demo()) {
    all = all && c.passed;
    text << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.description << "\n"
         << "       " << c.detail << "\n";
    checks.push_back(Json{{"id", c.id},
                          {"description", c.description},
                          {"passed", c.passed},
                          {"detail", c.detail}});
  }
  text << (all ? "all pinned verdicts hold\n" : "some pinned verdicts FAILED\n");
  o.text = text.str();
  o.code = all ? kTrue : kFalse;
  o.report = Json{{"command", "demo"}, {"checks", checks}, {"passed", all}};
  return o;
}

Outcome proptest(const std::vector<std::string>& names, const Options& options,
                 std::size_t trials, unsigned threads) {
  std::vector<const properties::Suite*> suites;
  if (names.empty()) {
    for (const auto& s : properties::all_suites()) suites.push_back(&s);
  } else {
    for (const auto& n : names) {
      try {
        suites.push_back(&properties::find_suite(n));
      } catch (const std::out_of_range& e) {
        throw ParseError(e.what());
      }
    }
  }
  Outcome o;
  std::ostringstream text;
  Json reports = Json::array();
  bool all = true;
  for (const auto* s : suites) {
    auto r = properties::run_suite(*s, {options.seed, trials, threads, 5});
    all = all && r.ok();
    text << (r.ok() ? "[PASS] " : "[FAIL] ") << std::left << std::setw(24) << r.name << " "
         << r.passed << "/" << r.checked() << " passed";
    if (r.skipped) text << ", " << r.skipped << " skipped";
    text << std::fixed << std::setprecision(2) << "  (" << r.seconds << " s)";
    for (const auto& [k, v] : r.tallies) text << "  " << k << ": " << v;
    text << "\n";
    for (const auto& f : r.failures) text << "       " << f << "\n";
    reports.push_back(Json{{"suite", r.name},
                           {"trials", r.trials},
                           {"passed", r.passed},
                           {"failed", r.failed},
                           {"skipped", r.skipped},
                           {"tallies", r.tallies},
                           {"failures", r.failures}});
  }
  o.text = text.str();
  o.code = all ? kTrue : kFalse;
  o.report = Json{{"command", "proptest"}, {"seed", options.seed}, {"suites", reports},
                  {"passed", all}};
  return o;
}

Outcome list_suites() {
  Outcome o;
  std::ostringstream text;
  Json names = Json::array();
  for (const auto& s : properties::all_suites()) {
    text << std::left << std::setw(24) << s.name << " " << s.description << " (default "
         << s.default_trials << " trials)\n";
    names.push_back(s.name);
  }
  o.text = text.str();
  o.report = Json{{"command", "proptest"}, {"suites", names}};
  return o;
}

}  // namespace perfacto::cli
