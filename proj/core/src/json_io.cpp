#include "perfacto/json_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "perfacto/errors.hpp"

namespace perfacto {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::size_t count(const Json& j, const std::string& path) {
  long n = integer(j, path);
  if (n < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(n);
}

int degree_key(const std::string& key, const std::string& path) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    fail(path, "degree key '" + key + "' is not an integer");
  }
  if (used != key.size()) fail(path, "degree key '" + key + "' is not an integer");
  return v;
}

Scalar scalar_from_json(const Json& j, const Ring& ring, const std::string& path) {
  try {
    if (j.is_string()) return ring.parse(j.get<std::string>());
    if (j.is_number_integer()) return ring.from_int(j.get<long>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
  fail(path, "expected a decimal string");
}

// Matrix parsing with the JSON path of the field prefixed to errors.
Matrix matrix_at(const Json& j, const Ring& ring, std::optional<std::size_t> rows,
                 std::optional<std::size_t> cols, const std::string& path) {
  try {
    return matrix_from_json(j, ring, rows, cols);
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

// Resolution context for nested objects: named modules and complexes seen so
// far plus the ring inherited from the enclosing object.
struct Resolver {
  const Workspace& ws;

  Ring ring_for(const Json& j, const std::optional<Ring>& inherited, const std::string& path) const {
    if (j.is_object() && j.contains("ring")) return ring_from_json(j["ring"]);
    if (inherited) return *inherited;
    if (ws.default_ring) return *ws.default_ring;
    fail(path, "no ring given and none inherited");
  }

  PresentedModule module(const Json& j, const std::optional<Ring>& inherited,
                         const std::string& path) const {
    if (j.is_string()) {
      auto it = ws.modules.find(j.get<std::string>());
      if (it == ws.modules.end())
        throw ReferenceError(path + ": unknown module '" + j.get<std::string>() + "'");
      if (inherited && it->second.ring() != *inherited)
        throw ReferenceError(path + ": module '" + it->first + "' is over a different ring");
      return it->second;
    }
    Ring ring = ring_for(j, inherited, path);
    std::size_t g = count(field(j, "generators", path), path + ".generators");
    Matrix rel(ring, g, 0);
    if (j.contains("relations"))
      rel = matrix_at(j["relations"], ring, g, std::nullopt, path + ".relations");
    if (rel.rows() != g) fail(path, "relations need one row per generator");
    return PresentedModule(ring, g, rel);
  }

  ChainComplex complex(const Json& j, const std::string& path) const {
    if (j.is_string()) {
      auto it = ws.complexes.find(j.get<std::string>());
      if (it == ws.complexes.end())
        throw ReferenceError(path + ": unknown complex '" + j.get<std::string>() + "'");
      return it->second;
    }
    Ring ring = ring_for(j, std::nullopt, path);
    int lo = static_cast<int>(integer(field(j, "lo", path), path + ".lo"));
    int hi = static_cast<int>(integer(field(j, "hi", path), path + ".hi"));
    std::map<int, PresentedModule> mods;
    if (j.contains("modules")) {
      const Json& m = j["modules"];
      if (!m.is_object()) fail(path + ".modules", "expected an object keyed by degree");
      for (const auto& [key, value] : m.items()) {
        std::string p = path + ".modules." + key;
        mods.emplace(degree_key(key, p), module(value, ring, p));
      }
    }
    auto gens = [&](int v) -> std::size_t {
      auto it = mods.find(v);
      return it == mods.end() ? 0 : it->second.generators();
    };
    std::map<int, Matrix> diffs;
    if (j.contains("differentials")) {
      const Json& d = j["differentials"];
      if (!d.is_object()) fail(path + ".differentials", "expected an object keyed by degree");
      for (const auto& [key, value] : d.items()) {
        std::string p = path + ".differentials." + key;
        int v = degree_key(key, p);
        diffs.emplace(v, matrix_at(value, ring, gens(v - 1), gens(v), p));
      }
    }
    try {
      return make_complex(ring, lo, hi, mods, diffs);
    } catch (const NotAComplex& e) {
      throw NotAComplex(e.degree(), path + ": " + e.what());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  std::map<int, Matrix> components(const Json& j, const ChainComplex& source,
                                   const ChainComplex& target, const std::string& path) const {
    std::map<int, Matrix> acts;
    if (!j.contains("components")) return acts;
    const Json& c = j["components"];
    if (!c.is_object()) fail(path + ".components", "expected an object keyed by degree");
    for (const auto& [key, value] : c.items()) {
      std::string p = path + ".components." + key;
      int v = degree_key(key, p);
      acts.emplace(v, matrix_at(value, source.ring(), target.component(v).generators(),
                                source.component(v).generators(), p));
    }
    return acts;
  }

  ChainMap map(const Json& j, const std::string& path) const {
    if (j.is_string()) {
      auto it = ws.maps.find(j.get<std::string>());
      if (it == ws.maps.end())
        throw ReferenceError(path + ": unknown map '" + j.get<std::string>() + "'");
      return it->second;
    }
    ChainComplex source = complex(field(j, "source", path), path + ".source");
    ChainComplex target = complex(field(j, "target", path), path + ".target");
    if (source.ring() != target.ring()) fail(path, "source and target over different rings");
    auto acts = components(j, source, target, path);
    try {
      return ChainMap::from_actions(source, target, acts);
    } catch (const NotAChainMap& e) {
      throw NotAChainMap(e.degree(), path + ": " + e.what());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  Homotopy homotopy(const Json& j, const std::string& path) const {
    ChainComplex source = complex(field(j, "source", path), path + ".source");
    ChainComplex target = complex(field(j, "target", path), path + ".target");
    Homotopy h{source, target, {}};
    if (!j.contains("components")) return h;
    for (const auto& [key, value] : j["components"].items()) {
      std::string p = path + ".components." + key;
      int v = degree_key(key, p);
      Matrix a = matrix_at(value, source.ring(), target.component(v + 1).generators(),
                           source.component(v).generators(), p);
      try {
        h.components.emplace(v, make_morphism(source.component(v), target.component(v + 1), a));
      } catch (const Error& e) {
        fail(p, e.what());
      }
    }
    return h;
  }

  FiniteDiagram diagram(const Json& j, const std::string& path) const {
    std::string shape = field(j, "shape", path).get<std::string>();
    FiniteDiagram d{DiagramShape::Coproduct, {}, {}};
    if (shape == "coproduct") d.shape = DiagramShape::Coproduct;
    else if (shape == "coequalizer") d.shape = DiagramShape::Coequalizer;
    else if (shape == "pushout") d.shape = DiagramShape::Pushout;
    else if (shape == "poset") d.shape = DiagramShape::Poset;
    else fail(path + ".shape", "unknown shape '" + shape + "'");
    const Json& objs = field(j, "objects", path);
    if (!objs.is_array()) fail(path + ".objects", "expected an array");
    for (std::size_t k = 0; k < objs.size(); ++k)
      d.objects.push_back(complex(objs[k], path + ".objects[" + std::to_string(k) + "]"));
    if (j.contains("arrows")) {
      const Json& arrows = j["arrows"];
      if (!arrows.is_array()) fail(path + ".arrows", "expected an array");
      for (std::size_t k = 0; k < arrows.size(); ++k) {
        std::string p = path + ".arrows[" + std::to_string(k) + "]";
        std::size_t from = count(field(arrows[k], "from", p), p + ".from");
        std::size_t to = count(field(arrows[k], "to", p), p + ".to");
        d.arrows.push_back({from, to, map(field(arrows[k], "map", p), p + ".map")});
      }
    }
    try {
      d.validate();
    } catch (const Error& e) {
      fail(path, e.what());
    }
    return d;
  }
};

Json degree_object() { return Json::object(); }

Json components_json(const std::map<int, ModuleMorphism>& comps) {
  Json out = degree_object();
  for (const auto& [v, f] : comps)
    if (!f.action().is_zero()) out[std::to_string(v)] = to_json(f.action());
  return out;
}

Json complex_body(const ChainComplex& c) {
  Json j;
  j["ring"] = to_json(c.ring());
  j["lo"] = c.lo();
  j["hi"] = c.hi();
  Json mods = degree_object();
  Json diffs = degree_object();
  for (int v = c.lo(); v <= c.hi(); ++v) {
    const auto& m = c.component(v);
    if (m.generators() > 0 || m.relations().cols() > 0) {
      Json mj;
      mj["generators"] = m.generators();
      mj["relations"] = to_json(m.relations());
      mods[std::to_string(v)] = mj;
    }
    Matrix d = c.differential(v).action();
    if (c.in_support(v - 1) && !d.is_zero()) diffs[std::to_string(v)] = to_json(d);
  }
  j["modules"] = mods;
  j["differentials"] = diffs;
  return j;
}

template <typename T>
const T& lookup_unique(const std::map<std::string, T>& section, const std::string& name,
                       const char* kind) {
  if (name.empty()) {
    if (section.size() != 1)
      throw ReferenceError(std::string("expected exactly one ") + kind + ", found " +
                           std::to_string(section.size()) + "; name one explicitly");
    return section.begin()->second;
  }
  auto it = section.find(name);
  if (it == section.end()) throw ReferenceError(std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalars, rings, matrices

Json to_json(const Ring& ring) {
  Json j;
  switch (ring.kind()) {
    case RingKind::Integers: j["kind"] = "Z"; break;
    case RingKind::IntegersMod: j["kind"] = "Zmod"; break;
    case RingKind::PrimeField: j["kind"] = "Fp"; break;
    case RingKind::Rationals: j["kind"] = "Q"; break;
  }
  if (ring.kind() == RingKind::IntegersMod || ring.kind() == RingKind::PrimeField) {
    if (ring.modulus().fits_slong_p()) j["n"] = ring.modulus().get_si();
    else j["n"] = ring.modulus().get_str();
  }
  return j;
}

Json to_json(const Scalar& value, const Ring& ring) { return ring.to_string(value); }

Json to_json(const Matrix& m) {
  if (m.rows() == 0 && m.cols() > 0) return Json{{"rows", 0}, {"cols", m.cols()}};
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.ring().to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const PresentedModule& m) {
  Json j;
  j["ring"] = to_json(m.ring());
  j["generators"] = m.generators();
  j["relations"] = to_json(m.relations());
  return j;
}

Json to_json(const ChainComplex& c) { return complex_body(c); }

Ring ring_from_json(const Json& j) {
  const std::string path = "ring";
  std::string kind = field(j, "kind", path).get<std::string>();
  if (kind == "Z") return Ring::integers();
  if (kind == "Q") return Ring::rationals();
  const Json& n = field(j, "n", path);
  mpz_class modulus;
  if (n.is_number_integer()) modulus = n.get<long>();
  else if (n.is_string() && modulus.set_str(n.get<std::string>(), 10) == 0) {
  } else {
    fail(path + ".n", "expected an integer");
  }
  try {
    if (kind == "Zmod") return Ring::integers_mod(modulus);
    if (kind == "Fp") return Ring::prime_field(modulus);
  } catch (const InvalidRing& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown ring kind '" + kind + "'");
}

Matrix matrix_from_json(const Json& j, const Ring& ring, std::optional<std::size_t> rows,
                        std::optional<std::size_t> cols) {
  const std::string path = "matrix";
  if (j.is_object()) {
    std::size_t r = count(field(j, "rows", path), path + ".rows");
    std::size_t c = count(field(j, "cols", path), path + ".cols");
    if (r != 0) fail(path, "the object form is reserved for matrices without rows");
    if (cols && *cols != c) fail(path, "expected " + std::to_string(*cols) + " columns");
    return Matrix(ring, 0, c);
  }
  if (!j.is_array()) fail(path, "expected an array of rows");
  if (j.empty()) {
    if (rows && *rows != 0) fail(path, "expected " + std::to_string(*rows) + " rows, got 0");
    return Matrix(ring, 0, cols.value_or(0));
  }
  std::size_t r = j.size();
  if (!j[0].is_array()) fail(path, "expected an array of rows");
  std::size_t c = j[0].size();
  if (rows && *rows != r)
    fail(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(r));
  if (cols && *cols != c)
    fail(path, "expected " + std::to_string(*cols) + " columns, got " + std::to_string(c));
  std::vector<Scalar> entries;
  entries.reserve(r * c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) fail(path, "ragged row " + std::to_string(i));
    for (std::size_t k = 0; k < c; ++k)
      entries.push_back(scalar_from_json(
          j[i][k], ring, path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
  }
  return Matrix(ring, r, c, std::move(entries));
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    auto colon = what.rfind(": ");
    std::string reason = colon == std::string::npos ? what : what.substr(colon + 2);
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                     reason);
  }
}

Json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return parse_json_text(text, "<stdin>");
  }
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return parse_json_text(text, path);
}

// ---------------------------------------------------------------------------
// Workspace

Workspace Workspace::from_json(const Json& j, const std::string& bare_name) {
  Workspace ws;
  if (!j.is_object()) fail("document", "expected an object");
  Resolver r{ws};
  if (j.contains("lo") && j.contains("hi")) {
    ws.complexes.emplace(bare_name, r.complex(j, bare_name));
    return ws;
  }
  if (j.contains("components") && j.contains("source")) {
    ws.maps.emplace(bare_name, r.map(j, bare_name));
    return ws;
  }
  if (j.contains("shape")) {
    ws.diagrams.emplace(bare_name, r.diagram(j, bare_name));
    return ws;
  }
  if (j.contains("ring")) ws.default_ring = ring_from_json(j["ring"]);
  auto section = [&](const char* key) -> const Json* {
    if (!j.contains(key)) return nullptr;
    if (!j[key].is_object()) fail(key, "expected an object keyed by name");
    return &j[key];
  };
  if (auto* s = section("modules"))
    for (const auto& [name, value] : s->items())
      ws.modules.emplace(name, r.module(value, std::nullopt, std::string("modules.") + name));
  if (auto* s = section("complexes"))
    for (const auto& [name, value] : s->items())
      ws.complexes.emplace(name, r.complex(value, "complexes." + name));
  if (auto* s = section("maps"))
    for (const auto& [name, value] : s->items())
      ws.maps.emplace(name, r.map(value, "maps." + name));
  if (auto* s = section("diagrams"))
    for (const auto& [name, value] : s->items())
      ws.diagrams.emplace(name, r.diagram(value, "diagrams." + name));
  for (const auto& [key, value] : j.items())
    if (key != "ring" && key != "modules" && key != "complexes" && key != "maps" &&
        key != "diagrams")
      ws.extra[key] = value;
  return ws;
}

void Workspace::merge(const Workspace& other) {
  if (!default_ring) default_ring = other.default_ring;
  auto join = [](auto& into, const auto& from, const char* kind) {
    for (const auto& [name, value] : from)
      if (!into.emplace(name, value).second)
        throw ReferenceError(std::string("duplicate ") + kind + " '" + name + "'");
  };
  join(modules, other.modules, "module");
  join(complexes, other.complexes, "complex");
  join(maps, other.maps, "map");
  join(diagrams, other.diagrams, "diagram");
  for (const auto& [key, value] : other.extra.items()) extra[key] = value;
}

const ChainComplex& Workspace::complex(const std::string& name) const {
  return lookup_unique(complexes, name, "complex");
}
const ChainMap& Workspace::map(const std::string& name) const {
  return lookup_unique(maps, name, "map");
}
const FiniteDiagram& Workspace::diagram(const std::string& name) const {
  return lookup_unique(diagrams, name, "diagram");
}
const PresentedModule& Workspace::module(const std::string& name) const {
  return lookup_unique(modules, name, "module");
}

std::string Workspace::summary() const {
  std::ostringstream out;
  for (const auto& [name, m] : modules) out << "module  " << name << " = " << m.describe() << "\n";
  for (const auto& [name, c] : complexes)
    out << "complex " << name << " = " << c.describe() << " over " << c.ring().name() << "\n";
  for (const auto& [name, f] : maps)
    out << "map     " << name << " : " << f.source().describe() << " -> " << f.target().describe()
        << "\n";
  for (const auto& [name, d] : diagrams)
    out << "diagram " << name << " : " << to_string(d.shape) << " with " << d.objects.size()
        << " objects, " << d.arrows.size() << " arrows\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// WorkspaceWriter

std::string WorkspaceWriter::fresh(const std::string& hint) {
  std::string base = hint.empty() ? "object" : hint;
  std::string name = base;
  for (int k = 1; used_.count(name); ++k) name = base + "_" + std::to_string(k);
  used_[name] = 1;
  return name;
}

std::string WorkspaceWriter::add(const std::string& name, const ChainComplex& c) {
  for (const auto& [existing, d] : complexes_)
    if (identical(c, d)) return existing;
  std::string n = fresh(name);
  complexes_.emplace_back(n, c);
  complex_json_[n] = complex_body(c);
  return n;
}

std::string WorkspaceWriter::add(const std::string& name, const ChainMap& f) {
  for (const auto& [existing, g] : written_maps_)
    if (identical(f, g)) return existing;
  std::string src = add(name + "_source", f.source());
  std::string tgt = add(name + "_target", f.target());
  std::map<int, ModuleMorphism> comps;
  for (int v = f.source().lo(); v <= f.source().hi(); ++v) comps.emplace(v, f.component(v));
  std::string n = fresh(name);
  maps_[n] = Json{{"source", src}, {"target", tgt}, {"components", components_json(comps)}};
  written_maps_.emplace_back(n, f);
  return n;
}

std::string WorkspaceWriter::add(const std::string& name, const Homotopy& h) {
  std::string src = add(name + "_source", h.source);
  std::string tgt = add(name + "_target", h.target);
  std::string n = fresh(name);
  homotopies_[n] = Json{{"source", src}, {"target", tgt}, {"components", components_json(h.components)}};
  return n;
}

std::string WorkspaceWriter::add(const std::string& name, const FiniteDiagram& d) {
  Json objs = Json::array();
  for (std::size_t k = 0; k < d.objects.size(); ++k)
    objs.push_back(add(name + "_object" + std::to_string(k), d.objects[k]));
  Json arrows = Json::array();
  for (std::size_t k = 0; k < d.arrows.size(); ++k) {
    const auto& a = d.arrows[k];
    arrows.push_back(Json{{"from", a.from},
                          {"to", a.to},
                          {"map", add(name + "_arrow" + std::to_string(k), a.map)}});
  }
  std::string n = fresh(name);
  diagrams_[n] = Json{{"shape", to_string(d.shape)}, {"objects", objs}, {"arrows", arrows}};
  return n;
}

std::string WorkspaceWriter::add(const std::string& name, const PresentedModule& m) {
  std::string n = fresh(name);
  modules_[n] = to_json(m);
  return n;
}

Json WorkspaceWriter::json() const {
  Json j = Json::object();
  if (!modules_.empty()) j["modules"] = modules_;
  j["complexes"] = complex_json_;
  if (!maps_.empty()) j["maps"] = maps_;
  if (!homotopies_.empty()) j["homotopies"] = homotopies_;
  if (!diagrams_.empty()) j["diagrams"] = diagrams_;
  return j;
}

std::map<std::string, Homotopy> homotopies_from_json(const Json& document, const Workspace& ws) {
  std::map<std::string, Homotopy> out;
  if (!document.contains("homotopies")) return out;
  Resolver r{ws};
  for (const auto& [name, value] : document["homotopies"].items())
    out.emplace(name, r.homotopy(value, "homotopies." + name));
  return out;
}

Json reemit(const Json& document) {
  auto ws = Workspace::from_json(document);
  auto homotopies = homotopies_from_json(document, ws);
  WorkspaceWriter w;
  for (const auto& [name, m] : ws.modules) w.add(name, m);
  for (const auto& [name, c] : ws.complexes) w.add(name, c);
  for (const auto& [name, f] : ws.maps) w.add(name, f);
  for (const auto& [name, h] : homotopies) w.add(name, h);
  for (const auto& [name, d] : ws.diagrams) w.add(name, d);
  Json out = w.json();
  if (ws.default_ring) out["ring"] = to_json(*ws.default_ring);
  for (const auto& [key, value] : ws.extra.items())
    if (key != "homotopies") out[key] = value;
  return out;
}

bool identical(const ChainMap& a, const ChainMap& b) {
  if (!identical(a.source(), b.source()) || !identical(a.target(), b.target())) return false;
  for (int v = a.source().lo(); v <= a.source().hi(); ++v)
    if (a.component(v).action() != b.component(v).action()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const Unsolvability& u) {
  return Json{{"witness", to_json(u.witness)}, {"modulus", u.witness.ring().to_string(u.modulus)}};
}

Unsolvability unsolvability_from_json(const Json& j, const Ring& ring) {
  return {matrix_from_json(field(j, "witness", "obstruction"), ring),
          scalar_from_json(field(j, "modulus", "obstruction"), ring, "obstruction.modulus")};
}

Json write_purity(WorkspaceWriter& w, const ChainMap& alpha, const std::vector<Probe>& probes,
                  const PurityVerdict& verdict) {
  Json report;
  report["map"] = w.add("alpha", alpha);
  report["pure"] = verdict.pure;
  Json pj = Json::array();
  for (std::size_t k = 0; k < probes.size(); ++k)
    pj.push_back(Json{{"source", w.add("probe" + std::to_string(k) + "_source", probes[k].source)},
                      {"map", w.add("probe" + std::to_string(k), probes[k].map)}});
  report["probes"] = pj;
  Json lifts = Json::array();
  for (std::size_t k = 0; k < verdict.lifts.size(); ++k)
    lifts.push_back(w.add("lift" + std::to_string(k), verdict.lifts[k]));
  report["lifts"] = lifts;
  if (verdict.counterexample) {
    const auto& c = *verdict.counterexample;
    Json cj;
    cj["probe"] = c.probe_index;
    cj["system"] = to_json(c.outcome.system);
    cj["rhs"] = to_json(c.outcome.rhs);
    cj["obstruction"] = c.outcome.obstruction ? to_json(*c.outcome.obstruction) : Json(nullptr);
    cj["certificate_verifies"] = c.outcome.certificate_verifies();
    report["counterexample"] = cj;
  } else {
    report["counterexample"] = nullptr;
  }
  return report;
}

PurityVerdict purity_from_json(const Json& report, const Workspace& ws) {
  const std::string path = "purity";
  PurityVerdict v;
  v.pure = field(report, "pure", path).get<bool>();
  std::vector<Probe> probes;
  for (const auto& p : field(report, "probes", path))
    probes.push_back({ws.complex(p.at("source").get<std::string>()),
                      ws.map(p.at("map").get<std::string>())});
  for (const auto& name : field(report, "lifts", path))
    v.lifts.push_back(ws.map(name.get<std::string>()));
  const Json& c = field(report, "counterexample", path);
  if (!c.is_null()) {
    std::size_t k = count(field(c, "probe", path), path + ".counterexample.probe");
    if (k >= probes.size()) throw ReferenceError(path + ": counterexample probe out of range");
    const Ring& ring = probes[k].source.ring();
    LiftOutcome out{std::nullopt, std::nullopt, matrix_from_json(field(c, "system", path), ring),
                    matrix_from_json(field(c, "rhs", path), ring)};
    if (!c["obstruction"].is_null()) out.obstruction = unsolvability_from_json(c["obstruction"], ring);
    v.counterexample = PurityVerdict::Counterexample{k, probes[k], out};
  }
  return v;
}

Json write_certificate(WorkspaceWriter& w, const FactorizationCertificate& cert, bool trace) {
  Json j;
  j["L"] = w.add("L", cert.L);
  j["kappa"] = w.add("kappa", cert.kappa);
  j["lambda"] = w.add("lambda", cert.lambda);
  j["rounds"] = cert.trace.rounds;
  if (!trace) return j;
  const auto& t = cert.trace;
  Json tj;
  tj["L1"] = w.add("L1", t.presentation.L1);
  tj["L0"] = w.add("L0", t.presentation.L0);
  tj["psi1"] = w.add("psi1", t.presentation.psi1);
  tj["psi0"] = w.add("psi0", t.presentation.psi0);
  tj["kernel_inclusion"] = w.add("kernel_inclusion", t.kernel_inclusion);
  tj["P"] = w.add("P", t.resolution.P);
  tj["pi"] = w.add("pi", t.resolution.pi);
  tj["window_lo"] = t.resolution.window_lo;
  tj["ceiling"] = t.resolution.ceiling;
  tj["x"] = to_json(t.x);
  tj["P_prime"] = w.add("P_prime", t.P_prime);
  tj["P_prime_inclusion"] = w.add("P_prime_inclusion", t.P_prime_inclusion);
  tj["kappa_prime"] = w.add("kappa_prime", t.kappa_prime);
  j["trace"] = tj;
  return j;
}

ParsedCertificate certificate_from_json(const Json& report, const Workspace& ws) {
  const std::string path = "certificate";
  auto name = [&](const Json& j, const char* key) {
    return field(j, key, path).get<std::string>();
  };
  ParsedCertificate out{ws.complex(name(report, "L")), ws.map(name(report, "kappa")),
                        ws.map(name(report, "lambda")), std::nullopt};
  if (report.contains("trace")) {
    const Json& t = report["trace"];
    ComplexPresentation pres{ws.complex(name(t, "L1")), ws.complex(name(t, "L0")),
                             ws.map(name(t, "psi1")), ws.map(name(t, "psi0"))};
    SemifreeResolution res{ws.complex(name(t, "P")), ws.map(name(t, "pi")),
                           static_cast<int>(integer(field(t, "window_lo", path), path)),
                           static_cast<int>(integer(field(t, "ceiling", path), path))};
    out.trace = FactorizationTrace{pres,
                                   ws.map(name(t, "kernel_inclusion")),
                                   res,
                                   static_cast<int>(integer(field(report, "rounds", path), path)),
                                   matrix_from_json(field(t, "x", path), out.L.ring()),
                                   ws.complex(name(t, "P_prime")),
                                   ws.map(name(t, "P_prime_inclusion")),
                                   ws.map(name(t, "kappa_prime"))};
  }
  return out;
}

}  // namespace perfacto
