#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "perfacto/colimit.hpp"
#include "perfacto/complex.hpp"
#include "perfacto/linalg.hpp"
#include "perfacto/resolution.hpp"

namespace perfacto {

using Json = nlohmann::json;

/// Wire formats.
///
///   ring     {"kind": "Z" | "Zmod" | "Fp" | "Q", "n": 6}
///   matrix   [["1", "0"], ["0", "2"]]   (rows of decimal strings; "p/q" over Q)
///            {"rows": 0, "cols": k}    (the only way to spell a 0 x k matrix)
///   module   {"ring": ..., "generators": g, "relations": matrix}
///   complex  {"ring": ..., "lo": a, "hi": b, "modules": {deg: module | name},
///             "differentials": {deg: matrix}}   (d_deg : deg -> deg - 1)
///   map      {"source": complex | name, "target": complex | name,
///             "components": {deg: matrix}}
///   homotopy {"source": ..., "target": ..., "components": {deg: matrix}}
///   diagram  {"shape": "coproduct" | "coequalizer" | "pushout" | "poset",
///             "objects": [complex | name], "arrows": [{"from": i, "to": j,
///             "map": map | name}]}
///
/// A workspace document holds named objects in the sections "modules",
/// "complexes", "maps" and "diagrams", plus an optional default "ring"
/// inherited by nested objects that omit theirs. Names are resolved in that
/// order, so complexes may refer to modules and maps to complexes. Any other
/// top-level keys (reports, verdicts) are kept untouched.

Json to_json(const Ring& ring);
Json to_json(const Scalar& value, const Ring& ring);
Json to_json(const Matrix& m);
Json to_json(const PresentedModule& m);
Json to_json(const ChainComplex& c);

Ring ring_from_json(const Json& j);
/// `rows`/`cols` disambiguate empty matrices; mismatches with a non-empty
/// matrix raise ParseError.
Matrix matrix_from_json(const Json& j, const Ring& ring, std::optional<std::size_t> rows = {},
                        std::optional<std::size_t> cols = {});

/// Parses text, reporting syntax errors with line and column.
Json parse_json_text(const std::string& text, const std::string& origin = "input");
/// Reads a file, or standard input for "-".
Json read_json_file(const std::string& path);

class Workspace {
 public:
  Workspace() = default;

  /// Loads a workspace document, or a single bare complex / map / diagram
  /// (detected by its keys) which is then stored under `bare_name`.
  static Workspace from_json(const Json& j, const std::string& bare_name = "main");

  void merge(const Workspace& other);

  std::optional<Ring> default_ring;
  std::map<std::string, PresentedModule> modules;
  std::map<std::string, ChainComplex> complexes;
  std::map<std::string, ChainMap> maps;
  std::map<std::string, FiniteDiagram> diagrams;
  Json extra = Json::object();

  /// Lookup by name; with an empty name the section must hold exactly one
  /// object. ReferenceError otherwise.
  const ChainComplex& complex(const std::string& name = "") const;
  const ChainMap& map(const std::string& name = "") const;
  const FiniteDiagram& diagram(const std::string& name = "") const;
  const PresentedModule& module(const std::string& name = "") const;

  std::string summary() const;
};

/// Serializes named objects. Complexes and maps are interned: an object
/// identical to one already written is referred to by its existing name, so
/// maps sharing endpoints share references and re-serializing a parsed
/// document reproduces it.
class WorkspaceWriter {
 public:
  std::string add(const std::string& name, const ChainComplex& c);
  std::string add(const std::string& name, const ChainMap& f);
  std::string add(const std::string& name, const FiniteDiagram& d);
  std::string add(const std::string& name, const PresentedModule& m);

  /// A homotopy written as a map-shaped object under "homotopies".
  std::string add(const std::string& name, const Homotopy& h);

  Json json() const;

 private:
  std::string fresh(const std::string& hint);

  std::vector<std::pair<std::string, ChainComplex>> complexes_;
  std::vector<std::pair<std::string, ChainMap>> written_maps_;
  Json modules_ = Json::object();
  Json complex_json_ = Json::object();
  Json maps_ = Json::object();
  Json homotopies_ = Json::object();
  Json diagrams_ = Json::object();
  std::map<std::string, int> used_;
};

/// Parses the entries of the "homotopies" section.
std::map<std::string, Homotopy> homotopies_from_json(const Json& document, const Workspace& ws);

/// Parses a document and serializes it again (objects in name order, other
/// keys copied). Documents produced by WorkspaceWriter come back unchanged.
Json reemit(const Json& document);

/// Intensional equality of chain maps: identical endpoints and actions.
bool identical(const ChainMap& a, const ChainMap& b);

/// Solvability witness: {"witness": matrix, "modulus": scalar}.
Json to_json(const Unsolvability& u);
Unsolvability unsolvability_from_json(const Json& j, const Ring& ring);

/// Writes probes, lifts and the counterexample's obstruction, returning the
/// report object; chain maps go into the writer.
Json write_purity(WorkspaceWriter& w, const ChainMap& alpha, const std::vector<Probe>& probes,
                  const PurityVerdict& verdict);
PurityVerdict purity_from_json(const Json& report, const Workspace& ws);

/// {"L": name, "kappa": name, "lambda": name, "trace": {...}}; the trace is
/// written only when requested.
Json write_certificate(WorkspaceWriter& w, const FactorizationCertificate& cert, bool trace);
/// A certificate read back from JSON; the trace is present when it was
/// written.
struct ParsedCertificate {
  ChainComplex L;
  ChainMap kappa;
  ChainMap lambda;
  std::optional<FactorizationTrace> trace;
};
ParsedCertificate certificate_from_json(const Json& report, const Workspace& ws);

}  // namespace perfacto
