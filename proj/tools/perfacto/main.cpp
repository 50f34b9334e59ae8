#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "commands.hpp"
#include "perfacto/errors.hpp"

using namespace perfacto;

namespace {

void write_report(const cli::Outcome& o, const std::string& path) {
  std::string text = o.report.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perfacto: exact homological algebra over Z, Z/n, F_p and Q"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::Options options;
  std::string json_out;
  bool quiet = false;
  app.add_option("--json", json_out, "write the machine-readable report here ('-' for stdout)");
  app.add_option("--seed", options.seed, "seed for randomized suites");
  app.add_flag("--trace", options.trace, "include factorization traces in reports");
  app.add_flag("-q,--quiet", quiet, "suppress the human-readable report");

  std::function<cli::Outcome()> action;

  auto* check = app.add_subcommand("check", "load and validate documents, checking the round trip");
  std::vector<std::string> inputs;
  check->add_option("inputs", inputs, "documents ('-' for stdin)")->required();
  check->callback([&] { action = [&] { return cli::check(inputs); }; });

  std::string complex_ref, map_ref, left, right, matrix_ref, diagram_ref;

  auto* homology = app.add_subcommand("homology", "homology in invariant-factor form");
  homology->add_option("--complex", complex_ref, "complex (path or path#name)")->required();
  homology->callback([&] { action = [&] { return cli::homology(complex_ref); }; });

  auto* cone = app.add_subcommand("cone", "mapping cone of a chain map");
  cone->add_option("--map", map_ref, "chain map (path or path#name)")->required();
  cone->callback([&] { action = [&] { return cli::cone(map_ref); }; });

  auto* hom = app.add_subcommand("hom", "total Hom complex");
  hom->add_option("--left", left, "source complex")->required();
  hom->add_option("--right", right, "target complex")->required();
  hom->callback([&] { action = [&] { return cli::hom(left, right); }; });

  auto* tensor = app.add_subcommand("tensor", "total tensor complex");
  tensor->add_option("--left", left, "left complex")->required();
  tensor->add_option("--right", right, "right complex")->required();
  tensor->callback([&] { action = [&] { return cli::tensor(left, right); }; });

  auto* snf = app.add_subcommand("snf", "Smith normal form of {\"ring\", \"matrix\"}");
  snf->add_option("--matrix", matrix_ref, "matrix document")->required();
  snf->callback([&] { action = [&] { return cli::snf(matrix_ref); }; });

  auto* contract = app.add_subcommand("contract", "decide contractibility (exit 1 when not)");
  contract->add_option("--complex", complex_ref, "complex")->required();
  contract->callback([&] { action = [&] { return cli::contract(complex_ref); }; });

  int margin = 2, rounds = 3;
  auto* factorize = app.add_subcommand("factorize", "factor a map into a flat complex through a perfect one");
  factorize->add_option("--map", map_ref, "chain map N -> F")->required();
  factorize->add_option("--margin", margin, "initial resolution margin")->capture_default_str();
  factorize->add_option("--rounds", rounds, "deepening rounds")->capture_default_str();
  factorize->callback([&] { action = [&] { return cli::factorize(map_ref, options, margin, rounds); }; });

  std::vector<std::string> probes;
  auto* purity = app.add_subcommand("purity", "test a surjection for purity (exit 1 when not pure)");
  purity->add_option("--map", map_ref, "chain map under test")->required();
  purity->add_option("--probe", probes,
                     "probe map into the target, or complex P (all maps P -> target); "
                     "default: the standard disc and sphere probes");
  purity->callback([&] { action = [&] { return cli::purity(map_ref, probes); }; });

  std::vector<std::string> functors;
  auto* colimit = app.add_subcommand("colimit", "colimit of a finite diagram and preservation checks");
  colimit->add_option("--diagram", diagram_ref, "diagram")->required();
  colimit->add_option("--functor", functors, "Z, B, C, H, tensor:REF or hom:REF");
  colimit->callback([&] { action = [&] { return cli::colimit(diagram_ref, functors); }; });

  auto* demo = app.add_subcommand("demo", "run the pinned corpus");
  demo->callback([&] { action = [&] { return cli::demo(); }; });

  std::vector<std::string> suites;
  std::size_t trials = 0;
  unsigned threads = 0;
  bool list = false;
  auto* proptest = app.add_subcommand("proptest", "run randomized property suites");
  proptest->add_option("--suite", suites, "suite name (default: all)");
  proptest->add_option("--trials", trials, "trials per suite (default: the suite's own)");
  proptest->add_option("--threads", threads, "worker threads (default: all cores)");
  proptest->add_flag("--list", list, "list the suites");
  proptest->callback([&] {
    action = [&] { return list ? cli::list_suites() : cli::proptest(suites, options, trials, threads); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::kTrue : cli::kError;
  }

  try {
    auto outcome = action();
    if (!quiet) std::cout << outcome.text;
    if (!json_out.empty()) write_report(outcome, json_out);
    return outcome.code;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis not satisfied: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const ReferenceError& e) {
    std::cerr << "reference error: " << e.what() << "\n";
  } catch (const NotAComplex& e) {
    std::cerr << "not a complex (degree " << e.degree() << "): " << e.what() << "\n";
  } catch (const NotAChainMap& e) {
    std::cerr << "not a chain map (degree " << e.degree() << "): " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed document: " << e.what() << "\n";
  }
  return cli::kError;
}
