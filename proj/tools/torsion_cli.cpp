// torsion: maximal torsion cosets of subvarieties of the torus.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "torsion/io.hpp"
#include "torsion/parser.hpp"
#include "torsion/solver.hpp"

namespace {

enum ExitCode { Ok = 0, ParseFailure = 1, BudgetFailure = 2, Mismatch = 3 };

struct Options {
  std::string input;
  std::string format = "text";
  torsion::Int maxOrder = 12;
  std::size_t budget = 10000000;
  unsigned threads = 1;
  std::size_t n = 2;
  torsion::Int d = 1;
};

std::string readInput(const std::string& path) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw torsion::InvalidArgument("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

torsion::Int systemField(const torsion::SystemDocument& doc) {
  torsion::Int level = torsion::canonicalLevel(doc.level);
  for (const auto& f : doc.polynomials) level = torsion::lcmInt(level, f.level());
  return torsion::canonicalLevel(level);
}

int runSolve(const Options& o, bool verify) {
  using namespace torsion;
  SystemDocument sys = parseSystem(readInput(o.input));
  if (sys.polynomials.empty()) throw ParseError(ParseError::Kind::Syntax, 1, 1, "no 'poly:' lines in input");
  SolveOptions so;
  so.budget = o.budget;
  so.threads = o.threads;
  auto cosets = varietyCosets(sys.polynomials, so);
  CosetDocument doc = makeCosetDocument(sys.nvars(), systemField(sys), cosets, sys.polynomials);
  if (!verify) {
    if (o.format == "json")
      std::cout << toJson(doc).dump(2) << "\n";
    else
      std::cout << toText(doc);
    return Ok;
  }
  OracleReport report = crossCheck(doc.cosets, sys.polynomials, o.maxOrder, o.budget);
  if (o.format == "json") {
    Json j = toJson(doc);
    j["oracle"] = oracleToJson(report);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << toText(doc);
    std::cout << "oracle: " << report.points.size() << " torsion points of order <= " << o.maxOrder << ", "
              << report.missedBySolver.size() << " missed, " << report.spuriousCosets.size() << " spurious\n";
    for (const auto& q : report.missedBySolver) std::cout << "missed " << pointToString(q) << "\n";
    for (const auto& c : report.spuriousCosets) std::cout << "spurious " << c.toString() << "\n";
  }
  return report.passed() ? Ok : Mismatch;
}

int runBounds(const Options& o) {
  using namespace torsion;
  BoundCatalog c = boundCatalog(o.n, o.d);
  if (o.format == "json")
    std::cout << boundsToJson(c).dump(2) << "\n";
  else
    std::cout << boundsToText(c);
  return Ok;
}

int runCyclo(const Options& o) {
  using namespace torsion;
  SystemDocument sys = parseSystem(readInput(o.input));
  if (sys.polynomials.size() != 1 || sys.nvars() != 1)
    throw ParseError(ParseError::Kind::Syntax, 1, 1, "cyclo expects exactly one polynomial in one variable");
  auto roots = cyclotomicRoots(sys.polynomials[0]);
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : roots) arr.push_back(Json::array({std::to_string(r.num()), std::to_string(r.den())}));
    std::cout << Json{{"roots", arr}}.dump(2) << "\n";
  } else {
    std::cout << roots.size() << " root" << (roots.size() == 1 ? "" : "s") << " of unity\n";
    for (const auto& r : roots) std::cout << r.toString() << "\n";
  }
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal torsion cosets of subvarieties of the torus G_m^n"};
  app.require_subcommand(1);
  Options o;
  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "input file (default: stdin)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--budget", o.budget, "limit for oracle enumeration and normalization search");
    sub->add_option("--threads", o.threads, "worker threads for independent solver branches")->check(CLI::Range(1u, 256u));
  };
  auto* solve = app.add_subcommand("solve", "list the maximal torsion cosets of the variety");
  addCommon(solve);
  auto* verify = app.add_subcommand("verify", "solve and compare with exhaustive search up to --max-order");
  addCommon(verify);
  verify->add_option("--max-order", o.maxOrder, "largest order of torsion points searched")->check(CLI::PositiveNumber);
  auto* bounds = app.add_subcommand("bounds", "evaluate the explicit upper bounds");
  bounds->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  bounds->add_option("--n", o.n, "number of variables")->check(CLI::Range(2, 7));
  bounds->add_option("--d", o.d, "degree")->check(CLI::PositiveNumber);
  auto* cyclo = app.add_subcommand("cyclo", "roots of unity of a univariate polynomial");
  addCommon(cyclo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : ParseFailure;
  }

  try {
    if (solve->parsed()) return runSolve(o, false);
    if (verify->parsed()) return runSolve(o, true);
    if (bounds->parsed()) return runBounds(o);
    if (cyclo->parsed()) return runCyclo(o);
  } catch (const torsion::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const torsion::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return BudgetFailure;
  } catch (const torsion::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseFailure;
  }
  return ParseFailure;
}
