#pragma once

// JSON and plain-text rendering of coset lists, and reading them back.

#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsion/bounds.hpp"
#include "torsion/coset.hpp"
#include "torsion/oracle.hpp"

namespace torsion {

using Json = nlohmann::ordered_json;

struct CosetDocument {
  std::size_t n = 0;
  Int field = 1;
  std::vector<TorsionCoset> cosets;
  std::vector<bool> certified;
};

inline std::vector<TorsionCoset> sortedCosets(std::vector<TorsionCoset> cosets) {
  std::sort(cosets.begin(), cosets.end(), [](const TorsionCoset& a, const TorsionCoset& b) {
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    return a.key() < b.key();
  });
  return cosets;
}

/// Certification flags are computed against the system: the coset is checked to lie on it exactly.
inline CosetDocument makeCosetDocument(std::size_t n, Int field, const std::vector<TorsionCoset>& cosets, const LaurentSystem& system) {
  CosetDocument doc;
  doc.n = n;
  doc.field = field;
  doc.cosets = sortedCosets(cosets);
  for (const auto& c : doc.cosets) doc.certified.push_back(liesOnVariety(c, system));
  return doc;
}

inline Json pointToJson(const TorsionPoint& q) {
  Json arr = Json::array();
  for (const auto& r : q) arr.push_back(Json::array({std::to_string(r.num()), std::to_string(r.den())}));
  return arr;
}

inline Json cosetToJson(const TorsionCoset& c, bool certified) {
  Json lattice = Json::array();
  for (const auto& row : c.lattice()) lattice.push_back(row);
  return Json{{"dim", c.dimension()}, {"point", pointToJson(c.canonicalPoint())}, {"lattice", lattice}, {"certified", certified}};
}

inline Json toJson(const CosetDocument& doc) {
  Json cs = Json::array();
  for (std::size_t i = 0; i < doc.cosets.size(); ++i) cs.push_back(cosetToJson(doc.cosets[i], doc.certified[i]));
  return Json{{"n", doc.n}, {"field", doc.field}, {"cosets", cs}};
}

inline TorsionPoint pointFromJson(const Json& j) {
  TorsionPoint q;
  for (const auto& e : j) q.emplace_back(std::stoll(e.at(0).get<std::string>()), std::stoll(e.at(1).get<std::string>()));
  return q;
}

inline CosetDocument fromJson(const Json& j) {
  CosetDocument doc;
  doc.n = j.at("n").get<std::size_t>();
  doc.field = j.at("field").get<Int>();
  for (const auto& c : j.at("cosets")) {
    TorsionPoint q = pointFromJson(c.at("point"));
    if (q.size() != doc.n) throw InvalidArgument("coset point has the wrong length");
    IntMatrix lattice = c.at("lattice").get<IntMatrix>();
    doc.cosets.emplace_back(std::move(q), lattice);
    if (doc.cosets.back().dimension() != c.at("dim").get<std::size_t>()) throw InvalidArgument("coset dimension disagrees with its lattice");
    doc.certified.push_back(c.at("certified").get<bool>());
  }
  return doc;
}

inline std::string toText(const CosetDocument& doc) {
  std::ostringstream out;
  out << "n = " << doc.n << ", field = Q(zeta_" << doc.field << "), " << doc.cosets.size() << " maximal torsion coset"
      << (doc.cosets.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < doc.cosets.size(); ++i) {
    const auto& c = doc.cosets[i];
    out << "dim " << c.dimension() << "  point " << pointToString(c.canonicalPoint()) << "  lattice [";
    for (std::size_t r = 0; r < c.lattice().size(); ++r) {
      out << (r ? "; " : "");
      for (std::size_t k = 0; k < doc.n; ++k) out << (k ? " " : "") << c.lattice()[r][k];
    }
    out << "]" << (doc.certified[i] ? "" : "  (uncertified)") << "\n";
  }
  return out.str();
}

/// Reads the coset lines of toText output.
inline std::vector<TorsionCoset> cosetsFromText(const std::string& text, std::size_t n) {
  static const std::regex line(R"(^dim (\d+)  point \(([^)]*)\)  lattice \[([^\]]*)\])");
  std::vector<TorsionCoset> out;
  std::istringstream in(text);
  for (std::string s; std::getline(in, s);) {
    std::smatch m;
    if (!std::regex_search(s, m, line)) continue;
    TorsionPoint q;
    std::string coords = m[2];
    for (auto& ch : coords)
      if (ch == ',' || ch == '/') ch = ' ';
    std::istringstream cs(coords);
    for (Int a, b; cs >> a >> b;) q.emplace_back(a, b);
    IntMatrix lattice;
    std::string rows = m[3];
    std::istringstream rs(rows);
    for (std::string row; std::getline(rs, row, ';');) {
      std::istringstream es(row);
      IntVector v;
      for (Int x; es >> x;) v.push_back(x);
      if (!v.empty()) lattice.push_back(std::move(v));
    }
    if (q.size() != n) throw InvalidArgument("coset point has the wrong length");
    out.emplace_back(std::move(q), lattice);
  }
  return out;
}

inline Json oracleToJson(const OracleReport& r) {
  Json points = Json::array(), missed = Json::array(), spurious = Json::array();
  for (const auto& q : r.points) points.push_back(pointToJson(q));
  for (const auto& q : r.missedBySolver) missed.push_back(pointToJson(q));
  for (const auto& c : r.spuriousCosets) spurious.push_back(cosetToJson(c, false));
  return Json{{"maxOrder", r.maxOrder}, {"points", points}, {"missedBySolver", missed}, {"spuriousCosets", spurious}, {"passed", r.passed()}};
}

inline Json boundsToJson(const BoundCatalog& c) {
  Json rec = Json::array();
  for (const auto& v : c.fullLatticeRecurrence) rec.push_back(v.get_str());
  return Json{{"n", c.n},
              {"d", c.d},
              {"evertseSchmidt", c.evertseSchmidt.get_str()},
              {"planeCurve", c.planeCurve.get_str()},
              {"hypersurfaceConstant", c.hypersurfaceConstant.toString()},
              {"hypersurfaceExponent", c.hypersurfaceExponent.get_str()},
              {"varietyConstant", c.varietyConstant.toString()},
              {"varietyExponent", c.varietyExponent.get_str()},
              {"rescaleDegree", c.rescaleDegree.get_str()},
              {"projectionDegree", c.projectionDegree.get_str()},
              {"fullLatticeRecurrence", rec},
              {"hypersurfaceRecurrence", c.hypersurfaceRecurrence.get_str()},
              {"varietyRecurrence", c.varietyRecurrence.get_str()}};
}

inline std::string boundsToText(const BoundCatalog& c) {
  auto digits = [](const BigInt& v) {
    std::string s = v.get_str();
    if (s.size() <= 60) return s;
    return s.substr(0, 20) + "... (" + std::to_string(s.size()) + " digits)";
  };
  std::ostringstream out;
  out << "n = " << c.n << ", d = " << c.d << "\n";
  out << "torsion points, linear-equation bound    " << digits(c.evertseSchmidt) << "\n";
  out << "plane curve bound 11d^2 + d              " << c.planeCurve << "\n";
  out << "hypersurface constant c1(n)              " << c.hypersurfaceConstant.toString() << "\n";
  out << "hypersurface exponent c2(n)              " << c.hypersurfaceExponent << "\n";
  out << "variety constant c3(n)                   " << c.varietyConstant.toString() << "\n";
  out << "variety exponent c4(n)                   " << c.varietyExponent << "\n";
  out << "rescaled degree c1(n,d)                  " << c.rescaleDegree << "\n";
  out << "projection degree c2(n,d)                " << c.projectionDegree << "\n";
  for (std::size_t i = 0; i < c.fullLatticeRecurrence.size(); ++i)
    out << "full-lattice recurrence, dim " << i << "          " << digits(c.fullLatticeRecurrence[i]) << "\n";
  out << "hypersurface recurrence T(n,d)           " << digits(c.hypersurfaceRecurrence) << "\n";
  out << "variety recurrence N_tor(n,d)            " << digits(c.varietyRecurrence) << "\n";
  return out.str();
}

}  // namespace torsion
