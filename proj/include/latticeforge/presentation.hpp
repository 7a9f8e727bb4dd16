#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latticeforge/error.hpp"

namespace latticeforge {

enum class PresentationKind { FunctionField, Hurwitz, Cyclic, Double };

inline const char* kind_name(PresentationKind k) {
  switch (k) {
    case PresentationKind::FunctionField: return "ff";
    case PresentationKind::Hurwitz: return "hurwitz";
    case PresentationKind::Cyclic: return "cyclic";
    case PresentationKind::Double: return "double";
  }
  return "?";
}

inline PresentationKind parse_kind(const std::string& s) {
  if (s == "ff") return PresentationKind::FunctionField;
  if (s == "hurwitz") return PresentationKind::Hurwitz;
  if (s == "cyclic") return PresentationKind::Cyclic;
  if (s == "double") return PresentationKind::Double;
  throw Error(Errc::MalformedInput, "unknown presentation kind '" + s + "'");
}

// Field data needed to rebuild the F_{q^2} model of a function-field presentation.
struct FieldInfo {
  std::uint32_t p = 0;
  unsigned e = 0;
  std::vector<std::uint32_t> fq_modulus;  // empty for prime q
  std::uint32_t c = 0;
  std::uint32_t delta = 0;  // code u + q v of delta = u + vZ
  std::array<std::uint32_t, 3> delta_min_poly{};

  bool operator==(const FieldInfo&) const = default;
};

struct Direction {
  std::string label;
  std::uint32_t valency = 0;
  std::vector<std::string> generators;
  std::vector<std::uint32_t> involution;

  bool operator==(const Direction&) const = default;
};

// Relation g1 g2 g3 g4 = 1 with g1, g3 in direction v and g2, g4 in direction w.
struct Square {
  std::uint32_t v = 0, w = 0;
  std::array<std::uint32_t, 4> word{};

  auto operator<=>(const Square&) const = default;
};

struct FiniteRelation {
  std::string name;
  std::vector<std::string> word;
  std::string scalar;

  bool operator==(const FiniteRelation&) const = default;
};

struct FinitePart {
  std::uint64_t order = 0;
  std::vector<std::string> generators;
  std::vector<FiniteRelation> relations;

  bool operator==(const FinitePart&) const = default;
};

struct Presentation {
  PresentationKind kind = PresentationKind::Cyclic;
  std::optional<FieldInfo> field;
  std::vector<Direction> directions;
  std::vector<Square> squares;
  std::optional<FinitePart> finite_part;
  std::optional<std::uint64_t> orientation_index;

  bool operator==(const Presentation&) const = default;

  std::uint32_t inverse(std::uint32_t dir, std::uint32_t g) const { return directions[dir].involution[g]; }
};

// The eight words of a square's orbit: rotations by two letters, inversion,
// and the transposed reading that starts in the other direction.
inline std::array<Square, 8> square_orbit(const Presentation& P, const Square& s) {
  const auto& iv = P.directions.at(s.v).involution;
  const auto& iw = P.directions.at(s.w).involution;
  const auto [a, b, a2, b2] = s.word;
  return {{
      {s.v, s.w, {a, b, a2, b2}},
      {s.v, s.w, {iv[a2], iw[b], iv[a], iw[b2]}},
      {s.v, s.w, {iv[a], iw[b2], iv[a2], iw[b]}},
      {s.v, s.w, {a2, b2, a, b}},
      {s.w, s.v, {iw[b2], iv[a2], iw[b], iv[a]}},
      {s.w, s.v, {b, a2, b2, a}},
      {s.w, s.v, {b2, a, b, a2}},
      {s.w, s.v, {iw[b], iv[a], iw[b2], iv[a2]}},
  }};
}

inline void check_square_shape(const Presentation& P, const Square& s) {
  if (s.v == s.w) throw Error(Errc::MalformedWord, "square word does not alternate two directions");
  if (s.v >= P.directions.size() || s.w >= P.directions.size()) throw Error(Errc::MalformedWord, "square refers to a missing direction");
  const auto nv = P.directions[s.v].generators.size(), nw = P.directions[s.w].generators.size();
  if (s.word[0] >= nv || s.word[2] >= nv || s.word[1] >= nw || s.word[3] >= nw)
    throw Error(Errc::MalformedWord, "square letter out of range");
}

inline Square canonicalize_square(const Presentation& P, const Square& s) {
  check_square_shape(P, s);
  auto orbit = square_orbit(P, s);
  return *std::min_element(orbit.begin(), orbit.end());
}

// Corners (v-letter, w-letter) of a square read from a canonical word, without
// repetition; a square with a nontrivial stabilizer has fewer than four.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> square_corners(const Presentation& P, const Square& s) {
  const auto& iv = P.directions.at(s.v).involution;
  const auto& iw = P.directions.at(s.w).involution;
  const auto [g1, g2, g3, g4] = s.word;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> c{{g1, iw[g4]}, {iv[g1], g2}, {g3, iw[g2]}, {iv[g3], g4}};
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

struct CornerDefect {
  std::uint32_t v, w;
  std::uint32_t a, b;
  std::uint32_t count;
};

// Corner coverage for every unordered direction pair.
inline std::vector<CornerDefect> corner_defects(const Presentation& P) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> counts;
  const auto d = static_cast<std::uint32_t>(P.directions.size());
  for (std::uint32_t v = 0; v < d; ++v)
    for (std::uint32_t w = v + 1; w < d; ++w)
      counts[{v, w}].assign(P.directions[v].generators.size() * P.directions[w].generators.size(), 0);
  for (const auto& raw : P.squares) {
    Square s = canonicalize_square(P, raw);
    auto& cnt = counts[{s.v, s.w}];
    const auto nw = P.directions[s.w].generators.size();
    for (auto [a, b] : square_corners(P, s)) ++cnt[a * nw + b];
  }
  std::vector<CornerDefect> out;
  for (const auto& [vw, cnt] : counts) {
    const auto nw = P.directions[vw.second].generators.size();
    for (std::size_t k = 0; k < cnt.size(); ++k)
      if (cnt[k] != 1)
        out.push_back({vw.first, vw.second, static_cast<std::uint32_t>(k / nw), static_cast<std::uint32_t>(k % nw), cnt[k]});
  }
  return out;
}

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> squares_per_pair;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> corners_per_pair;

  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

inline ValidationReport validate(const Presentation& P) {
  ValidationReport r;
  for (std::size_t v = 0; v < P.directions.size(); ++v) {
    const auto& D = P.directions[v];
    const auto n = D.generators.size();
    if (D.involution.size() != n) {
      r.fail("direction " + D.label + ": involution size differs from generator count");
      continue;
    }
    if (D.valency != n) r.fail("direction " + D.label + ": valency differs from generator count");
    for (std::size_t g = 0; g < n; ++g) {
      if (D.involution[g] >= n || D.involution[D.involution[g]] != g) {
        r.fail("direction " + D.label + ": involution is not a pairing at generator " + D.generators[g]);
        break;
      }
    }
    std::set<std::string> ids(D.generators.begin(), D.generators.end());
    if (ids.size() != n) r.fail("direction " + D.label + ": repeated generator id");
  }
  if (!r.ok) return r;
  for (std::uint32_t v = 0; v < P.directions.size(); ++v)
    for (std::uint32_t w = v + 1; w < P.directions.size(); ++w) {
      r.squares_per_pair[{v, w}] = 0;
      r.corners_per_pair[{v, w}] = 0;
    }
  std::set<Square> seen;
  for (const auto& s : P.squares) {
    Square c;
    try {
      c = canonicalize_square(P, s);
    } catch (const Error& e) {
      r.fail(e.what());
      continue;
    }
    if (!(c == s)) r.fail("square not stored in canonical form");
    if (!seen.insert(c).second) r.fail("square orbit stored twice");
    ++r.squares_per_pair[{c.v, c.w}];
    r.corners_per_pair[{c.v, c.w}] += square_corners(P, c).size();
  }
  if (!r.ok) return r;
  for (const auto& d : corner_defects(P)) {
    const auto& A = P.directions[d.v];
    const auto& B = P.directions[d.w];
    r.fail("corner (" + A.generators[d.a] + ", " + B.generators[d.b] + ") in directions (" + A.label + ", " + B.label + ") covered " +
           std::to_string(d.count) + " times");
  }
  return r;
}

inline void sort_squares(Presentation& P) {
  for (auto& s : P.squares) s = canonicalize_square(P, s);
  std::sort(P.squares.begin(), P.squares.end());
  P.squares.erase(std::unique(P.squares.begin(), P.squares.end()), P.squares.end());
}

// ---- serialization ----

inline nlohmann::ordered_json to_json(const Presentation& P) {
  nlohmann::ordered_json j;
  j["format"] = "latticeforge-presentation";
  j["version"] = 1;
  j["kind"] = kind_name(P.kind);
  if (P.field) {
    const auto& f = *P.field;
    j["field"] = {{"p", f.p},
                  {"e", f.e},
                  {"fq_modulus", f.fq_modulus},
                  {"c", f.c},
                  {"delta", f.delta},
                  {"delta_min_poly", f.delta_min_poly}};
  }
  j["directions"] = nlohmann::ordered_json::array();
  for (const auto& D : P.directions) {
    j["directions"].push_back(
        {{"label", D.label}, {"valency", D.valency}, {"generators", D.generators}, {"involution", D.involution}});
  }
  j["squares"] = nlohmann::ordered_json::array();
  for (const auto& s : P.squares)
    j["squares"].push_back({s.v, s.word[0], s.w, s.word[1], s.v, s.word[2], s.w, s.word[3]});
  if (P.finite_part) {
    nlohmann::ordered_json fp;
    fp["order"] = P.finite_part->order;
    fp["generators"] = P.finite_part->generators;
    fp["relations"] = nlohmann::ordered_json::array();
    for (const auto& rel : P.finite_part->relations)
      fp["relations"].push_back({{"name", rel.name}, {"word", rel.word}, {"scalar", rel.scalar}});
    j["finite_part"] = fp;
  }
  if (P.orientation_index) j["orientation_index"] = *P.orientation_index;
  return j;
}

inline std::string serialize_json(const Presentation& P) { return to_json(P).dump(1) + "\n"; }

inline Presentation from_json(const nlohmann::json& j) {
  Presentation P;
  try {
    if (j.value("format", std::string("latticeforge-presentation")) != "latticeforge-presentation")
      throw Error(Errc::MalformedInput, "not a latticeforge presentation");
    if (j.value("version", 1) != 1) throw Error(Errc::MalformedInput, "unsupported presentation version");
    P.kind = parse_kind(j.at("kind").get<std::string>());
    if (j.contains("field")) {
      const auto& f = j.at("field");
      FieldInfo fi;
      fi.p = f.at("p").get<std::uint32_t>();
      fi.e = f.at("e").get<unsigned>();
      fi.fq_modulus = f.value("fq_modulus", std::vector<std::uint32_t>{});
      fi.c = f.at("c").get<std::uint32_t>();
      fi.delta = f.at("delta").get<std::uint32_t>();
      fi.delta_min_poly = f.at("delta_min_poly").get<std::array<std::uint32_t, 3>>();
      P.field = fi;
    }
    for (const auto& d : j.at("directions")) {
      Direction D;
      D.label = d.at("label").get<std::string>();
      D.valency = d.at("valency").get<std::uint32_t>();
      D.generators = d.at("generators").get<std::vector<std::string>>();
      D.involution = d.at("involution").get<std::vector<std::uint32_t>>();
      P.directions.push_back(std::move(D));
    }
    for (const auto& s : j.at("squares")) {
      auto a = s.get<std::vector<std::uint32_t>>();
      if (a.size() != 8 || a[0] != a[4] || a[2] != a[6]) throw Error(Errc::MalformedWord, "square entry must be [v,g1,w,g2,v,g3,w,g4]");
      P.squares.push_back({a[0], a[2], {a[1], a[3], a[5], a[7]}});
    }
    if (j.contains("finite_part")) {
      const auto& f = j.at("finite_part");
      FinitePart fp;
      fp.order = f.at("order").get<std::uint64_t>();
      fp.generators = f.at("generators").get<std::vector<std::string>>();
      for (const auto& r : f.at("relations"))
        fp.relations.push_back({r.at("name").get<std::string>(), r.at("word").get<std::vector<std::string>>(), r.at("scalar").get<std::string>()});
      P.finite_part = fp;
    }
    if (j.contains("orientation_index")) P.orientation_index = j.at("orientation_index").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
  return P;
}

inline Presentation deserialize_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
  return from_json(j);
}

// Letter name of generator g in direction v: direction letter followed by the
// exponent for function-field presentations, by the 1-based index otherwise.
inline std::string letter_name(const Presentation& P, std::uint32_t v, std::uint32_t g) {
  std::string letter;
  if (v < 26) {
    letter = std::string(1, static_cast<char>('a' + v));
  } else {
    letter = "x" + std::to_string(v) + "_";
  }
  if (P.kind == PresentationKind::FunctionField) return letter + P.directions[v].generators[g];
  return letter + std::to_string(g + 1);
}

inline std::string serialize_text(const Presentation& P) {
  std::string out;
  out += "# kind: " + std::string(kind_name(P.kind)) + "\n";
  for (std::uint32_t v = 0; v < P.directions.size(); ++v) {
    const auto& D = P.directions[v];
    out += "# direction " + std::string(1, static_cast<char>(v < 26 ? 'a' + v : '?')) + ": " + D.label + ", valency " +
           std::to_string(D.valency) + "\n";
    if (P.kind != PresentationKind::FunctionField) {
      for (std::uint32_t g = 0; g < D.generators.size(); ++g) out += "#   " + letter_name(P, v, g) + " = " + D.generators[g] + "\n";
    }
  }
  out += "<\n  ";
  bool first = true;
  for (std::uint32_t v = 0; v < P.directions.size(); ++v)
    for (std::uint32_t g = 0; g < P.directions[v].generators.size(); ++g) {
      if (!first) out += ", ";
      first = false;
      out += letter_name(P, v, g);
    }
  out += "\n|\n";
  for (std::uint32_t v = 0; v < P.directions.size(); ++v) {
    const auto& D = P.directions[v];
    for (std::uint32_t g = 0; g < D.generators.size(); ++g) {
      const auto h = D.involution[g];
      if (h < g) continue;
      out += "  " + letter_name(P, v, g) + " " + letter_name(P, v, h) + " = 1\n";
    }
  }
  for (const auto& s : P.squares) {
    out += "  " + letter_name(P, s.v, s.word[0]) + " " + letter_name(P, s.w, s.word[1]) + " " + letter_name(P, s.v, s.word[2]) + " " +
           letter_name(P, s.w, s.word[3]) + " = 1\n";
  }
  if (P.finite_part) {
    for (const auto& rel : P.finite_part->relations) {
      out += " ";
      for (const auto& l : rel.word) out += " " + l;
      out += " = " + rel.scalar + "  # " + rel.name + "\n";
    }
  }
  out += ">\n";
  return out;
}

}  // namespace latticeforge
