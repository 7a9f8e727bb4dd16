#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latticeforge/latticeforge.hpp"

namespace latticeforge {

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // validation, link or certificate failure
inline constexpr int kExitUsage = 2;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MalformedInput, "cannot write " + path);
  out << data;
  if (!out) throw Error(Errc::MalformedInput, "write failed for " + path);
}

// "-" or empty means stdout
inline void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") out << data;
  else write_file(path, data);
}

inline bool failure_code(Errc c) {
  return c == Errc::LinkFailure || c == Errc::RelationFailed || c == Errc::NoSolution || c == Errc::MultipleSolutions ||
         c == Errc::CardinalityMismatch || c == Errc::NonInvertibleImage;
}

struct RunConfig {
  // present ff
  std::uint32_t p = 0;
  unsigned e = 1;
  std::string places;
  std::string delta;
  bool lambda = false;
  // present hurwitz
  std::string primes;
  bool unprimed = false;
  std::string unit = "i";
  // cyclic
  std::string sizes;
  bool inverse_action = false;
  // files
  std::string in, out, json, dot, csv;
  bool text = false;
  // quotient / spectrum
  std::string modulus;
  double tol = 1e-9;
  bool eigenvalues = false;
};

inline std::vector<std::uint32_t> places_of(const Presentation& P) {
  std::vector<std::uint32_t> out;
  for (const auto& D : P.directions) out.push_back(static_cast<std::uint32_t>(parse_int(D.label)));
  return out;
}

inline std::string presentation_output(const Presentation& P, bool text) { return text ? serialize_text(P) : serialize_json(P); }

inline nlohmann::ordered_json validation_json(const Presentation& P, const ValidationReport& r) {
  nlohmann::ordered_json j;
  j["ok"] = r.ok;
  j["errors"] = r.errors;
  j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& [vw, n] : r.squares_per_pair) {
    nlohmann::ordered_json e;
    e["directions"] = {P.directions[vw.first].label, P.directions[vw.second].label};
    e["squares"] = n;
    e["corners"] = r.corners_per_pair.at(vw);
    e["corner_pairs"] = P.directions[vw.first].generators.size() * P.directions[vw.second].generators.size();
    j["pairs"].push_back(e);
  }
  return j;
}

inline nlohmann::ordered_json quotient_json(const CayleyComplex& C, const SplittingData& S) {
  nlohmann::ordered_json j;
  j["modulus"] = S.modulus;
  j["field_size"] = C.field_size;
  j["vertices"] = C.size();
  const auto [psl, pgl] = psl_pgl_orders(C.field_size);
  j["psl2_order"] = psl;
  j["pgl2_order"] = pgl;
  if (S.kind == PresentationKind::Hurwitz) j["i_image_ab"] = {S.ab.first, S.ab.second};
  nlohmann::ordered_json imgs;
  for (const auto& [name, m] : S.images) imgs[name] = m;
  j["images"] = imgs;
  j["directions"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < C.edges.size(); ++v) {
    nlohmann::ordered_json d;
    d["label"] = C.labels[v];
    d["valency"] = C.valencies[v];
    std::uint64_t loops = 0;
    for (const auto& e : C.edges[v])
      if (e.from == e.to) loops += e.mult;
    d["edges"] = C.edges[v].size();
    d["loops"] = loops;
    j["directions"].push_back(d);
  }
  return j;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"latticeforge: one-vertex cube complexes from quaternion lattices"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* present = app.add_subcommand("present", "emit a presentation");
  present->require_subcommand(1);
  auto* ff = present->add_subcommand("ff", "function-field lattice over F_q(t)");
  ff->add_option("--p", cfg.p, "characteristic")->required();
  ff->add_option("--e", cfg.e, "degree of F_q over F_p")->default_val(1);
  ff->add_option("--places", cfg.places, "comma-separated places tau as F_q codes")->required();
  ff->add_option("--delta", cfg.delta, "generator of F_q^2 as u+vZ");
  ff->add_flag("--lambda", cfg.lambda, "include the finite part of the extended lattice");
  auto* hw = present->add_subcommand("hurwitz", "Hurwitz lattice over Z[1/2S]");
  hw->add_option("--primes", cfg.primes, "comma-separated odd primes")->required();
  hw->add_flag("--unprimed", cfg.unprimed, "use the sets PA_p without the unit twist");
  hw->add_option("--unit", cfg.unit, "unit for primes 3 mod 4")->check(CLI::IsMember({"i", "k"}))->default_val("i");
  for (auto* sc : {ff, hw}) {
    sc->add_option("--out", cfg.out, "output file (default stdout)");
    sc->add_flag("--text", cfg.text, "human-readable presentation instead of JSON");
  }

  auto* val = app.add_subcommand("validate", "check a presentation");
  val->add_option("--in", cfg.in)->required();
  val->add_option("--json", cfg.json, "write the report as JSON");

  auto* link = app.add_subcommand("link", "check the link condition");
  link->add_option("--in", cfg.in)->required();
  link->add_option("--json", cfg.json, "write the report as JSON");

  auto* dbl = app.add_subcommand("double", "doubling of a presentation");
  dbl->add_option("--in", cfg.in)->required();
  dbl->add_option("--out", cfg.out);
  dbl->add_flag("--text", cfg.text);

  auto* cyc = app.add_subcommand("cyclic", "one-vertex complex from cyclic sets");
  cyc->add_option("--sizes", cfg.sizes, "comma-separated even sizes")->required();
  cyc->add_flag("--inverse-action", cfg.inverse_action, "use T^-delta instead of T^delta");
  cyc->add_option("--out", cfg.out);
  cyc->add_flag("--text", cfg.text);

  auto* quo = app.add_subcommand("quotient", "finite congruence quotient");
  quo->add_option("--in", cfg.in)->required();
  quo->add_option("--mod", cfg.modulus, "prime (Hurwitz) or monic irreducible polynomial in t (function field)")->required();
  quo->add_option("--out", cfg.out, "adjacency file")->required();
  quo->add_option("--dot", cfg.dot, "Graphviz export");
  quo->add_option("--json", cfg.json, "summary");

  auto* spect = app.add_subcommand("spectrum", "directional spectra of a quotient");
  spect->add_option("--in", cfg.in, "adjacency file")->required();
  spect->add_option("--tol", cfg.tol)->default_val(1e-9);
  spect->add_option("--csv", cfg.csv, "eigenvalue export");
  spect->add_option("--json", cfg.json, "report (default stdout)");
  spect->add_flag("--eigenvalues", cfg.eigenvalues, "include eigenvalues in the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*ff) {
      FieldCtx K = FieldCtx::build(cfg.p, cfg.e);
      if (!cfg.delta.empty()) K = FieldCtx::build(cfg.p, cfg.e, K.parse_code(cfg.delta));
      std::vector<std::uint32_t> S0;
      for (auto t : parse_int_list(cfg.places)) {
        if (t < 0) throw Error(Errc::BadPlace, "negative place");
        S0.push_back(static_cast<std::uint32_t>(t));
      }
      Presentation P = cfg.lambda ? present_lambda_ff(K, S0) : present_gamma_ff(K, S0);
      emit(cfg.out, presentation_output(P, cfg.text), out);
      return kExitOk;
    }
    if (*hw) {
      Presentation P = present_gamma_hurwitz(parse_int_list(cfg.primes), !cfg.unprimed, cfg.unit == "k" ? PrimeUnit::K : PrimeUnit::I);
      emit(cfg.out, presentation_output(P, cfg.text), out);
      return kExitOk;
    }
    if (*val) {
      Presentation P = deserialize_json(read_file(cfg.in));
      auto r = validate(P);
      const std::string report = validation_json(P, r).dump(1) + "\n";
      emit(cfg.json, report, out);
      for (const auto& e : r.errors) err << "invalid: " << e << "\n";
      return r.ok ? kExitOk : kExitFailed;
    }
    if (*link) {
      Presentation P = deserialize_json(read_file(cfg.in));
      auto r = check_link(P);
      nlohmann::ordered_json j;
      j["pass"] = r.pass;
      j["defects"] = nlohmann::ordered_json::array();
      for (const auto& d : r.defects)
        j["defects"].push_back({{"directions", {P.directions[d.v].label, P.directions[d.w].label}},
                                {"corner", {P.directions[d.v].generators[d.a], P.directions[d.w].generators[d.b]}},
                                {"count", d.count}});
      emit(cfg.json, j.dump(1) + "\n", out);
      if (!r.pass) err << "link condition fails at " << r.defects.size() << " corners\n";
      return r.pass ? kExitOk : kExitFailed;
    }
    if (*dbl) {
      Presentation P = deserialize_json(read_file(cfg.in));
      emit(cfg.out, presentation_output(double_presentation(P), cfg.text), out);
      return kExitOk;
    }
    if (*cyc) {
      std::vector<std::uint32_t> sizes;
      for (auto n : parse_int_list(cfg.sizes)) {
        if (n <= 0) throw Error(Errc::OddSize, "size " + std::to_string(n) + " is not a positive even number");
        sizes.push_back(static_cast<std::uint32_t>(n));
      }
      emit(cfg.out, presentation_output(cyclic_complex(sizes, cfg.inverse_action), cfg.text), out);
      return kExitOk;
    }
    if (*quo) {
      Presentation P = deserialize_json(read_file(cfg.in));
      SplittingData S;
      if (P.kind == PresentationKind::Hurwitz) {
        std::vector<std::int64_t> primes;
        for (auto t : places_of(P)) primes.push_back(t);
        S = split_hurwitz(parse_int(cfg.modulus), primes);
      } else if (P.kind == PresentationKind::FunctionField) {
        if (!P.field) throw Error(Errc::MalformedInput, "function-field presentation without field data");
        S = split_ff(field_from_info(*P.field), cfg.modulus, places_of(P));
      } else {
        throw Error(Errc::Unsupported, std::string("no congruence quotient for ") + kind_name(P.kind) + " presentations");
      }
      CayleyComplex C = build_cayley(P, S);
      write_file(cfg.out, cayley_binary(C));
      if (!cfg.dot.empty()) write_file(cfg.dot, cayley_dot(C));
      emit(cfg.json, quotient_json(C, S).dump(1) + "\n", out);
      return kExitOk;
    }
    if (*spect) {
      CayleyComplex C = cayley_from_binary(read_file(cfg.in));
      RamanujanReport R = ramanujan_report(C, cfg.tol);
      emit(cfg.json, report_json(R, cfg.eigenvalues).dump(1) + "\n", out);
      if (!cfg.csv.empty()) write_file(cfg.csv, spectrum_csv(R));
      return R.pass ? kExitOk : kExitFailed;
    }
  } catch (const Error& e) {
    err << "error[" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return failure_code(e.code()) ? kExitFailed : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace latticeforge
