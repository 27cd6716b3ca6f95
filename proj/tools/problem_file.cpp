#include "problem_file.hpp"

#include "ssde/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace ssde::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Scalar read_scalar(const json& v, const std::string& where) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number()) {
    // Shortest round-trip form, so 0.1 is read as 1/10 rather than its
    // binary64 expansion.
    text = v.dump();
  } else {
    throw Error(Errc::Parse, where + ": expected a number or rational string");
  }
  const auto r = Rational::try_parse(text);
  if (!r) throw Error(Errc::Parse, where + ": '" + text + "' is not a rational or decimal literal");
  return {text, Number(*r)};
}

std::size_t read_count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw Error(Errc::Parse, where + ": expected a positive integer");
  }
  return v.get<std::size_t>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw Error(Errc::Parse, where + ": unknown key '" + item.key() + "'");
  }
}

const std::set<std::string> kInitialTypes{"constant", "linear", "one-minus-x", "classic-transition",
                                           "polynomial"};

ordered_json scalar_json(const Scalar& s) { return s.text; }

}  // namespace

ProblemFile parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::Parse, "problem file must be a JSON object");
  reject_unknown(doc, {"interval", "order", "y0", "yprime0", "maps", "A", "initial", "grid", "tol", "max_iter"},
                 "problem");

  ProblemFile pf;
  if (!doc.contains("interval") || !doc["interval"].is_array() || doc["interval"].size() != 2) {
    throw Error(Errc::Parse, "interval: expected [lo, hi]");
  }
  pf.lo = read_scalar(doc["interval"][0], "interval[0]");
  pf.hi = read_scalar(doc["interval"][1], "interval[1]");

  if (doc.contains("order")) {
    const auto& o = doc["order"];
    if (!o.is_number_integer() || (o.get<int>() != 1 && o.get<int>() != 2)) {
      throw Error(Errc::Parse, "order: must be 1 or 2");
    }
    pf.order = o.get<int>();
  }
  if (!doc.contains("y0")) throw Error(Errc::Parse, "y0: missing");
  pf.y0 = read_scalar(doc["y0"], "y0");
  if (doc.contains("yprime0")) {
    if (pf.order != 2) throw Error(Errc::Parse, "yprime0: only valid for order 2");
    pf.yprime0 = read_scalar(doc["yprime0"], "yprime0");
  }

  if (!doc.contains("maps") || !doc["maps"].is_array() || doc["maps"].empty()) {
    throw Error(Errc::Parse, "maps: expected a non-empty list");
  }
  for (std::size_t i = 0; i < doc["maps"].size(); ++i) {
    const auto& m = doc["maps"][i];
    const std::string where = "maps[" + std::to_string(i) + "]";
    if (!m.is_object()) throw Error(Errc::Parse, where + ": expected an object");
    reject_unknown(m, {"a", "c", "d", "e", "f"}, where);
    for (const char* key : {"a", "d", "e", "f"}) {
      if (!m.contains(key)) throw Error(Errc::Parse, where + ": missing '" + key + "'");
    }
    if (m.contains("c")) {
      const Scalar c = read_scalar(m["c"], where + ".c");
      if (c.value.exact->sign() != 0) {
        throw Error(Errc::ShearNotSupported, where + ": shear entry c must be 0, got " + c.text);
      }
    }
    pf.maps.push_back({read_scalar(m["a"], where + ".a"), read_scalar(m["d"], where + ".d"),
                       read_scalar(m["e"], where + ".e"), read_scalar(m["f"], where + ".f")});
  }

  if (doc.contains("A")) pf.A = read_scalar(doc["A"], "A");

  if (doc.contains("initial")) {
    const auto& init = doc["initial"];
    if (!init.is_object() || !init.contains("type") || !init["type"].is_string()) {
      throw Error(Errc::Parse, "initial: expected {\"type\": ...}");
    }
    reject_unknown(init, {"type", "coeffs"}, "initial");
    pf.initial_type = init["type"].get<std::string>();
    if (!kInitialTypes.count(pf.initial_type)) {
      throw Error(Errc::Parse, "initial.type: unknown '" + pf.initial_type + "'");
    }
    if (init.contains("coeffs")) {
      if (!init["coeffs"].is_array()) throw Error(Errc::Parse, "initial.coeffs: expected a list");
      for (std::size_t i = 0; i < init["coeffs"].size(); ++i) {
        pf.initial_coeffs.push_back(read_scalar(init["coeffs"][i], "initial.coeffs[" + std::to_string(i) + "]"));
      }
    }
    if (pf.initial_type == "polynomial" && pf.initial_coeffs.empty()) {
      throw Error(Errc::Parse, "initial.coeffs: required for a polynomial");
    }
  }

  if (doc.contains("grid")) {
    pf.grid = read_count(doc["grid"], "grid");
    if (pf.grid < 8) throw Error(Errc::Parse, "grid: need at least 8 intervals per segment");
  }
  if (doc.contains("tol")) {
    pf.tol = read_scalar(doc["tol"], "tol").value.value;
    if (!(pf.tol > 0.0)) throw Error(Errc::Parse, "tol: must be positive");
  }
  if (doc.contains("max_iter")) pf.max_iter = read_count(doc["max_iter"], "max_iter");
  return pf;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string echo_problem(const ProblemFile& pf) {
  ordered_json doc;
  doc["interval"] = ordered_json::array({scalar_json(pf.lo), scalar_json(pf.hi)});
  doc["order"] = pf.order;
  doc["y0"] = scalar_json(pf.y0);
  if (pf.yprime0) doc["yprime0"] = scalar_json(*pf.yprime0);
  ordered_json maps = ordered_json::array();
  for (const auto& m : pf.maps) {
    maps.push_back({{"a", scalar_json(m.a)}, {"d", scalar_json(m.d)}, {"e", scalar_json(m.e)},
                    {"f", scalar_json(m.f)}});
  }
  doc["maps"] = std::move(maps);
  if (pf.A) doc["A"] = scalar_json(*pf.A);
  ordered_json init{{"type", pf.initial_type}};
  if (!pf.initial_coeffs.empty()) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : pf.initial_coeffs) coeffs.push_back(scalar_json(c));
    init["coeffs"] = std::move(coeffs);
  }
  doc["initial"] = std::move(init);
  doc["grid"] = pf.grid;
  doc["tol"] = pf.tol;
  doc["max_iter"] = pf.max_iter;
  return doc.dump(2) + "\n";
}

Piecemealing build_piecemealing(const ProblemFile& pf) {
  std::vector<AffineGraphMap> maps;
  maps.reserve(pf.maps.size());
  for (const auto& m : pf.maps) maps.push_back({m.a.value, m.d.value, m.e.value, m.f.value});
  return validate(pf.lo.value, pf.hi.value, std::move(maps));
}

SsdeProblem build_problem(const ProblemFile& pf) {
  SsdeProblem problem{.piecemealing = build_piecemealing(pf),
                      .order = pf.order,
                      .y0 = pf.y0.value,
                      .yprime0 = pf.yprime0 ? pf.yprime0->value : Number(Rational(0)),
                      .target_A = std::nullopt};
  if (pf.A) problem.target_A = pf.A->value;
  return problem;
}

InitialSpec build_initial(const ProblemFile& pf) {
  InitialSpec spec;
  if (pf.initial_type == "constant") spec.kind = InitialKind::Constant;
  else if (pf.initial_type == "linear") spec.kind = InitialKind::Linear;
  else if (pf.initial_type == "one-minus-x") spec.kind = InitialKind::OneMinusX;
  else if (pf.initial_type == "classic-transition") spec.kind = InitialKind::ClassicTransition;
  else spec.kind = InitialKind::Polynomial;
  for (const auto& c : pf.initial_coeffs) spec.coeffs.push_back(c.value.value);
  return spec;
}

}  // namespace ssde::cli
