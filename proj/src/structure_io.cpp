#include "dgpd/structure_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dgpd/error.hpp"

namespace dgpd::io {

namespace {

std::string where(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + ": expected a string, got " + j.dump());
  return j.get<std::string>();
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(origin + ":" + where(text, at) + ": " + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

CategoryData category_data_from_json(const json& j) {
  CategoryData d;
  for (const auto& o : field(j, "objects", "structure")) d.objects.push_back(str(o, "object id"));
  for (const auto& a : field(j, "arrows", "structure"))
    d.arrows.push_back({str(field(a, "id", "arrow"), "arrow id"), str(field(a, "source", "arrow"), "source"),
                        str(field(a, "target", "arrow"), "target")});
  for (const auto& [k, v] : field(j, "units", "structure").items()) d.units[k] = str(v, "unit");
  for (const auto& c : field(j, "compose", "structure")) {
    if (!c.is_array() || c.size() != 3) throw ParseError("compose entry must be [a, b, ab], got " + c.dump());
    d.compose.push_back({str(c[0], "compose"), str(c[1], "compose"), str(c[2], "compose")});
  }
  if (j.contains("inverse")) {
    std::map<std::string, std::string> inv;
    for (const auto& [k, v] : j.at("inverse").items()) inv[k] = str(v, "inverse");
    d.inverse = std::move(inv);
  }
  return d;
}

json to_json(const CategoryData& d) {
  json j;
  j["objects"] = d.objects;
  j["arrows"] = json::array();
  for (const auto& a : d.arrows) j["arrows"].push_back({{"id", a.id}, {"source", a.source}, {"target", a.target}});
  j["units"] = d.units;
  j["compose"] = json::array();
  for (const auto& c : d.compose) j["compose"].push_back({c[0], c[1], c[2]});
  if (d.inverse) j["inverse"] = *d.inverse;
  return j;
}

Groupoid groupoid_from_json(const json& j) { return Groupoid::from_data(category_data_from_json(j)); }

DoubleGroupoid double_from_json(const json& j) {
  return DoubleGroupoid::make(groupoid_from_json(field(j, "vertical", "double groupoid")),
                              groupoid_from_json(field(j, "horizontal", "double groupoid")),
                              groupoid_from_json(field(j, "sideK", "double groupoid")),
                              groupoid_from_json(field(j, "sideH", "double groupoid")));
}

json to_json(const DoubleGroupoid& dg) {
  return {{"vertical", to_json(dg.vertical().to_data())},
          {"horizontal", to_json(dg.horizontal().to_data())},
          {"sideK", to_json(dg.side_k().to_data())},
          {"sideH", to_json(dg.side_h().to_data())}};
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError("expected a rational \"p/q\" or an integer, got " + j.dump());
}

json rational_to_json(const Rational& r) { return format_rational(r); }

HaarSystem haar_from_json(const Category& cat, const json& j) {
  if (!j.is_object()) throw ParseError("Haar weights must be an object arrow-id -> \"p/q\"");
  std::map<std::string, Rational> m;
  for (const auto& [k, v] : j.items()) m[k] = rational_from_json(v);
  return HaarSystem::from_map(cat, m);
}

json to_json(const Category& cat, const HaarSystem& h) {
  json j = json::object();
  for (const auto& [k, v] : h.to_map(cat)) j[k] = rational_to_json(v);
  return j;
}

DoubleHaarSystem double_haar_from_json(const DoubleGroupoid& dg, const json& j) {
  DoubleHaarSystem dh;
  dh.mu_d = haar_from_json(dg.vertical(), field(j, "muD", "double Haar system")).weights;
  dh.mu_k = haar_from_json(dg.side_k(), field(j, "muK", "double Haar system"));
  dh.mu_h = haar_from_json(dg.side_h(), field(j, "muH", "double Haar system"));
  return dh;
}

json to_json(const DoubleGroupoid& dg, const DoubleHaarSystem& dh) {
  return {{"muD", to_json(dg.vertical(), HaarSystem{dh.mu_d})},
          {"muK", to_json(dg.side_k(), dh.mu_k)},
          {"muH", to_json(dg.side_h(), dh.mu_h)}};
}

namespace {

template <class S, class Part>
AlgebraElement<S> element_from_json(const Category& cat, const json& j, Part part) {
  if (!j.is_object()) throw ParseError("algebra element must be an object arrow-id -> [re, im]");
  AlgebraElement<S> e(cat.shared_arrow_names());
  for (const auto& [k, v] : j.items()) {
    if (!v.is_array() || v.size() != 2) throw ParseError("coefficient of " + k + " must be [re, im]");
    e.add(cat.arrow(k), S(part(v[0]), part(v[1])));
  }
  e.prune();
  return e;
}

json exact_part(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return format_rational(r);
}

}  // namespace

ExactElement exact_element_from_json(const Category& cat, const json& j) {
  return element_from_json<QComplex>(cat, j, [](const json& x) {
    if (x.is_number_float()) {
      double d = x.get<double>();
      if (d != std::floor(d) || std::abs(d) > 9e15) throw ParseError("exact coefficients must be integers or \"p/q\"");
      return Rational(static_cast<std::int64_t>(d));
    }
    return rational_from_json(x);
  });
}

FloatElement float_element_from_json(const Category& cat, const json& j) {
  return element_from_json<std::complex<double>>(cat, j, [](const json& x) {
    if (x.is_number()) return x.get<double>();
    return to_double(rational_from_json(x));
  });
}

json to_json(const ExactElement& e) {
  json j = json::object();
  for (const auto& [k, c] : e.terms()) j[(*e.context())[k]] = {exact_part(c.re), exact_part(c.im)};
  return j;
}

json to_json(const FloatElement& e) {
  json j = json::object();
  for (const auto& [k, c] : e.terms()) j[(*e.context())[k]] = {c.real(), c.imag()};
  return j;
}

json to_json(const ValidationReport& rep) {
  json j;
  j["subject"] = rep.subject;
  j["ok"] = rep.ok();
  j["structural_errors"] = rep.structural_errors;
  j["axioms"] = json::array();
  for (const auto& a : rep.axioms) {
    json w = json::array();
    for (const auto& x : a.witnesses) w.push_back({{"ids", x.ids}, {"detail", x.detail}});
    j["axioms"].push_back(
        {{"name", a.name}, {"cases", a.cases}, {"failures", a.failures}, {"passed", a.passed()}, {"witnesses", w}});
  }
  j["components"] = json::array();
  for (const auto& c : rep.components) j["components"].push_back(to_json(c));
  j["notes"] = rep.notes;
  return j;
}

}  // namespace dgpd::io
