#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "dgpd/algebra.hpp"
#include "dgpd/double_groupoid.hpp"
#include "dgpd/groupoid.hpp"
#include "dgpd/haar.hpp"

namespace dgpd::io {

using json = nlohmann::json;

/// Parses a file; throws ParseError with "path:line:column" on bad JSON and
/// Error when the file cannot be read.
json read_json_file(const std::filesystem::path& path);
/// Parses text; `origin` prefixes error messages.
json parse_json(const std::string& text, const std::string& origin = "<input>");

/// {"objects", "arrows":[{"id","source","target"}], "units", "compose":[[a,b,ab]], "inverse"?}
CategoryData category_data_from_json(const json& j);
json to_json(const CategoryData& data);
Groupoid groupoid_from_json(const json& j);

/// {"vertical", "horizontal", "sideK", "sideH"}, each a structure object.
DoubleGroupoid double_from_json(const json& j);
json to_json(const DoubleGroupoid& dg);

/// Rationals are written as "p/q" strings; integers are also accepted on input.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);

/// {"arrow-id": "p/q", ...}
HaarSystem haar_from_json(const Category& cat, const json& j);
json to_json(const Category& cat, const HaarSystem& h);

/// {"muD": {...}, "muK": {...}, "muH": {...}}
DoubleHaarSystem double_haar_from_json(const DoubleGroupoid& dg, const json& j);
json to_json(const DoubleGroupoid& dg, const DoubleHaarSystem& dh);

/// {"arrow-id": [re, im], ...}. Exact elements accept integers or "p/q"
/// strings per part; float elements accept any number.
ExactElement exact_element_from_json(const Category& cat, const json& j);
FloatElement float_element_from_json(const Category& cat, const json& j);
json to_json(const ExactElement& e);
json to_json(const FloatElement& e);

json to_json(const ValidationReport& rep);

}  // namespace dgpd::io
