#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ks/errors.hpp"
#include "ks/quadspace.hpp"
#include "ks/rational.hpp"

namespace ks {

// Gram entries come in as JSON integers or "p/q" strings. Non-integral JSON
// numbers are rejected: their nearest-double reading would silently break
// exactness.
inline Rat rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rat(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      throw ParseError("integer Gram entry out of range; use a \"p/q\" string");
    return Rat(static_cast<long>(u));
  }
  if (v.is_number_float())
    throw ParseError("non-integral numeric entry; write rationals as \"p/q\" strings");
  throw ParseError("expected number or \"p/q\" string, got " + v.dump());
}

// {"n": int, "gram": [[entry, ...], ...]}
inline QuadraticSpace gram_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("gram"))
    throw ParseError("form JSON must be an object with \"n\" and \"gram\"");
  if (!doc["n"].is_number_integer() && !doc["n"].is_number_unsigned())
    throw ParseError("\"n\" must be an integer");
  const long n = doc["n"].get<long>();
  if (n < 1 || n > 1024) throw ParseError("\"n\" out of range");
  const nlohmann::json& gram = doc["gram"];
  if (!gram.is_array() || gram.size() != static_cast<std::size_t>(n))
    throw ParseError("\"gram\" must be an n x n array");
  linalg::QMatrix g;
  for (const auto& row : gram) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      throw ParseError("\"gram\" must be an n x n array");
    linalg::QVector r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    g.push_back(std::move(r));
  }
  return QuadraticSpace(static_cast<int>(n), std::move(g));
}

namespace detail {

inline QuadraticSpace parse_named_form(const std::string& spec) {
  if (spec == "U") return QuadraticSpace::hyperbolic_plane();
  if (spec.rfind("U^", 0) == 0) {
    const std::string k = spec.substr(2);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed form 'U^k': " + spec);
    const int count = std::stoi(k);
    if (count < 1) throw ParseError("U^k needs k >= 1");
    return QuadraticSpace::hyperbolic_planes(count);
  }
  if (spec.rfind("diag:", 0) == 0) {
    std::vector<Rat> entries;
    std::stringstream body(spec.substr(5));
    std::string item;
    while (std::getline(body, item, ','))
      entries.push_back(parse_rational(item));
    if (entries.empty()) throw ParseError("diag: needs at least one entry");
    return QuadraticSpace::diagonal(entries);
  }
  if (spec.rfind("sum:", 0) == 0) {
    std::vector<QuadraticSpace> parts;
    std::stringstream body(spec.substr(4));
    std::string item;
    while (std::getline(body, item, '+')) {
      if (item.rfind("sum:", 0) == 0)
        throw ParseError("nested sum: is not supported; flatten the list");
      parts.push_back(parse_named_form(item));
    }
    if (parts.empty()) throw ParseError("sum: needs at least one summand");
    QuadraticSpace out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out = direct_sum(out, parts[i]);
    return out;
  }
  throw ParseError("unrecognized named form: '" + spec + "'");
}

}  // namespace detail

// A form spec is a named form ("U", "U^3", "diag:1,-1,2/3",
// "sum:U^2+diag:5"), an inline JSON document, or a path to a JSON file.
inline QuadraticSpace parse_form_spec(const std::string& spec) {
  std::size_t start = spec.find_first_not_of(" \t\n");
  if (start == std::string::npos) throw ParseError("empty form spec");
  std::size_t stop = spec.find_last_not_of(" \t\n");
  const std::string body = spec.substr(start, stop - start + 1);

  if (body.front() == '{') {
    nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded()) throw ParseError("invalid inline JSON form");
    return gram_from_json(doc);
  }
  if (body == "U" || body.rfind("U^", 0) == 0 || body.rfind("diag:", 0) == 0 ||
      body.rfind("sum:", 0) == 0)
    return detail::parse_named_form(body);

  std::ifstream file(body);
  if (!file)
    throw ParseError("form spec is neither a named form, inline JSON, nor a "
                     "readable file: '" + body + "'");
  nlohmann::json doc = nlohmann::json::parse(file, nullptr, false);
  if (doc.is_discarded()) throw ParseError("invalid JSON in form file " + body);
  return gram_from_json(doc);
}

}  // namespace ks
