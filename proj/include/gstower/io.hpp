#ifndef GSTOWER_IO_HPP
#define GSTOWER_IO_HPP

// JSON loaders for presentation files and tower configs.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gstower/error.hpp"
#include "gstower/presentation.hpp"
#include "gstower/tower.hpp"

namespace gstower {

using Json = nlohmann::json;

// "-" reads stdin.
inline std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": " + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

namespace detail {

template <class T>
T json_get(const Json& j, const char* key, const std::string& source) {
  if (!j.contains(key)) throw ParameterError(source + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ParameterError(source + ": field '" + key + "' has the wrong type");
  }
}

template <class T>
T json_get_or(const Json& j, const char* key, T fallback, const std::string& source) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return json_get<T>(j, key, source);
}

inline Integer json_integer(const Json& j, const char* key, Integer fallback, const std::string& source) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  const Json& v = j.at(key);
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<std::uint64_t>()) : Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParameterError(source + ": field '" + std::string(key) + "' must be an integer");
}

}  // namespace detail

// {p, generators: [names], relators: [words], labels?: [names]}
inline Presentation presentation_from_json(const Json& j, const std::string& source = "presentation") {
  if (!j.is_object()) throw ParameterError(source + ": expected a JSON object");
  auto p = detail::json_get<std::uint32_t>(j, "p", source);
  auto names = detail::json_get<std::vector<std::string>>(j, "generators", source);
  auto relators = detail::json_get<std::vector<std::string>>(j, "relators", source);
  auto labels = detail::json_get_or<std::vector<std::string>>(j, "labels", {}, source);
  require_odd_prime(p);
  return Presentation::parse(p, std::move(names), relators, std::move(labels));
}

inline Presentation load_presentation(const std::string& path) {
  std::string source = path == "-" ? "<stdin>" : path;
  return presentation_from_json(parse_json(read_text(path), source), source);
}

struct TowerConfig {
  TowerSpec spec;
  DecompositionModel decomposition;
  ClassGroupModel class_model;
  std::optional<std::uint64_t> ell;  // set for the cyclotomic shorthand
};

// Full form: {p, deg, primes: [{e, f, split_delay, split_cap}], contains_mu_p,
// T1, T2, class_model: {mu, lambda, nu}, k}. Shorthand: {p, ell, T1, mu}.
// split_cap may be a number, null, absent, or "inf" (unbounded).
inline TowerConfig tower_from_json(const Json& j, const std::string& source = "tower config") {
  using detail::json_get;
  using detail::json_get_or;
  if (!j.is_object()) throw ParameterError(source + ": expected a JSON object");
  TowerConfig c;
  auto p = json_get<std::uint32_t>(j, "p", source);
  require_odd_prime(p);
  unsigned k = json_get_or<unsigned>(j, "k", 1, source);

  if (j.contains("ell")) {
    auto ell = json_get<std::uint64_t>(j, "ell", source);
    unsigned t1 = json_get_or<unsigned>(j, "T1", 1, source);
    c.spec = cyclotomic_spec(p, ell, t1, k);
    c.decomposition = standard_decomposition(c.spec);
    c.class_model.mu = detail::json_integer(j, "mu", 0, source);
    c.class_model.validate();
    c.ell = ell;
    return c;
  }

  c.spec.p = p;
  c.spec.deg = json_get<unsigned>(j, "deg", source);
  c.spec.contains_mu_p = json_get_or<bool>(j, "contains_mu_p", true, source);
  c.spec.T1 = json_get_or<unsigned>(j, "T1", 1, source);
  c.spec.T2 = json_get_or<unsigned>(j, "T2", c.spec.T1, source);
  c.spec.k = k;
  if (!j.contains("primes") || !j.at("primes").is_array())
    throw ParameterError(source + ": 'primes' must be an array");
  for (const Json& q : j.at("primes")) {
    if (!q.is_object()) throw ParameterError(source + ": each prime must be an object");
    c.spec.primes.push_back({json_get<unsigned>(q, "e", source), json_get<unsigned>(q, "f", source)});
    PrimeSplitting s;
    s.delay = json_get_or<unsigned>(q, "split_delay", 0, source);
    if (q.contains("split_cap") && !q.at("split_cap").is_null()) {
      const Json& cap = q.at("split_cap");
      if (cap.is_string() && (cap == "inf" || cap == "unbounded"))
        s.cap.reset();
      else if (cap.is_number_unsigned())
        s.cap = cap.get<unsigned>();
      else
        throw ParameterError(source + ": split_cap must be a nonnegative integer, null or \"inf\"");
    }
    c.decomposition.primes.push_back(s);
  }
  if (j.contains("class_model")) {
    const Json& m = j.at("class_model");
    c.class_model.mu = detail::json_integer(m, "mu", 0, source);
    c.class_model.lambda = detail::json_integer(m, "lambda", 0, source);
    c.class_model.nu = detail::json_integer(m, "nu", 0, source);
  }
  c.spec.validate();
  c.decomposition.validate(c.spec);
  c.class_model.validate();
  return c;
}

inline TowerConfig load_tower_config(const std::string& path) {
  std::string source = path == "-" ? "<stdin>" : path;
  return tower_from_json(parse_json(read_text(path), source), source);
}

}  // namespace gstower

#endif  // GSTOWER_IO_HPP
