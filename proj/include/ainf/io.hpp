#pragma once

// JSON algebra files: parsing with located errors, canonical serialization.

#include <ainf/presentation.hpp>

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace ainf {

using json = nlohmann::json;

namespace detail {

inline std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items()) require(ok.count(k) > 0, "unexpected key '" + k + "' in " + where);
}

inline const std::string& string_at(const json& j, const std::string& where) {
  require(j.is_string(), where + " must be a string");
  return j.get_ref<const std::string&>();
}

inline Terms parse_terms(const json& j, Field f, const std::string& where) {
  require(j.is_array(), where + " must be a list of [name, coefficient] pairs");
  Terms t;
  for (const auto& pair : j) {
    require(pair.is_array() && pair.size() == 2, where + ": each term must be a [name, coefficient] pair");
    t.emplace_back(string_at(pair[0], where + " term name"), Scalar::parse(f, string_at(pair[1], where + " coefficient")));
  }
  return t;
}

inline json dump_terms(const Terms& t) {
  json out = json::array();
  for (const auto& [name, c] : t) out.push_back(json::array({name, c.to_string()}));
  return out;
}

}  // namespace detail

inline Presentation parse_presentation(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError("syntax error at " + detail::location(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  using detail::require;
  require(root.is_object(), "top level must be an object");
  detail::check_keys(root, {"field", "basis", "unit", "d", "m", "kind", "retraction", "assume"}, "algebra file");
  require(root.contains("field") && root.contains("basis") && root.contains("unit"),
          "algebra file needs 'field', 'basis' and 'unit'");

  Presentation p;
  p.field = Field::parse(detail::string_at(root["field"], "field"));

  require(root["basis"].is_array(), "basis must be a list");
  std::set<std::string> names;
  for (const auto& b : root["basis"]) {
    require(b.is_object(), "basis entries must be objects");
    detail::check_keys(b, {"name", "degree", "source", "target"}, "basis entry");
    require(b.contains("name") && b.contains("degree"), "basis entry needs 'name' and 'degree'");
    BasisElement e;
    e.name = detail::string_at(b["name"], "basis name");
    require(!e.name.empty(), "empty basis name");
    require(names.insert(e.name).second, "duplicate basis name '" + e.name + "'");
    require(b["degree"].is_number_integer(), "degree of '" + e.name + "' must be an integer");
    e.degree = b["degree"].get<int>();
    if (b.contains("source")) e.source = detail::string_at(b["source"], "source of " + e.name);
    if (b.contains("target")) e.target = detail::string_at(b["target"], "target of " + e.name);
    p.basis.push_back(std::move(e));
  }

  require(root["unit"].is_array(), "unit must be a list of idempotent names");
  for (const auto& u : root["unit"]) {
    p.unit.push_back(detail::string_at(u, "unit entry"));
    (void)p.index(p.unit.back());
  }

  if (root.contains("d")) {
    require(root["d"].is_array(), "d must be a list");
    for (const auto& e : root["d"]) {
      require(e.is_object(), "d entries must be objects");
      detail::check_keys(e, {"arg", "value"}, "d entry");
      DifferentialEntry de{detail::string_at(e.at("arg"), "d arg"), detail::parse_terms(e.at("value"), p.field, "d value")};
      (void)p.index(de.arg);
      (void)p.vector(de.value);
      p.d.push_back(std::move(de));
    }
  }

  if (root.contains("m")) {
    require(root["m"].is_object(), "m must be an object keyed by arity");
    for (const auto& [key, entries] : root["m"].items()) {
      require(!key.empty() && key.find_first_not_of("0123456789") == std::string::npos, "arity key '" + key + "' is not a number");
      int arity = std::stoi(key);
      require(arity >= 2, "m blocks start at arity 2 (m1 is the 'd' block)");
      require(entries.is_array(), "m[" + key + "] must be a list");
      auto& table = p.m[arity];
      for (const auto& e : entries) {
        require(e.is_object(), "m entries must be objects");
        detail::check_keys(e, {"args", "value"}, "m entry");
        OperationEntry oe;
        require(e.contains("args") && e["args"].is_array(), "m entry needs an 'args' list");
        for (const auto& a : e["args"]) {
          oe.args.push_back(detail::string_at(a, "m argument"));
          (void)p.index(oe.args.back());
        }
        require(static_cast<int>(oe.args.size()) == arity, "m[" + key + "] entry has " + std::to_string(oe.args.size()) + " arguments");
        oe.value = detail::parse_terms(e.at("value"), p.field, "m value");
        (void)p.vector(oe.value);
        table.push_back(std::move(oe));
      }
    }
  }

  if (root.contains("kind")) {
    p.kind = detail::string_at(root["kind"], "kind");
    require(*p.kind == "dg" || *p.kind == "ainf", "kind must be 'dg' or 'ainf'");
  }
  if (root.contains("retraction")) {
    require(root["retraction"].is_array(), "retraction must be a list of cocycle representatives");
    for (const auto& r : root["retraction"]) {
      p.retraction.push_back(detail::parse_terms(r, p.field, "retraction representative"));
      (void)p.vector(p.retraction.back());
    }
  }
  if (root.contains("assume")) {
    require(root["assume"].is_array(), "assume must be a list");
    for (const auto& a : root["assume"]) p.assume.push_back(detail::string_at(a, "assume entry"));
  }
  return p;
}

inline Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

inline json to_json(const Presentation& p) {
  json root;
  root["field"] = p.field.to_string();
  json basis = json::array();
  for (const auto& b : p.basis) {
    json e{{"name", b.name}, {"degree", b.degree}};
    if (b.source) e["source"] = *b.source;
    if (b.target) e["target"] = *b.target;
    basis.push_back(std::move(e));
  }
  root["basis"] = std::move(basis);
  root["unit"] = p.unit;
  if (!p.d.empty()) {
    json d = json::array();
    for (const auto& e : p.d) d.push_back({{"arg", e.arg}, {"value", detail::dump_terms(e.value)}});
    root["d"] = std::move(d);
  }
  if (!p.m.empty()) {
    json m = json::object();
    for (const auto& [arity, entries] : p.m) {
      json list = json::array();
      for (const auto& e : entries) list.push_back({{"args", e.args}, {"value", detail::dump_terms(e.value)}});
      m[std::to_string(arity)] = std::move(list);
    }
    root["m"] = std::move(m);
  }
  if (p.kind) root["kind"] = *p.kind;
  if (!p.retraction.empty()) {
    json r = json::array();
    for (const auto& t : p.retraction) r.push_back(detail::dump_terms(t));
    root["retraction"] = std::move(r);
  }
  if (!p.assume.empty()) root["assume"] = p.assume;
  return root;
}

/// Canonical text: sorted keys, two-space indentation, trailing newline.
inline std::string serialize(const Presentation& p) { return to_json(p).dump(2) + "\n"; }

}  // namespace ainf
