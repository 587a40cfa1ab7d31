#include "qaf/formats.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qaf/errors.hpp"

namespace qaf {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

// Splits a line (with any `#` comment removed) into whitespace tokens.
std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
  if (tok.empty() || tok[0] == '-' || tok[0] == '+')
    parse_fail(line_no, "expected an unsigned index, got '" + tok + "'");
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (errno != 0 || end != tok.c_str() + tok.size())
    parse_fail(line_no, "expected an unsigned index, got '" + tok + "'");
  return static_cast<std::size_t>(v);
}

double parse_value(const std::string& tok, std::size_t line_no) {
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || end != tok.c_str() + tok.size())
    parse_fail(line_no, "expected a number, got '" + tok + "'");
  if (!std::isfinite(v)) parse_fail(line_no, "value must be finite, got '" + tok + "'");
  return v;
}

Spin parse_spin(const std::string& tok, std::size_t line_no) {
  if (tok == "+1" || tok == "1") return spin_up;
  if (tok == "-1") return spin_down;
  parse_fail(line_no, "clamp value must be +1 or -1, got '" + tok + "'");
}

}  // namespace

IsingFile parse_ising(std::istream& in) {
  IsingFile file;
  bool have_n = false;
  std::size_t n = 0;
  std::set<std::size_t> seen_h;
  std::set<IsingModel::Key> seen_j;
  std::set<std::size_t> seen_c;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto tok = tokenize(raw);
    if (tok.empty()) continue;

    const std::string& kind = tok[0];
    if (kind == "n") {
      if (have_n) parse_fail(line_no, "duplicate 'n' line");
      if (tok.size() != 2) parse_fail(line_no, "'n' takes exactly one argument");
      n = parse_index(tok[1], line_no);
      file.model = IsingModel(n);
      have_n = true;
      continue;
    }
    if (!have_n) parse_fail(line_no, "'" + kind + "' line before the 'n' line");

    if (kind == "h") {
      if (tok.size() != 3) parse_fail(line_no, "'h' takes an index and a value");
      const std::size_t i = parse_index(tok[1], line_no);
      if (i >= n) parse_fail(line_no, "index " + tok[1] + " out of range for n=" + std::to_string(n));
      if (!seen_h.insert(i).second) parse_fail(line_no, "duplicate bias for qubit " + tok[1]);
      file.model.set_bias(i, parse_value(tok[2], line_no));
    } else if (kind == "J") {
      if (tok.size() != 4) parse_fail(line_no, "'J' takes two indices and a value");
      const std::size_t i = parse_index(tok[1], line_no);
      const std::size_t j = parse_index(tok[2], line_no);
      if (i >= j) parse_fail(line_no, "'J' indices must satisfy i < j");
      if (j >= n) parse_fail(line_no, "index " + tok[2] + " out of range for n=" + std::to_string(n));
      if (!seen_j.insert({i, j}).second)
        parse_fail(line_no, "duplicate coupling (" + tok[1] + ", " + tok[2] + ")");
      file.model.add_coupling(i, j, parse_value(tok[3], line_no));
    } else if (kind == "c") {
      if (tok.size() != 3) parse_fail(line_no, "'c' takes an index and +1 or -1");
      const std::size_t i = parse_index(tok[1], line_no);
      if (i >= n) parse_fail(line_no, "index " + tok[1] + " out of range for n=" + std::to_string(n));
      if (!seen_c.insert(i).second) parse_fail(line_no, "duplicate clamp for qubit " + tok[1]);
      file.clamps.set(i, parse_spin(tok[2], line_no));
    } else {
      parse_fail(line_no, "unknown directive '" + kind + "'");
    }
  }
  if (!have_n) throw ParseError("missing 'n' line");
  return file;
}

IsingFile parse_ising_string(const std::string& text) {
  std::istringstream in(text);
  return parse_ising(in);
}

std::string format_double(double x) {
  char buf[64];
  // Integer values print as integers; %g would switch to scientific
  // notation around seven digits.
  if (std::nearbyint(x) == x && std::abs(x) <= 0x1p53) {
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string emit_ising(const IsingModel& model, const ClampSet& clamps) {
  std::ostringstream out;
  out << "n " << model.size() << "\n";
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double h = model.bias(i);
    if (h != 0.0) out << "h " << i << " " << format_double(h) << "\n";
  }
  for (const auto& [key, value] : model.couplings()) {
    if (value != 0.0) out << "J " << key.first << " " << key.second << " " << format_double(value) << "\n";
  }
  for (const auto& [index, spin] : clamps.assignments()) {
    out << "c " << index << " " << (spin == spin_up ? "+1" : "-1") << "\n";
  }
  return out.str();
}

namespace {

using nlohmann::json;

const json& member(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

const json& member_array(const json& obj, const char* key, const char* where) {
  const json& j = member(obj, key, where);
  if (!j.is_array()) throw ParseError(std::string(where) + ": '" + key + "' must be an array");
  return j;
}

std::string member_string(const json& obj, const char* key, const char* where) {
  const json& j = member(obj, key, where);
  if (!j.is_string()) throw ParseError(std::string(where) + ": '" + key + "' must be a string");
  return j.get<std::string>();
}

std::string net_name(const json& j, const char* where) {
  if (!j.is_string()) throw ParseError(std::string(where) + ": net references must be strings");
  const std::string name = j.get<std::string>();
  if (name.empty()) throw ParseError(std::string(where) + ": net names must be non-empty");
  return name;
}

// Returns the net, creating it on first mention. Creation order therefore
// follows the file's own order, which keeps qubit numbering reproducible
// from the file alone.
NetId net_of(Circuit& c, const std::string& name) {
  return c.has_net(name) ? c.net(name) : c.add_net(name);
}

}  // namespace

Circuit parse_netlist_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("netlist JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("netlist JSON: top level must be an object");

  Circuit c;
  std::vector<NetId> inputs, outputs;
  for (const auto& j : member_array(doc, "inputs", "netlist")) {
    inputs.push_back(net_of(c, net_name(j, "inputs")));
  }
  for (const auto& j : member_array(doc, "outputs", "netlist")) {
    outputs.push_back(net_of(c, net_name(j, "outputs")));
  }
  for (const auto& g : member_array(doc, "gates", "netlist")) {
    if (!g.is_object()) throw ParseError("gates: each gate must be an object");
    const std::string type = member_string(g, "type", "gate");
    if (type != "NOR") throw ParseError("gate type '" + type + "' is not supported");
    const NetId a = net_of(c, net_name(member(g, "a", "gate"), "gate"));
    const NetId b = net_of(c, net_name(member(g, "b", "gate"), "gate"));
    const NetId out = net_of(c, net_name(member(g, "out", "gate"), "gate"));
    c.add_gate(a, b, out);
  }
  for (const auto& w : member_array(doc, "wires", "netlist")) {
    if (!w.is_object()) throw ParseError("wires: each wire must be an object");
    const NetId x = net_of(c, net_name(member(w, "x", "wire"), "wire"));
    const NetId y = net_of(c, net_name(member(w, "y", "wire"), "wire"));
    const std::string pol = member_string(w, "polarity", "wire");
    WirePolarity polarity;
    if (pol == "plain") {
      polarity = WirePolarity::Plain;
    } else if (pol == "invert") {
      polarity = WirePolarity::Inverting;
    } else {
      throw ParseError("wire polarity must be 'plain' or 'invert', got '" + pol + "'");
    }
    c.add_wire(x, y, polarity);
  }
  c.set_inputs(inputs);
  c.set_outputs(outputs);
  c.validate();
  return c;
}

std::string emit_netlist_json(const Circuit& c) {
  nlohmann::ordered_json doc;
  doc["inputs"] = json::array();
  for (NetId id : c.inputs()) doc["inputs"].push_back(c.net_name(id));
  doc["outputs"] = json::array();
  for (NetId id : c.outputs()) doc["outputs"].push_back(c.net_name(id));
  doc["gates"] = json::array();
  for (const NorGate& g : c.gates()) {
    nlohmann::ordered_json jg;
    jg["type"] = "NOR";
    jg["a"] = c.net_name(g.a);
    jg["b"] = c.net_name(g.b);
    jg["out"] = c.net_name(g.out);
    doc["gates"].push_back(std::move(jg));
  }
  doc["wires"] = json::array();
  for (const Wire& w : c.wires()) {
    nlohmann::ordered_json jw;
    jw["x"] = c.net_name(w.x);
    jw["y"] = c.net_name(w.y);
    jw["polarity"] = w.polarity == WirePolarity::Plain ? "plain" : "invert";
    doc["wires"].push_back(std::move(jw));
  }
  return doc.dump(2) + "\n";
}

}  // namespace qaf
