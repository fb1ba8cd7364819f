#include "logsurf/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>

namespace logsurf::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::Parse, what); }

template <typename T>
T field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string(where) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    parse_error(std::string(where) + ": bad \"" + key + "\"");
  }
}

Rat rat_field(const json& j, const char* key, const char* where) {
  return parse_rat(field<std::string>(j, key, where));
}

json id_array(const CurveSet& s) { return json(std::vector<CurveId>(s.begin(), s.end())); }
CurveSet id_set(const json& j, const char* key, const char* where) {
  const auto v = field<std::vector<CurveId>>(j, key, where);
  return CurveSet(v.begin(), v.end());
}

json rat_map(const std::map<CurveId, Rat>& m) {
  json out = json::object();
  for (const auto& [id, r] : m) out[std::to_string(id)] = to_fraction_string(r);
  return out;
}

std::map<CurveId, Rat> rat_map_from(const json& j, const char* where) {
  if (!j.is_object()) parse_error(std::string(where) + ": expected an object");
  std::map<CurveId, Rat> out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) parse_error(std::string(where) + ": coefficients must be \"p/q\" strings");
    try {
      std::size_t used = 0;
      const int id = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
      out[id] = parse_rat(value.get<std::string>());
    } catch (const std::logic_error&) {
      parse_error(std::string(where) + ": bad curve id \"" + key + "\"");
    }
  }
  return out;
}

json base_json(const BaseDesignation& base) {
  if (const auto* t = std::get_if<TargetBase>(&base)) return json{{"target", id_array(t->target)}};
  return "point";
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

json config_json(const CurveConfig& c) {
  json curves = json::array();
  for (const auto& curve : c.curves) {
    json j{{"id", curve.id},
           {"genus", curve.genus},
           {"self_intersection", curve.self_intersection},
           {"coeff", to_fraction_string(curve.boundary_coeff)}};
    if (!curve.name.empty()) j["name"] = curve.name;
    curves.push_back(std::move(j));
  }
  json points = json::array();
  for (const auto& p : c.points) points.push_back({{"id", p.id}, {"incident", p.incident}});
  json out{{"curves", std::move(curves)}, {"points", std::move(points)}};
  if (c.picard_rank_of_model) out["picard_rank_of_model"] = *c.picard_rank_of_model;
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_error("scenario must be a JSON object");
  Scenario s;
  for (const auto& j : field<json>(doc, "curves", "scenario")) {
    Curve curve;
    curve.id = field<CurveId>(j, "id", "curve");
    curve.genus = field<int>(j, "genus", "curve");
    curve.self_intersection = field<int>(j, "self_intersection", "curve");
    curve.boundary_coeff = rat_field(j, "coeff", "curve");
    if (j.contains("name")) curve.name = field<std::string>(j, "name", "curve");
    s.config.curves.push_back(std::move(curve));
  }
  if (doc.contains("points"))
    for (const auto& j : field<json>(doc, "points", "scenario")) {
      CrossingPoint p;
      p.id = field<PointId>(j, "id", "point");
      p.incident = field<std::vector<CurveId>>(j, "incident", "point");
      std::sort(p.incident.begin(), p.incident.end());
      s.config.points.push_back(std::move(p));
    }
  if (doc.contains("picard_rank_of_model"))
    s.config.picard_rank_of_model = field<int>(doc, "picard_rank_of_model", "scenario");
  if (doc.contains("contracted")) s.contracted = id_set(doc, "contracted", "scenario");
  if (doc.contains("base")) {
    const json& b = doc.at("base");
    if (b == "point")
      s.base = PointBase{};
    else if (b.is_object() && b.contains("target"))
      s.base = TargetBase{id_set(b, "target", "base")};
    else
      parse_error("base must be \"point\" or {\"target\": [...]}");
  }
  return s;
}

std::string dump_scenario(const Scenario& s) {
  json doc = config_json(s.config);
  if (s.contracted) doc["contracted"] = id_array(*s.contracted);
  if (s.base) doc["base"] = base_json(*s.base);
  return doc.dump(2) + "\n";
}

std::string scenario_digest(const CurveConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_json(c).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::string dump_trace(const TraceFile& t) {
  json steps = json::array();
  for (const auto& s : t.trace.steps) {
    json j{{"kind", std::string(to_string(s.kind))},
           {"curve", s.curve},
           {"discrepancies_before", rat_map(s.discrepancies_before)},
           {"discrepancies_after", rat_map(s.discrepancies_after)},
           {"picard_before", s.picard_before},
           {"picard_after", s.picard_after}};
    if (s.epsilon) {
      j["epsilon"] = {{"supremum", s.epsilon->supremum ? json(to_fraction_string(*s.epsilon->supremum)) : json()},
                      {"chosen", to_fraction_string(s.epsilon->chosen)}};
    }
    if (s.kind == MoveKind::LogBlowDown) j["blowdown_order"] = s.blowdown_order;
    steps.push_back(std::move(j));
  }
  const json doc{{"format", trace_format},
                 {"scenario_digest", t.scenario_digest},
                 {"mode", std::string(to_string(t.trace.mode))},
                 {"start", id_array(t.trace.start)},
                 {"end", id_array(t.trace.end)},
                 {"fm_index", t.trace.fm_index},
                 {"steps", std::move(steps)}};
  return doc.dump(2) + "\n";
}

TraceFile parse_trace(std::string_view text) {
  const json doc = parse_json(text);
  if (field<std::string>(doc, "format", "trace") != trace_format) parse_error("unknown trace format");
  TraceFile t;
  t.scenario_digest = field<std::string>(doc, "scenario_digest", "trace");
  const auto mode = field<std::string>(doc, "mode", "trace");
  if (mode == "decompose")
    t.trace.mode = TraceMode::Decomposition;
  else if (mode == "minimize")
    t.trace.mode = TraceMode::Minimization;
  else
    parse_error("unknown trace mode \"" + mode + "\"");
  t.trace.start = id_set(doc, "start", "trace");
  t.trace.end = id_set(doc, "end", "trace");
  t.trace.fm_index = field<std::size_t>(doc, "fm_index", "trace");
  for (const auto& j : field<json>(doc, "steps", "trace")) {
    MoveRecord s;
    const auto kind = field<std::string>(j, "kind", "step");
    if (kind == "Flop")
      s.kind = MoveKind::FlopContraction;
    else if (kind == "LogBlowDown")
      s.kind = MoveKind::LogBlowDown;
    else
      parse_error("unknown step kind \"" + kind + "\"");
    s.curve = field<CurveId>(j, "curve", "step");
    s.discrepancies_before = rat_map_from(field<json>(j, "discrepancies_before", "step"), "step");
    s.discrepancies_after = rat_map_from(field<json>(j, "discrepancies_after", "step"), "step");
    s.picard_before = field<int>(j, "picard_before", "step");
    s.picard_after = field<int>(j, "picard_after", "step");
    if (j.contains("epsilon")) {
      const json& e = j.at("epsilon");
      EpsilonChoice eps;
      if (e.contains("supremum") && !e.at("supremum").is_null()) eps.supremum = rat_field(e, "supremum", "epsilon");
      eps.chosen = rat_field(e, "chosen", "epsilon");
      s.epsilon = eps;
    }
    if (j.contains("blowdown_order")) s.blowdown_order = field<std::vector<CurveId>>(j, "blowdown_order", "step");
    t.trace.steps.push_back(std::move(s));
  }
  return t;
}

CurveSet parse_id_list(const CurveConfig& c, std::string_view text) {
  CurveSet out;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = std::min(text.find(',', begin), text.size());
    auto item = text.substr(begin, end - begin);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.insert(c.resolve(item));
    else if (end < text.size()) parse_error("empty entry in id list");
    begin = end + 1;
  }
  return out;
}

BaseDesignation parse_base(const CurveConfig& c, std::string_view text) {
  if (text == "point") return PointBase{};
  if (text.starts_with("target:")) return TargetBase{parse_id_list(c, text.substr(7))};
  parse_error("base must be \"point\" or \"target:IDS\"");
}

std::string to_dot(const CurveConfig& c, const CurveSet& contracted) {
  std::ostringstream out;
  out << "graph dual_graph {\n";
  out << "  node [shape=ellipse];\n";
  for (const auto& curve : c.curves) {
    out << "  c" << curve.id << " [label=\"" << curve.id << ": " << curve.genus << "," << curve.self_intersection
        << "," << to_display_string(curve.boundary_coeff) << "\"";
    if (!curve.name.empty()) out << ", tooltip=\"" << curve.name << "\"";
    if (contracted.count(curve.id)) out << ", shape=box, style=filled, fillcolor=lightgray";
    out << "];\n";
  }
  for (const auto& p : c.points)
    if (p.incident.size() == 2) out << "  c" << p.incident[0] << " -- c" << p.incident[1] << " [label=\"p" << p.id << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Parse, "cannot write " + path);
  out << contents;
}

}  // namespace logsurf::io
