#include "mcbench/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mcbench {
namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, const char* what,
                           std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known |= key == a;
    if (!known)
      throw ParseError(std::string("unknown field '") + key + "' in " + what);
  }
}

double get_number(const json& obj, const char* what, const char* field) {
  if (!obj.contains(field))
    throw ParseError(std::string("missing field '") + field + "' in " + what);
  const json& v = obj.at(field);
  if (!v.is_number())
    throw ParseError(std::string("field '") + field + "' in " + what +
                     " must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* what, const char* field) {
  if (!obj.contains(field))
    throw ParseError(std::string("missing field '") + field + "' in " + what);
  const json& v = obj.at(field);
  if (!v.is_number_integer())
    throw ParseError(std::string("field '") + field + "' in " + what +
                     " must be an integer");
  return v.get<int>();
}

Direction parse_direction(const json& obj) {
  if (!obj.contains("direction") || !obj.at("direction").is_string())
    throw ParseError("hourly entry requires a string 'direction'");
  const std::string d = obj.at("direction").get<std::string>();
  if (d == "supply") return Direction::Supply;
  if (d == "demand") return Direction::Demand;
  throw ParseError("direction must be \"supply\" or \"demand\", got \"" + d +
                   "\"");
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be an object");
  reject_unknown_fields(doc, "instance",
                        {"periods", "p_min", "p_max", "hourly", "blocks"});

  Instance inst;
  if (!doc.contains("periods") || !doc.at("periods").is_array())
    throw ParseError("instance requires an array field 'periods'");
  for (const json& p : doc.at("periods")) {
    if (!p.is_number_integer())
      throw ParseError("periods entries must be integers");
    inst.periods.push_back(p.get<int>());
  }
  inst.bounds.p_min = get_number(doc, "instance", "p_min");
  inst.bounds.p_max = get_number(doc, "instance", "p_max");
  inst.hourly.assign(inst.periods.size(),
                     std::vector<std::vector<Segment>>(2));

  if (!doc.contains("hourly") || !doc.at("hourly").is_array())
    throw ParseError("instance requires an array field 'hourly'");
  for (const json& h : doc.at("hourly")) {
    if (!h.is_object()) throw ParseError("hourly entries must be objects");
    reject_unknown_fields(h, "hourly entry",
                          {"period", "direction", "p0", "p1", "q"});
    const int t = get_int(h, "hourly entry", "period");
    if (t < 0 || t >= static_cast<int>(inst.periods.size()))
      throw ParseError("hourly entry period out of range");
    const Direction d = parse_direction(h);
    Segment s;
    s.p0 = get_number(h, "hourly entry", "p0");
    s.p1 = get_number(h, "hourly entry", "p1");
    s.q = get_number(h, "hourly entry", "q");
    inst.hourly[t][static_cast<int>(d)].push_back(s);
  }

  if (!doc.contains("blocks") || !doc.at("blocks").is_array())
    throw ParseError("instance requires an array field 'blocks'");
  for (const json& b : doc.at("blocks")) {
    if (!b.is_object()) throw ParseError("block entries must be objects");
    reject_unknown_fields(b, "block entry", {"id", "price", "quantities"});
    BlockBid bid;
    if (!b.contains("id") || !b.at("id").is_string())
      throw ParseError("block entry requires a string 'id'");
    bid.id = b.at("id").get<std::string>();
    bid.price = get_number(b, "block entry", "price");
    if (!b.contains("quantities") || !b.at("quantities").is_object())
      throw ParseError("block entry requires an object 'quantities'");
    for (const auto& [key, value] : b.at("quantities").items()) {
      size_t pos = 0;
      int t = 0;
      try {
        t = std::stoi(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != key.size())
        throw ParseError("block quantities keys must be period indices, got '" +
                         key + "'");
      if (!value.is_number())
        throw ParseError("block quantities values must be numbers");
      bid.quantities[t] = value.get<double>();
    }
    inst.blocks.push_back(std::move(bid));
  }
  return inst;
}

std::string render_instance(const Instance& inst) {
  json doc;
  doc["periods"] = inst.periods;
  doc["p_min"] = inst.bounds.p_min;
  doc["p_max"] = inst.bounds.p_max;
  json hourly = json::array();
  for (int t = 0; t < inst.num_periods(); ++t) {
    for (Direction d : {Direction::Supply, Direction::Demand}) {
      for (const Segment& s : inst.segments(t, d)) {
        hourly.push_back({{"period", t},
                          {"direction", to_string(d)},
                          {"p0", s.p0},
                          {"p1", s.p1},
                          {"q", s.q}});
      }
    }
  }
  doc["hourly"] = std::move(hourly);
  json blocks = json::array();
  for (const BlockBid& b : inst.blocks) {
    json q = json::object();
    for (const auto& [t, v] : b.quantities) q[std::to_string(t)] = v;
    blocks.push_back(
        {{"id", b.id}, {"price", b.price}, {"quantities", std::move(q)}});
  }
  doc["blocks"] = std::move(blocks);
  return doc.dump(2) + "\n";
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write instance file: " + path);
  out << render_instance(inst);
}

}  // namespace mcbench
