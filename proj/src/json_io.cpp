#include "eawg/json_io.hpp"

#include <algorithm>
#include <set>

#include "eawg/error.hpp"

namespace eawg {

namespace {

const Json &field(const Json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::ParseError, std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const Json &j, const char *key) {
  const Json &v = field(j, key);
  if (!v.is_number_integer()) throw Error(Errc::ParseError, std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<std::vector<int>> supp_field(const Json &j, const char *key) {
  const Json &v = field(j, key);
  const std::string bad = std::string("field \"") + key + "\" must be a list of integer lists";
  if (!v.is_array()) throw Error(Errc::ParseError, bad);
  std::vector<std::vector<int>> out;
  for (const Json &member : v) {
    if (!member.is_array()) throw Error(Errc::ParseError, bad);
    std::vector<int> subset;
    for (const Json &x : member) {
      if (!x.is_number_integer()) throw Error(Errc::ParseError, bad);
      subset.push_back(x.get<int>());
    }
    out.push_back(std::move(subset));
  }
  return out;
}

}  // namespace

RawSpec raw_spec_from_json(const Json &j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "spec document must be a JSON object");
  static const std::set<std::string> known{"type", "rank", "nullity", "twist", "supp1", "supp2", "label"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw Error(Errc::ParseError, "unknown field \"" + it.key() + "\"");
  RawSpec raw;
  const Json &type = field(j, "type");
  if (!type.is_string()) throw Error(Errc::ParseError, "field \"type\" must be a string");
  raw.type = type.get<std::string>();
  if (j.contains("rank")) {
    raw.rank = int_field(j, "rank");
  } else if (raw.type == "F4" || raw.type == "G2") {
    raw.rank = raw.type == "F4" ? 4 : 2;
  } else {
    throw Error(Errc::ParseError, "missing field \"rank\"");
  }
  raw.nullity = int_field(j, "nullity");
  raw.twist = int_field(j, "twist");
  raw.supp1 = supp_field(j, "supp1");
  raw.supp2 = supp_field(j, "supp2");
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw Error(Errc::ParseError, "field \"label\" must be a string");
    raw.label = j["label"].get<std::string>();
  }
  return raw;
}

RawSpec parse_spec_json(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(Errc::ParseError, e.what());
  }
  return raw_spec_from_json(j);
}

Json to_json(const RawSpec &raw) {
  Json j;
  j["type"] = raw.type;
  j["rank"] = raw.rank;
  j["nullity"] = raw.nullity;
  j["twist"] = raw.twist;
  j["supp1"] = raw.supp1;
  j["supp2"] = raw.supp2;
  if (!raw.label.empty()) j["label"] = raw.label;
  return j;
}

Json to_json(const EarsSpec &spec) { return to_json(to_raw(spec)); }

Json supp_to_json(const std::vector<SubsetJ> &supp) {
  Json j = Json::array();
  for (SubsetJ J : supp) j.push_back(J.elements());
  return j;
}

Json to_json(const CorollaryNote &note) {
  return Json{{"name", note.name}, {"verdict", note.verdict}, {"detail", note.detail}};
}

Json to_json(const DecisionReport &report) {
  Json j;
  j["inc"] = report.inc;
  j["n0"] = report.n0;
  j["pbc"] = report.has_pbc;
  Json w = Json::array();
  for (const auto &c : report.witnesses) w.push_back(supp_to_json(c.support()));
  j["witnesses"] = std::move(w);
  Json notes = Json::array();
  for (const auto &n : report.corollary_notes) notes.push_back(to_json(n));
  j["corollaries"] = std::move(notes);
  return j;
}

Json to_json(const CenterStructure &center) {
  return Json{{"free_rank", center.free_rank}, {"torsion", center.torsion}};
}

Json to_json(const VerificationReport &report) {
  Json j = Json::array();
  for (const auto &c : report.checks) {
    Json item{{"identity", c.identity}, {"indices", c.indices}, {"pass", c.pass}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    j.push_back(std::move(item));
  }
  return j;
}

Json to_json(const OrbitCoverReport &report) {
  Json unreached = Json::array();
  for (const auto &r : report.unreached) unreached.push_back(to_string(r));
  return Json{{"height_bound", report.height_bound},
              {"targets", report.target_count},
              {"reached", report.reached_count},
              {"unreached", std::move(unreached)}};
}

Json to_json(const FreeCenterReport &report) {
  return Json{{"generators", report.generators},
              {"rank", report.rank},
              {"products_checked", report.products_checked},
              {"trivial_products", report.trivial_products},
              {"pass", report.passed()}};
}

namespace {

bool inline_array(const Json &j) {
  return std::none_of(j.begin(), j.end(), [](const Json &x) {
    return x.is_object() || (x.is_array() && !inline_array(x));
  });
}

void pretty_into(const Json &j, int indent, int depth, std::string &out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + Json(it.key()).dump() + ": ";
      pretty_into(it.value(), indent, depth + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else if (j.is_array() && !j.empty() && !inline_array(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty_into(j[i], indent, depth + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string pretty(const Json &j, int indent) {
  std::string out;
  pretty_into(j, indent, 0, out);
  return out;
}

}  // namespace eawg
