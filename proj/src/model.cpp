#include "nbl/model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nbl {

const char* property_name(Property p) {
  switch (p) {
    case Property::N: return "n";
    case Property::R: return "r";
    case Property::I: return "i";
    case Property::S: return "s";
    case Property::C: return "c";
    case Property::D: return "d";
    case Property::T: return "t";
    case Property::B: return "b";
    case Property::Four: return "4";
    case Property::Five: return "5";
    case Property::Monotone: return "monotone";
    case Property::QuasiFilter: return "quasi-filter";
    case Property::Filter: return "filter";
  }
  return "?";
}

Property property_from_name(const std::string& name) {
  static const std::map<std::string, Property> table = {
      {"n", Property::N}, {"r", Property::R}, {"i", Property::I},
      {"s", Property::S}, {"c", Property::C}, {"d", Property::D},
      {"t", Property::T}, {"b", Property::B}, {"4", Property::Four},
      {"5", Property::Five}, {"monotone", Property::Monotone},
      {"quasi-filter", Property::QuasiFilter}, {"filter", Property::Filter}};
  auto it = table.find(name);
  if (it == table.end()) throw ModelError("unknown property '" + name + "'");
  return it->second;
}

PropertySet parse_property_set(const std::string& names) {
  PropertySet out;
  if (names.empty() || names == "all") return out;
  std::stringstream ss(names);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(property_from_name(part));
  }
  return out;
}

NeighborhoodFrame::NeighborhoodFrame(std::vector<std::string> states,
                                     std::vector<std::vector<StateSet>> neighborhoods)
    : states_(std::move(states)), nbhd_(std::move(neighborhoods)) {
  if (states_.empty()) throw ModelError("frame needs at least one state");
  if (static_cast<int>(states_.size()) > kMaxStates)
    throw ModelError("frame exceeds the " + std::to_string(kMaxStates) + "-state cap");
  if (nbhd_.size() != states_.size())
    throw ModelError("neighborhood map must cover every state exactly once");
  std::set<std::string> seen(states_.begin(), states_.end());
  if (seen.size() != states_.size()) throw ModelError("duplicate state labels");
  StateSet full = StateSet::full(size());
  for (auto& coll : nbhd_) {
    std::sort(coll.begin(), coll.end());
    if (std::adjacent_find(coll.begin(), coll.end()) != coll.end())
      throw ModelError("duplicate neighborhood in a collection");
    for (StateSet x : coll)
      if (!x.subset_of(full)) throw ModelError("neighborhood mentions states outside S");
  }
}

int NeighborhoodFrame::state_index(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (states_[i] == label) return i;
  throw ModelError("unknown state label '" + label + "'");
}

bool NeighborhoodFrame::contains(int s, StateSet x) const {
  const auto& coll = nbhd_[s];
  return std::binary_search(coll.begin(), coll.end(), x);
}

NeighborhoodModel::NeighborhoodModel(NeighborhoodFrame frame,
                                     std::map<std::string, StateSet> valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  StateSet full = frame_.universe();
  for (const auto& [atom, set] : valuation_)
    if (!set.subset_of(full))
      throw ModelError("valuation of '" + atom + "' mentions states outside S");
}

StateSet NeighborhoodModel::valuation(const std::string& atom) const {
  auto it = valuation_.find(atom);
  return it == valuation_.end() ? StateSet::empty() : it->second;
}

namespace {

bool check_basic(const NeighborhoodFrame& fr, Property p) {
  const int n = fr.size();
  const StateSet full = fr.universe();
  switch (p) {
    case Property::N:
      for (int s = 0; s < n; ++s)
        if (!fr.contains(s, full)) return false;
      return true;
    case Property::R:
      for (int s = 0; s < n; ++s) {
        if (fr.neighborhoods(s).empty()) continue;  // vacuously holds
        if (!fr.contains(s, core(fr, s))) return false;
      }
      return true;
    case Property::I:
      for (int s = 0; s < n; ++s)
        for (StateSet x : fr.neighborhoods(s))
          for (StateSet y : fr.neighborhoods(s))
            if (!fr.contains(s, x.intersect(y))) return false;
      return true;
    case Property::S:
      for (int s = 0; s < n; ++s)
        for (StateSet x : fr.neighborhoods(s)) {
          // enumerate supersets of x within the universe
          std::uint32_t rest = full.bits & ~x.bits;
          for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            if (!fr.contains(s, StateSet(x.bits | sub))) return false;
            if (sub == 0) break;
          }
        }
      return true;
    case Property::C:
      for (int s = 0; s < n; ++s)
        for (StateSet x : fr.neighborhoods(s))
          if (!fr.contains(s, x.complement(n))) return false;
      return true;
    case Property::D:
      for (int s = 0; s < n; ++s)
        for (StateSet x : fr.neighborhoods(s))
          if (fr.contains(s, x.complement(n))) return false;
      return true;
    case Property::T:
      for (int s = 0; s < n; ++s)
        for (StateSet x : fr.neighborhoods(s))
          if (!x.contains(s)) return false;
      return true;
    case Property::B:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t xb = 0; xb <= full.bits; ++xb) {
          StateSet x(xb);
          if (!x.contains(s)) continue;
          StateSet image;
          for (int u = 0; u < n; ++u)
            if (!fr.contains(u, x.complement(n))) image = image.with(u);
          if (!fr.contains(s, image)) return false;
        }
      return true;
    case Property::Four:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t xb = 0; xb <= full.bits; ++xb) {
          StateSet x(xb);
          if (!fr.contains(s, x)) continue;
          StateSet image;
          for (int u = 0; u < n; ++u)
            if (fr.contains(u, x)) image = image.with(u);
          if (!fr.contains(s, image)) return false;
        }
      return true;
    case Property::Five:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t xb = 0; xb <= full.bits; ++xb) {
          StateSet x(xb);
          if (fr.contains(s, x)) continue;
          StateSet image;
          for (int u = 0; u < n; ++u)
            if (!fr.contains(u, x)) image = image.with(u);
          if (!fr.contains(s, image)) return false;
        }
      return true;
    default:
      throw ModelError("derived property passed to check_basic");
  }
}

}  // namespace

bool has_property(const NeighborhoodFrame& frame, Property p) {
  switch (p) {
    case Property::Monotone:
      return check_basic(frame, Property::S);
    case Property::QuasiFilter:
      return check_basic(frame, Property::I) && check_basic(frame, Property::S);
    case Property::Filter:
      return has_property(frame, Property::QuasiFilter) &&
             check_basic(frame, Property::N);
    default:
      return check_basic(frame, p);
  }
}

bool has_properties(const NeighborhoodFrame& frame, const PropertySet& props) {
  for (Property p : props)
    if (!has_property(frame, p)) return false;
  return true;
}

NeighborhoodFrame supplementation(const NeighborhoodFrame& frame) {
  const int n = frame.size();
  const StateSet full = frame.universe();
  std::vector<std::vector<StateSet>> closed(n);
  for (int s = 0; s < n; ++s) {
    std::set<StateSet> acc;
    for (StateSet x : frame.neighborhoods(s)) {
      std::uint32_t rest = full.bits & ~x.bits;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        acc.insert(StateSet(x.bits | sub));
        if (sub == 0) break;
      }
    }
    closed[s].assign(acc.begin(), acc.end());
  }
  return NeighborhoodFrame(frame.states(), std::move(closed));
}

NeighborhoodModel supplementation(const NeighborhoodModel& model) {
  return NeighborhoodModel(supplementation(model.frame()), model.valuation_map());
}

StateSet core(const NeighborhoodFrame& frame, int s) {
  StateSet acc = frame.universe();
  for (StateSet x : frame.neighborhoods(s)) acc = acc.intersect(x);
  return acc;
}

// ---------------------------------------------------------------------------
// JSON model files

namespace {

using json = nlohmann::ordered_json;

StateSet set_from_labels(const json& arr, const NeighborhoodFrame& fr,
                         const char* what) {
  if (!arr.is_array()) throw ModelError(std::string(what) + " must be an array of state labels");
  StateSet out;
  for (const auto& el : arr) {
    if (!el.is_string()) throw ModelError(std::string(what) + " must contain state labels");
    out = out.with(fr.state_index(el.get<std::string>()));
  }
  return out;
}

json labels_of_set(StateSet x, const NeighborhoodFrame& fr) {
  json arr = json::array();
  for (int i = 0; i < fr.size(); ++i)
    if (x.contains(i)) arr.push_back(fr.label(i));
  return arr;
}

NeighborhoodModel model_from_parsed(const json& doc) {
  if (!doc.is_object()) throw ModelError("model file must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "states" && key != "neighborhoods" && key != "valuation")
      throw ModelError("unknown key '" + key + "' in model file");
  if (!doc.contains("states") || !doc.contains("neighborhoods"))
    throw ModelError("model file needs 'states' and 'neighborhoods'");

  std::vector<std::string> states;
  for (const auto& el : doc["states"]) {
    if (!el.is_string()) throw ModelError("'states' must be an array of labels");
    states.push_back(el.get<std::string>());
  }
  std::sort(states.begin(), states.end());
  // A label-only frame first, to resolve labels while reading the collections.
  NeighborhoodFrame skeleton(states, std::vector<std::vector<StateSet>>(states.size()));

  const json& nb = doc["neighborhoods"];
  if (!nb.is_object()) throw ModelError("'neighborhoods' must be an object keyed by state");
  std::vector<std::vector<StateSet>> collections(states.size());
  for (const auto& [label, sets] : nb.items()) {
    int idx = skeleton.state_index(label);
    if (!sets.is_array()) throw ModelError("neighborhood collection must be an array of sets");
    for (const auto& one : sets)
      collections[idx].push_back(set_from_labels(one, skeleton, "neighborhood"));
  }
  NeighborhoodFrame frame(states, std::move(collections));

  std::map<std::string, StateSet> valuation;
  if (doc.contains("valuation")) {
    const json& val = doc["valuation"];
    if (!val.is_object()) throw ModelError("'valuation' must be an object keyed by atom");
    for (const auto& [atom, set] : val.items())
      valuation[atom] = set_from_labels(set, frame, "valuation");
  }
  return NeighborhoodModel(std::move(frame), std::move(valuation));
}

json model_to_doc(const NeighborhoodModel& model, bool with_valuation) {
  const NeighborhoodFrame& fr = model.frame();
  json doc;
  doc["states"] = json::array();
  for (const auto& s : fr.states()) doc["states"].push_back(s);
  json nb = json::object();
  for (int s = 0; s < fr.size(); ++s) {
    json coll = json::array();
    for (StateSet x : fr.neighborhoods(s)) coll.push_back(labels_of_set(x, fr));
    nb[fr.label(s)] = std::move(coll);
  }
  doc["neighborhoods"] = std::move(nb);
  if (with_valuation) {
    json val = json::object();
    for (const auto& [atom, set] : model.valuation_map())
      val[atom] = labels_of_set(set, fr);
    doc["valuation"] = std::move(val);
  }
  return doc;
}

}  // namespace

NeighborhoodModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("invalid JSON: ") + e.what());
  }
  return model_from_parsed(doc);
}

NeighborhoodModel model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string model_to_json(const NeighborhoodModel& model) {
  return model_to_doc(model, true).dump(2) + "\n";
}

std::string frame_to_json(const NeighborhoodFrame& frame) {
  NeighborhoodModel bare(frame, {});
  return model_to_doc(bare, false).dump(2) + "\n";
}

}  // namespace nbl
