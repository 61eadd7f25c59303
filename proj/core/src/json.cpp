#include <json.hpp>

#include "odg/error.hpp"
#include "odg/serialize.hpp"

namespace odg {

using Json = nlohmann::ordered_json;

namespace {

Json word_json(WordIndex w) { return w == kRoot ? Json("ROOT") : Json(w); }

WordIndex word_from(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "ROOT") return kRoot;
    throw FormatError(0, "expected word index or \"ROOT\"");
  }
  const auto w = j.get<WordIndex>();
  if (w < 0) throw FormatError(0, "negative word index");
  return w;
}

WordIndex word_key(const std::string& key) {
  if (key == "ROOT") return kRoot;
  std::size_t used = 0;
  const int w = std::stoi(key, &used);
  if (used != key.size() || w < 0) throw FormatError(0, "bad word key '" + key + "'");
  return w;
}

}  // namespace

std::string render_json(const DependencyStructure& ds, int indent) {
  Json j;
  Json tokens = Json::array();
  for (const auto& t : ds.tree.words) {
    Json tok;
    tok["index"] = t.index;
    tok["form"] = t.form;
    auto cls = ds.tree.classes.find(t.index);
    tok["class"] = cls == ds.tree.classes.end() ? Json() : Json(cls->second);
    tok["entry"] = t.entry;
    Json feats = Json::object();
    if (auto f = ds.features.find(t.index); f != ds.features.end()) {
      for (const auto& [attr, value] : f->second) feats[attr] = value;
    }
    tok["features"] = std::move(feats);
    tokens.push_back(std::move(tok));
  }
  j["tokens"] = std::move(tokens);
  j["root"] = ds.tree.root;
  j["root_entry"] = ds.tree.root_entry;
  Json edges = Json::array();
  for (const auto& e : ds.tree.edges) edges.push_back(Json::array({e.head, e.dtype, e.dependent}));
  j["edges"] = std::move(edges);
  Json domains = Json::object();
  for (const auto& d : ds.domains.domains) domains[d.id] = Json(std::vector<WordIndex>(d.members.begin(), d.members.end()));
  j["domains"] = std::move(domains);
  Json assoc = Json::object();
  for (const auto& [w, seq] : ds.domains.assoc) {
    Json list = Json::array();
    for (const auto& ref : seq) list.push_back(Json::array({ref.slot, ref.id}));
    assoc[word_label(w)] = std::move(list);
  }
  j["assoc"] = std::move(assoc);
  Json positional = Json::object();
  for (const auto& [w, p] : ds.positional) positional[word_label(w)] = word_json(p);
  j["positional"] = std::move(positional);
  return j.dump(indent);
}

DependencyStructure parse_structure_json(std::string_view text) {
  DependencyStructure ds;
  try {
    const Json j = Json::parse(text);
    for (const auto& tok : j.at("tokens")) {
      WordToken t;
      t.index = word_from(tok.at("index"));
      t.form = tok.at("form").get<std::string>();
      t.entry = tok.at("entry").get<std::size_t>();
      if (!tok.at("class").is_null()) ds.tree.classes[t.index] = tok.at("class").get<std::string>();
      auto& fs = ds.features[t.index];
      for (const auto& [attr, value] : tok.at("features").items()) fs[attr] = value.get<std::string>();
      ds.tree.words.push_back(std::move(t));
    }
    ds.tree.root = word_from(j.at("root"));
    ds.tree.root_entry = j.at("root_entry").get<std::size_t>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw FormatError(0, "edge must be [head, dtype, dependent]");
      ds.tree.edges.push_back({word_from(e[0]), word_from(e[2]), e[1].get<std::string>()});
    }
    for (const auto& [id, members] : j.at("domains").items()) {
      OrderDomain d{id, {}};
      for (const auto& m : members) d.members.insert(word_from(m));
      ds.domains.domains.push_back(std::move(d));
    }
    for (const auto& [key, list] : j.at("assoc").items()) {
      auto& seq = ds.domains.assoc[word_key(key)];
      for (const auto& ref : list) {
        if (!ref.is_array() || ref.size() != 2) throw FormatError(0, "assoc entry must be [slot, id]");
        seq.push_back({ref[0].get<std::string>(), ref[1].get<std::string>()});
      }
    }
    for (const auto& [key, head] : j.at("positional").items()) ds.positional[word_key(key)] = word_from(head);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(0, std::string("malformed structure JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw FormatError(0, "malformed word key");
  } catch (const std::out_of_range&) {
    throw FormatError(0, "word key out of range");
  }
  return ds;
}

}  // namespace odg
