// Copyright 2026 The pivotlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "pivotlab/build_d.hpp"
#include "pivotlab/mdp.hpp"
#include "pivotlab/names.hpp"

namespace pivotlab {

using Json = nlohmann::ordered_json;

// Process files:
//   {"vertices":[{"id":0,"kind":"agent","label":"t"}, ...],
//    "edges":[{"src":0,"dst":1,"payload":"0","bland":1}, ...],
//    "sink":10}
// Rationals serialize as "num/den" with "/1" omitted. Vertices appear by id,
// edges sorted by (src, dst); emit(parse(emit(x))) == emit(x) byte for byte.

inline Json mdp_to_json(const Mdp& mdp) {
  Json out;
  out["vertices"] = Json::array();
  for (int v = 0; v < mdp.vertex_count(); ++v) {
    Json jv;
    jv["id"] = v;
    jv["kind"] = mdp.kind(v) == VertexKind::Agent ? "agent" : "randomization";
    jv["label"] = vertex_name(mdp, v);
    out["vertices"].push_back(std::move(jv));
  }
  out["edges"] = Json::array();
  std::vector<const Edge*> edges;
  for (int v = 0; v < mdp.vertex_count(); ++v)
    for (const Edge& e : mdp.out_edges(v)) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) {
    return std::pair(a->src, a->dst) < std::pair(b->src, b->dst);
  });
  for (const Edge* e : edges) {
    Json je;
    je["src"] = e->src;
    je["dst"] = e->dst;
    je["payload"] = format_rational(e->payload);
    if (e->bland.has_value()) je["bland"] = *e->bland;
    out["edges"].push_back(std::move(je));
  }
  out["sink"] = mdp.sink();
  return out;
}

namespace detail {

inline VertexLabel parse_vertex_label(const std::string& text,
                                      const std::map<std::string, int>& ids) {
  if (text == "t") return {VertexRole::Transport};
  if (text == "d") return {VertexRole::Dummy};
  if (text == "s") return {VertexRole::Sink};
  if ((text[0] == 'a' || text[0] == 'b') && text.size() >= 2 && std::isdigit(text[1])) {
    int level = std::stoi(text.substr(1));
    return {text[0] == 'a' ? VertexRole::LevelA : VertexRole::LevelB, level};
  }
  if ((text[0] == 'x' || text[0] == 'y' || text[0] == 'z') && text.size() > 3 && text[1] == '(' &&
      text.back() == ')') {
    const std::string inner = text.substr(2, text.size() - 3);
    auto arrow = inner.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("bad gadget label: " + text);
    auto src = ids.find(inner.substr(0, arrow));
    auto dst = ids.find(inner.substr(arrow + 2));
    if (src == ids.end() || dst == ids.end())
      throw std::invalid_argument("gadget label references unknown vertex: " + text);
    VertexRole role = text[0] == 'x'   ? VertexRole::GadgetX
                      : text[0] == 'y' ? VertexRole::GadgetY
                                       : VertexRole::GadgetZ;
    return {role, 0, src->second, dst->second};
  }
  throw std::invalid_argument("unknown vertex label: " + text);
}

}  // namespace detail

inline Mdp mdp_from_json(const Json& in) {
  MdpBuilder builder;
  // First pass: base labels, so gadget labels can resolve their references.
  std::map<std::string, int> ids;
  int expected = 0;
  for (const Json& jv : in.at("vertices")) {
    if (jv.at("id").get<int>() != expected++)
      throw std::invalid_argument("vertex ids must be dense and ordered");
    const std::string label = jv.at("label").get<std::string>();
    if (label.find('(') == std::string::npos) ids[label] = jv.at("id").get<int>();
  }
  for (const Json& jv : in.at("vertices")) {
    const std::string kind = jv.at("kind").get<std::string>();
    if (kind != "agent" && kind != "randomization")
      throw std::invalid_argument("unknown vertex kind: " + kind);
    builder.add_vertex(kind == "agent" ? VertexKind::Agent : VertexKind::Randomization,
                       detail::parse_vertex_label(jv.at("label").get<std::string>(), ids));
  }
  for (const Json& je : in.at("edges")) {
    std::optional<int> bland;
    if (je.contains("bland")) bland = je.at("bland").get<int>();
    builder.add_edge(je.at("src").get<int>(), je.at("dst").get<int>(),
                     parse_rational(je.at("payload").get<std::string>()), bland);
  }
  builder.set_sink(in.at("sink").get<int>());
  return std::move(builder).build();
}

// Gadget maps: {"a1->b1":{"x":11,"y":12,"z":13,"p":"1/262144"}, ...}
inline Json gadgets_to_json(const Mdp& d, const GadgetMap& gadgets) {
  Json out;
  for (const auto& [base_edge, g] : gadgets.gadgets) {
    Json jg;
    jg["x"] = g.x;
    jg["y"] = g.y;
    jg["z"] = g.z;
    jg["p"] = format_rational(g.p);
    out[vertex_name(d, base_edge.first) + "->" + vertex_name(d, base_edge.second)] = std::move(jg);
  }
  return out;
}

inline GadgetMap gadgets_from_json(const Mdp& d, const Json& in) {
  std::map<std::string, int> ids;
  for (int v = 0; v < d.vertex_count(); ++v) ids[vertex_name(d, v)] = v;
  GadgetMap map;
  map.base_vertex_count = d.vertex_count();
  for (const auto& [key, jg] : in.items()) {
    auto arrow = key.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("bad gadget key: " + key);
    const int src = ids.at(key.substr(0, arrow));
    const int dst = ids.at(key.substr(arrow + 2));
    Gadget g;
    g.x = jg.at("x").get<int>();
    g.y = jg.at("y").get<int>();
    g.z = jg.at("z").get<int>();
    g.p = parse_rational(jg.at("p").get<std::string>());
    map.base_vertex_count = std::min(map.base_vertex_count, std::min(g.x, std::min(g.y, g.z)));
    map.gadgets.emplace(std::pair(src, dst), g);
    map.of_x.emplace(g.x, std::pair(src, dst));
    map.of_z.emplace(g.z, std::pair(src, dst));
  }
  return map;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

/// Writes via a temporary file and a rename, so readers never see partial
/// output.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Json::parse(in);
}

}  // namespace pivotlab
