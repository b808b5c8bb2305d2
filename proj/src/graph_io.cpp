#include <sstream>

#include "hhop/graph.hpp"
#include "json.hpp"

namespace hhop {

using nlohmann::json;

std::string to_json(const BWGraph& g, int orientation_sign) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    json jv;
    jv["id"] = v;
    jv["color"] = g.color[v] == Color::white ? "white" : "black";
    if (g.white_label[v] > 0) jv["label"] = g.white_label[v];
    if (g.start_he[v] >= 0) jv["start"] = g.start_he[v];
    j["vertices"].push_back(jv);
  }
  j["half_edges"] = json::array();
  for (int h = 0; h < g.num_half_edges(); ++h) {
    json jh;
    jh["id"] = h;
    if (g.source[h] >= 0)
      jh["source"] = g.source[h];
    else
      jh["source"] = nullptr;
    jh["partner"] = g.partner[h];
    if (g.leaf_label[h] > 0) jh["leaf_label"] = g.leaf_label[h];
    if (g.second_label[h] > 0) jh["second_label"] = g.second_label[h];
    j["half_edges"].push_back(jh);
  }
  j["cyclic_order"] = json::object();
  for (int v = 0; v < g.num_vertices(); ++v)
    j["cyclic_order"][std::to_string(v)] = g.spokes_of(v);
  j["orientation_sign"] = orientation_sign;
  return j.dump(2);
}

std::pair<BWGraph, int> from_json(const std::string& text) {
  json j = json::parse(text);
  BWGraph g;
  int nv = static_cast<int>(j.at("vertices").size());
  int nh = static_cast<int>(j.at("half_edges").size());
  g.color.assign(nv, Color::black);
  g.white_label.assign(nv, 0);
  g.start_he.assign(nv, -1);
  g.source.assign(nh, -1);
  g.partner.assign(nh, -1);
  g.next_he.assign(nh, -1);
  g.leaf_label.assign(nh, 0);
  g.second_label.assign(nh, 0);
  for (const auto& jv : j.at("vertices")) {
    int v = jv.at("id").get<int>();
    if (v < 0 || v >= nv) throw GraphError("vertex id out of range");
    g.color[v] = jv.at("color").get<std::string>() == "white" ? Color::white
                                                              : Color::black;
    if (jv.contains("label")) g.white_label[v] = jv.at("label").get<int>();
    if (jv.contains("start")) g.start_he[v] = jv.at("start").get<int>();
  }
  for (const auto& jh : j.at("half_edges")) {
    int h = jh.at("id").get<int>();
    if (h < 0 || h >= nh) throw GraphError("half-edge id out of range");
    g.source[h] = jh.at("source").is_null() ? -1 : jh.at("source").get<int>();
    g.partner[h] = jh.at("partner").get<int>();
    if (jh.contains("leaf_label")) g.leaf_label[h] = jh.at("leaf_label").get<int>();
    if (jh.contains("second_label"))
      g.second_label[h] = jh.at("second_label").get<int>();
  }
  for (auto it = j.at("cyclic_order").begin(); it != j.at("cyclic_order").end();
       ++it) {
    int v = std::stoi(it.key());
    const auto& cyc = it.value();
    for (size_t i = 0; i < cyc.size(); ++i) {
      int h = cyc[i].get<int>();
      if (h < 0 || h >= nh || g.source[h] != v)
        throw GraphError("cyclic order names a half-edge away from its vertex");
      g.next_he[h] = cyc[(i + 1) % cyc.size()].get<int>();
    }
  }
  for (int h = 0; h < nh; ++h)
    if (g.source[h] < 0) g.next_he[h] = h;
  for (int v = 0; v < nv; ++v)
    if (g.color[v] == Color::black && g.valence(v) < 3) g.allow_low_valence = true;
  int sign = j.value("orientation_sign", 1);
  if (sign != 1 && sign != -1) throw GraphError("orientation_sign must be +-1");
  g.check();
  return {g, sign};
}

std::string to_dot(const BWGraph& g) {
  std::ostringstream os;
  os << "graph bw {\n  node [shape=point];\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.color[v] == Color::white) {
      os << "  v" << v << " [shape=circle, label=\"" << g.white_label[v]
         << "\"];\n";
    } else {
      os << "  v" << v << " [shape=point];\n";
    }
  }
  int leaf_node = 0;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.partner[h] == h) {
      os << "  l" << leaf_node << " [shape=none, label=\""
         << (g.leaf_label[h] > 0 ? std::to_string(g.leaf_label[h]) : "")
         << "\"];\n";
      if (g.source[h] >= 0) {
        os << "  v" << g.source[h] << " -- l" << leaf_node;
        if (g.start_he[g.source[h]] == h) os << " [style=bold, color=red]";
        os << ";\n";
      }
      ++leaf_node;
    } else if (g.partner[h] > h) {
      os << "  v" << g.source[h] << " -- v" << g.source[g.partner[h]];
      bool st = (g.source[h] >= 0 && g.start_he[g.source[h]] == h) ||
                (g.source[g.partner[h]] >= 0 &&
                 g.start_he[g.source[g.partner[h]]] == g.partner[h]);
      if (st) os << " [style=bold, color=red]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace hhop
