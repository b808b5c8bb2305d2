#include "hhop/algebra.hpp"
#include "json.hpp"

namespace hhop {

using nlohmann::json;

std::string algebra_to_json(const FrobeniusAlgebra& a) {
  json j;
  j["name"] = a.name;
  j["basis"] = a.basis;
  j["degree"] = a.degree;
  json unit = json::array(), counit = json::array();
  for (const Int& v : a.unit) unit.push_back(v.get_str());
  for (const Int& v : a.counit) counit.push_back(v.get_str());
  j["unit"] = unit;
  j["counit"] = counit;
  json prod = json::array();
  for (int i = 0; i < a.dim(); ++i)
    for (int jj = 0; jj < a.dim(); ++jj)
      for (int k = 0; k < a.dim(); ++k)
        if (a.product[i][jj][k] != 0)
          prod.push_back({{"i", i}, {"j", jj}, {"k", k},
                          {"c", a.product[i][jj][k].get_str()}});
  j["product"] = prod;
  json cop = json::array();
  for (int i = 0; i < a.dim(); ++i)
    for (const auto& [jj, k, c] : a.coproduct[i])
      if (c != 0)
        cop.push_back({{"i", i}, {"j", jj}, {"k", k}, {"c", c.get_str()}});
  j["coproduct"] = cop;
  if (!a.internal_diff.empty()) {
    json diff = json::array();
    for (int i = 0; i < a.dim(); ++i)
      for (int jj = 0; jj < a.dim(); ++jj)
        if (a.internal_diff[i][jj] != 0)
          diff.push_back({{"i", i}, {"j", jj},
                          {"c", a.internal_diff[i][jj].get_str()}});
    j["internal_differential"] = diff;
  }
  return j.dump(2);
}

FrobeniusAlgebra algebra_from_json(const std::string& text) {
  json j = json::parse(text);
  FrobeniusAlgebra a;
  a.name = j.value("name", "custom");
  a.basis = j.at("basis").get<std::vector<std::string>>();
  a.degree = j.at("degree").get<std::vector<int>>();
  const int n = a.dim();
  auto get_int = [](const json& v) {
    if (v.is_string()) return Int(v.get<std::string>());
    return Int(v.get<long>());
  };
  for (const auto& v : j.at("unit")) a.unit.push_back(get_int(v));
  for (const auto& v : j.at("counit")) a.counit.push_back(get_int(v));
  a.product.assign(n, std::vector<std::vector<Int>>(n, std::vector<Int>(n, 0)));
  for (const auto& e : j.at("product"))
    a.product[e.at("i").get<int>()][e.at("j").get<int>()][e.at("k").get<int>()] =
        get_int(e.at("c"));
  a.coproduct.resize(n);
  for (const auto& e : j.at("coproduct"))
    a.coproduct[e.at("i").get<int>()].push_back(
        {e.at("j").get<int>(), e.at("k").get<int>(), get_int(e.at("c"))});
  if (j.contains("internal_differential")) {
    a.internal_diff.assign(n, std::vector<Int>(n, 0));
    for (const auto& e : j.at("internal_differential"))
      a.internal_diff[e.at("i").get<int>()][e.at("j").get<int>()] =
          get_int(e.at("c"));
  }
  return a;
}

}  // namespace hhop
