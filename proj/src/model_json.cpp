#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "skewfa/model.hpp"

namespace skewfa {

namespace {

using nlohmann::json;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::invalid_argument(std::string("params_to_json: non-finite value in ") + what);
}

json vec_to_json(const Eigen::VectorXd& v, const char* what) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) {
    require_finite(v[i], what);
    arr.push_back(v[i]);
  }
  return arr;
}

json mat_to_json(const Eigen::MatrixXd& m, const char* what) {
  json data = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      require_finite(m(i, j), what);
      data.push_back(m(i, j));
    }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Eigen::VectorXd vec_from_json(const json& j, const char* what) {
  if (!j.is_array())
    throw std::invalid_argument(std::string("params_from_json: ") + what + " must be an array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

Eigen::MatrixXd mat_from_json(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw std::invalid_argument(std::string("params_from_json: ") + what +
                                " must be {rows, cols, data}");
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (static_cast<int>(data.size()) != rows * cols)
    throw std::invalid_argument(std::string("params_from_json: ") + what +
                                " data length mismatch");
  Eigen::MatrixXd m(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = data[k++].get<double>();
  return m;
}

}  // namespace

std::string params_to_json(const ModelSpec& spec, const MixtureParams& params,
                           int indent) {
  params.validate(spec);
  json doc;
  doc["spec"] = {{"formulation", to_string(spec.formulation)},
                 {"family", to_string(spec.family)},
                 {"g", spec.g}, {"p", spec.p}, {"q", spec.q},
                 {"r", spec.r}, {"s", spec.s}};
  json comps = json::array();
  for (const auto& c : params.components) {
    require_finite(c.pi, "pi");
    json jc;
    jc["pi"] = c.pi;
    jc["mu"] = vec_to_json(c.mu, "mu");
    jc["B"] = mat_to_json(c.B, "B");
    jc["d"] = vec_to_json(c.d, "d");
    jc["delta0"] = mat_to_json(c.delta0, "delta0");
    if (spec.formulation == Formulation::SFE)
      jc["delta1"] = mat_to_json(c.delta1, "delta1");
    if (c.nu) {
      require_finite(*c.nu, "nu");
      jc["nu"] = *c.nu;
    }
    comps.push_back(jc);
  }
  doc["components"] = comps;
  return doc.dump(indent);
}

std::pair<ModelSpec, MixtureParams> params_from_json(const std::string& text) {
  json doc = json::parse(text);
  if (!doc.contains("spec") || !doc.contains("components"))
    throw std::invalid_argument("params_from_json: need top-level 'spec' and 'components'");
  const json& js = doc.at("spec");
  ModelSpec spec;
  spec.formulation = formulation_from_string(js.at("formulation").get<std::string>());
  spec.family = family_from_string(js.at("family").get<std::string>());
  spec.g = js.at("g").get<int>();
  spec.p = js.at("p").get<int>();
  spec.q = js.at("q").get<int>();
  spec.r = js.at("r").get<int>();
  spec.s = js.value("s", 0);
  MixtureParams params;
  for (const json& jc : doc.at("components")) {
    ComponentParams c;
    c.pi = jc.at("pi").get<double>();
    c.mu = vec_from_json(jc.at("mu"), "mu");
    c.B = mat_from_json(jc.at("B"), "B");
    c.d = vec_from_json(jc.at("d"), "d");
    c.delta0 = mat_from_json(jc.at("delta0"), "delta0");
    if (jc.contains("delta1")) c.delta1 = mat_from_json(jc.at("delta1"), "delta1");
    if (jc.contains("nu")) c.nu = jc.at("nu").get<double>();
    params.components.push_back(std::move(c));
  }
  params.validate(spec);
  return {spec, params};
}

}  // namespace skewfa
