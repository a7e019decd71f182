// Copyright 2026 The mpobe authors
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

#include "mpobe/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mpobe {

namespace {

using nlohmann::json;

double number_field(const json& j, const char* name, double fallback) {
  if (!j.contains(name)) return fallback;
  if (!j[name].is_number())
    throw std::invalid_argument(std::string("model spec: field '") + name +
                                "' must be a number");
  return j[name].get<double>();
}

std::vector<double> number_array(const json& j, const char* name, int count) {
  if (!j.contains(name) || !j[name].is_array() ||
      static_cast<int>(j[name].size()) != count) {
    std::ostringstream msg;
    msg << "model spec: field '" << name << "' must be an array of " << count
        << " numbers";
    throw std::invalid_argument(msg.str());
  }
  std::vector<double> out;
  for (const auto& v : j[name]) {
    if (!v.is_number())
      throw std::invalid_argument(std::string("model spec: field '") + name +
                                  "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Complex complex_field(const json& v, const char* context) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw std::invalid_argument(std::string("model spec: ") + context +
                                " must be a [re, im] pair");
  return Complex(v[0].get<double>(), v[1].get<double>());
}

CVector complex_vector(const json& v, const char* context) {
  if (!v.is_array() || v.empty())
    throw std::invalid_argument(std::string("model spec: ") + context +
                                " must be a non-empty array");
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = complex_field(v[i], context);
  return out;
}

Mpo parse_custom_mpo(const json& j) {
  if (!j.contains("sites") || !j["sites"].is_array() || j["sites"].empty())
    throw std::invalid_argument("model spec: custom model needs a 'sites' array");
  Mpo m;
  for (const auto& site : j["sites"]) {
    if (!site.contains("ops") || !site["ops"].is_array())
      throw std::invalid_argument("model spec: custom site needs an 'ops' grid");
    const auto& ops = site["ops"];
    const auto chi_left = static_cast<Eigen::Index>(ops.size());
    if (chi_left == 0 || !ops[0].is_array())
      throw std::invalid_argument("model spec: custom 'ops' grid is malformed");
    const auto chi_right = static_cast<Eigen::Index>(ops[0].size());
    SiteTensor t = SiteTensor::zeros(chi_left, chi_right);
    for (Eigen::Index r = 0; r < chi_left; ++r) {
      const auto& row = ops[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != chi_right)
        throw std::invalid_argument("model spec: ragged custom 'ops' grid");
      for (Eigen::Index c = 0; c < chi_right; ++c) {
        const auto& cell = row[static_cast<std::size_t>(c)];
        if (!cell.is_array() || cell.size() != 2)
          throw std::invalid_argument(
              "model spec: custom operator entries must be 2x2 grids");
        CMatrix op(2, 2);
        for (int pr = 0; pr < 2; ++pr) {
          const auto& op_row = cell[static_cast<std::size_t>(pr)];
          if (!op_row.is_array() || op_row.size() != 2)
            throw std::invalid_argument(
                "model spec: custom operator entries must be 2x2 grids");
          for (int pc = 0; pc < 2; ++pc)
            op(pr, pc) =
                complex_field(op_row[static_cast<std::size_t>(pc)], "operator entry");
        }
        t.op(r, c) = op;
      }
    }
    m.sites.push_back(std::move(t));
  }
  if (!j.contains("boundary_row") || !j.contains("boundary_col"))
    throw std::invalid_argument(
        "model spec: custom model needs boundary_row and boundary_col");
  m.boundary_row = complex_vector(j["boundary_row"], "boundary_row");
  m.boundary_col = complex_vector(j["boundary_col"], "boundary_col");
  m.label = "custom";
  m.validate();
  return m;
}

} // namespace

ModelSpec parse_model_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model spec: invalid JSON: ") +
                                e.what());
  }
  if (!j.contains("model") || !j["model"].is_string())
    throw std::invalid_argument("model spec: missing or invalid field 'model'");

  ModelSpec spec;
  spec.model = j["model"].get<std::string>();
  spec.zeta = number_field(j, "zeta", 0.0);
  spec.explicit_norm = number_field(j, "N", 0.0);

  if (j.contains("normalization")) {
    const std::string mode = j["normalization"].get<std::string>();
    if (mode == "uniform")
      spec.normalization = NormalizationMode::kUniform;
    else if (mode == "per_site")
      spec.normalization = NormalizationMode::kPerSite;
    else
      throw std::invalid_argument(
          "model spec: field 'normalization' must be uniform|per_site");
  }

  if (spec.model == "custom") {
    spec.custom_mpo = parse_custom_mpo(j);
    spec.length = static_cast<int>(spec.custom_mpo->length());
    return spec;
  }

  if (!j.contains("L") || !j["L"].is_number_integer())
    throw std::invalid_argument("model spec: missing or invalid field 'L'");
  spec.length = j["L"].get<int>();

  if (spec.model == "ising") {
    spec.coupling = number_field(j, "J", 0.0);
    spec.field = number_field(j, "g", 0.0);
  } else if (spec.model == "heisenberg") {
    spec.heisenberg.jx = number_field(j, "JX", 0.0);
    spec.heisenberg.jy = number_field(j, "JY", 0.0);
    spec.heisenberg.jz = number_field(j, "JZ", 0.0);
    spec.heisenberg.gx = number_field(j, "gX", 0.0);
    spec.heisenberg.gy = number_field(j, "gY", 0.0);
    spec.heisenberg.gz = number_field(j, "gZ", 0.0);
  } else if (spec.model == "xy") {
    spec.heisenberg.jx = number_field(j, "JX", 0.0);
    spec.heisenberg.jy = number_field(j, "JY", 0.0);
    spec.heisenberg.gx = number_field(j, "gX", 0.0);
    spec.heisenberg.gy = number_field(j, "gY", 0.0);
  } else if (spec.model == "pauli_product") {
    const auto alpha = number_array(j, "alpha", spec.length);
    const auto beta = number_array(j, "beta", spec.length);
    const auto gamma = number_array(j, "gamma", spec.length);
    const auto delta = number_array(j, "delta", spec.length);
    for (int l = 0; l < spec.length; ++l)
      spec.pauli_sites.push_back(
          {alpha[static_cast<std::size_t>(l)], beta[static_cast<std::size_t>(l)],
           gamma[static_cast<std::size_t>(l)], delta[static_cast<std::size_t>(l)]});
  } else {
    throw std::invalid_argument("model spec: unknown model '" + spec.model + "'");
  }
  return spec;
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model_spec: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_spec(buffer.str());
}

Mpo build_mpo(const ModelSpec& spec) {
  if (spec.model == "custom") {
    if (spec.zeta != 0.0)
      throw std::invalid_argument("build_mpo: custom models carry their own shift");
    return *spec.custom_mpo;
  }
  if (spec.model == "ising")
    return spec.zeta > 0.0
               ? build_ising_shifted(spec.length, spec.coupling, spec.field,
                                     spec.zeta)
               : build_ising(spec.length, spec.coupling, spec.field);
  if (spec.model == "heisenberg") {
    if (spec.zeta != 0.0)
      throw std::invalid_argument(
          "build_mpo: shifted form is provided for ising and pauli_product");
    return build_heisenberg(spec.length, spec.heisenberg);
  }
  if (spec.model == "xy") {
    if (spec.zeta != 0.0)
      throw std::invalid_argument(
          "build_mpo: shifted form is provided for ising and pauli_product");
    return build_xy(spec.length, spec.heisenberg.jx, spec.heisenberg.jy,
                    spec.heisenberg.gx, spec.heisenberg.gy);
  }
  if (spec.model == "pauli_product")
    return build_pauli_product(spec.pauli_sites, spec.zeta);
  throw std::invalid_argument("build_mpo: unknown model '" + spec.model + "'");
}

PauliTermList pauli_terms(const ModelSpec& spec) {
  if (spec.model == "ising") {
    PauliTermList t = pauli_terms_ising(spec.length, spec.coupling, spec.field);
    if (spec.zeta > 0.0) {
      std::vector<PauliTerm> terms = t.terms;
      terms.push_back({spec.zeta, std::string(static_cast<std::size_t>(spec.length), 'I')});
      return make_term_list(std::move(terms), spec.length);
    }
    return t;
  }
  if (spec.model == "heisenberg")
    return pauli_terms_heisenberg(spec.length, spec.heisenberg);
  if (spec.model == "xy")
    return pauli_terms_xy(spec.length, spec.heisenberg.jx, spec.heisenberg.jy,
                          spec.heisenberg.gx, spec.heisenberg.gy);
  if (spec.model == "pauli_product")
    return pauli_terms_pauli_product(spec.pauli_sites, spec.zeta);
  throw std::invalid_argument("pauli_terms: unsupported model '" + spec.model +
                              "'");
}

std::string circuit_to_json(const Circuit& c) {
  nlohmann::ordered_json out;
  out["n_wires"] = c.n_wires;
  out["gates"] = nlohmann::ordered_json::array();
  for (const Gate& g : c.gates) {
    nlohmann::ordered_json rec;
    rec["kind"] = g.kind_name();
    rec["wires"] = g.wires;
    if (g.kind == GateKind::kMcrz) {
      rec["open_controls"] = std::vector<int>(g.open_controls.begin(),
                                              g.open_controls.end());
    }
    if (g.kind == GateKind::kRz || g.kind == GateKind::kMcrz ||
        g.kind == GateKind::kGlobalPhase)
      rec["angle"] = g.angle;
    if (g.kind == GateKind::kDenseUnitary || g.kind == GateKind::kStatePrep) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index col = 0; col < g.matrix.cols(); ++col)
          row.push_back({g.matrix(r, col).real(), g.matrix(r, col).imag()});
        rows.push_back(std::move(row));
      }
      rec["matrix"] = std::move(rows);
    }
    out["gates"].push_back(std::move(rec));
  }
  return out.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
  out << contents;
}

} // namespace mpobe
