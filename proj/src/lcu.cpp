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

#include "mpobe/lcu.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mpobe {

namespace {

constexpr double kDropTolerance = 1e-14;

CMatrix pauli_by_letter(char letter) {
  switch (letter) {
    case 'I': return pauli::id();
    case 'X': return pauli::x();
    case 'Y': return pauli::y();
    case 'Z': return pauli::z();
    default:
      throw std::invalid_argument(std::string("unknown Pauli letter '") +
                                  letter + "'");
  }
}

std::string embedded_word(int length, int site, char letter) {
  std::string word(static_cast<std::size_t>(length), 'I');
  word[static_cast<std::size_t>(site)] = letter;
  return word;
}

std::string two_site_word(int length, int site, char letter) {
  std::string word(static_cast<std::size_t>(length), 'I');
  word[static_cast<std::size_t>(site)] = letter;
  word[static_cast<std::size_t>(site + 1)] = letter;
  return word;
}

} // namespace

void PauliTermList::validate() const {
  if (terms.empty())
    throw std::invalid_argument("PauliTermList: at least one term required");
  if (length < 1)
    throw std::invalid_argument("PauliTermList: length must be >= 1");
  for (const PauliTerm& t : terms) {
    if (static_cast<int>(t.word.size()) != length)
      throw std::invalid_argument("PauliTermList: word length mismatch");
    for (char ch : t.word) pauli_by_letter(ch);
    if (!std::isfinite(t.coeff))
      throw std::invalid_argument("PauliTermList: non-finite coefficient");
  }
}

PauliTermList make_term_list(std::vector<PauliTerm> terms, int length) {
  PauliTermList out;
  out.terms = std::move(terms);
  out.length = length;
  for (const PauliTerm& t : out.terms) out.lambda += std::abs(t.coeff);
  out.validate();
  return out;
}

PauliTermList pauli_terms_ising(int length, double coupling, double field) {
  if (length < 2)
    throw std::invalid_argument("pauli_terms_ising: length must be >= 2");
  std::vector<PauliTerm> terms;
  for (int l = 0; l + 1 < length; ++l)
    if (std::abs(coupling) > kDropTolerance)
      terms.push_back({coupling, two_site_word(length, l, 'Z')});
  for (int l = 0; l < length; ++l)
    if (std::abs(field) > kDropTolerance)
      terms.push_back({field, embedded_word(length, l, 'X')});
  return make_term_list(std::move(terms), length);
}

PauliTermList pauli_terms_heisenberg(int length, const HeisenbergCouplings& c) {
  if (length < 2)
    throw std::invalid_argument("pauli_terms_heisenberg: length must be >= 2");
  std::vector<PauliTerm> terms;
  const std::pair<double, char> couplings[] = {
      {c.jx, 'X'}, {c.jy, 'Y'}, {c.jz, 'Z'}};
  const std::pair<double, char> fields[] = {
      {c.gx, 'X'}, {c.gy, 'Y'}, {c.gz, 'Z'}};
  for (int l = 0; l + 1 < length; ++l)
    for (const auto& [value, letter] : couplings)
      if (std::abs(value) > kDropTolerance)
        terms.push_back({value, two_site_word(length, l, letter)});
  for (int l = 0; l < length; ++l)
    for (const auto& [value, letter] : fields)
      if (std::abs(value) > kDropTolerance)
        terms.push_back({value, embedded_word(length, l, letter)});
  return make_term_list(std::move(terms), length);
}

PauliTermList pauli_terms_xy(int length, double jx, double jy, double gx,
                             double gy) {
  HeisenbergCouplings c;
  c.jx = jx;
  c.jy = jy;
  c.gx = gx;
  c.gy = gy;
  return pauli_terms_heisenberg(length, c);
}

PauliTermList pauli_terms_pauli_product(
    const std::vector<PauliSiteCoefficients>& site_coeffs, double zeta) {
  if (site_coeffs.empty())
    throw std::invalid_argument("pauli_terms_pauli_product: no sites");
  if (zeta < 0.0)
    throw std::invalid_argument("pauli_terms_pauli_product: zeta must be >= 0");
  const int length = static_cast<int>(site_coeffs.size());

  std::vector<PauliTerm> terms = {{1.0, ""}};
  for (const PauliSiteCoefficients& c : site_coeffs) {
    const std::pair<double, char> options[] = {
        {c.alpha, 'I'}, {c.beta, 'X'}, {c.gamma, 'Y'}, {c.delta, 'Z'}};
    std::vector<PauliTerm> next;
    for (const PauliTerm& t : terms)
      for (const auto& [value, letter] : options) {
        if (std::abs(value * t.coeff) <= kDropTolerance) continue;
        next.push_back({t.coeff * value, t.word + letter});
      }
    terms = std::move(next);
  }

  if (zeta > 0.0) {
    const std::string identity(static_cast<std::size_t>(length), 'I');
    bool merged = false;
    for (PauliTerm& t : terms)
      if (t.word == identity) {
        t.coeff += zeta;
        merged = true;
        break;
      }
    if (!merged) terms.push_back({zeta, identity});
  }
  if (terms.empty())
    throw std::invalid_argument("pauli_terms_pauli_product: operator is zero");
  return make_term_list(std::move(terms), length);
}

CMatrix terms_dense(const PauliTermList& t) {
  t.validate();
  const Eigen::Index dim = Eigen::Index{1} << t.length;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (const PauliTerm& term : t.terms) {
    CMatrix word = CMatrix::Identity(1, 1);
    for (char letter : term.word) word = kron(word, pauli_by_letter(letter));
    h += term.coeff * word;
  }
  return h;
}

LcuEncoding build_lcu_circuit(const PauliTermList& t) {
  t.validate();
  const auto term_count = static_cast<Eigen::Index>(t.terms.size());
  if (term_count > (Eigen::Index{1} << 10))
    throw std::invalid_argument("build_lcu_circuit: more than 2^10 terms");
  int ancillas = 0;
  while ((Eigen::Index{1} << ancillas) < term_count) ++ancillas;

  LcuEncoding enc;
  enc.lambda = t.lambda;
  enc.layout.physical.resize(static_cast<std::size_t>(t.length));
  for (int l = 0; l < t.length; ++l)
    enc.layout.physical[static_cast<std::size_t>(l)] = t.length - 1 - l;
  enc.layout.bond.resize(static_cast<std::size_t>(ancillas));
  for (int j = 0; j < ancillas; ++j)
    enc.layout.bond[static_cast<std::size_t>(j)] = t.length + j;
  enc.layout.validate();
  enc.circuit.n_wires = enc.layout.n_wires();

  std::vector<int> anc_wires; // most significant first
  for (int j = ancillas - 1; j >= 0; --j)
    anc_wires.push_back(enc.layout.bond[static_cast<std::size_t>(j)]);
  std::vector<int> all_wires = anc_wires;
  for (int w = t.length - 1; w >= 0; --w) all_wires.push_back(w);

  // SELECT: ancilla value m applies the m-th word with the coefficient's
  // sign absorbed; unused ancilla values act as identity.
  const Eigen::Index anc_dim = Eigen::Index{1} << ancillas;
  const Eigen::Index sys_dim = Eigen::Index{1} << t.length;
  CMatrix select = CMatrix::Zero(anc_dim * sys_dim, anc_dim * sys_dim);
  for (Eigen::Index m = 0; m < anc_dim; ++m) {
    CMatrix word = CMatrix::Identity(sys_dim, sys_dim);
    if (m < term_count) {
      const PauliTerm& term = t.terms[static_cast<std::size_t>(m)];
      word = CMatrix::Identity(1, 1);
      for (char letter : term.word) word = kron(word, pauli_by_letter(letter));
      if (term.coeff < 0) word = -word;
    }
    select.block(m * sys_dim, m * sys_dim, sys_dim, sys_dim) = word;
  }

  if (ancillas > 0) {
    CVector prep_state = CVector::Zero(anc_dim);
    for (Eigen::Index m = 0; m < term_count; ++m)
      prep_state(m) =
          std::sqrt(std::abs(t.terms[static_cast<std::size_t>(m)].coeff) /
                    t.lambda);
    const CMatrix prep = complete_to_unitary(prep_state);
    enc.circuit.append(Gate::state_prep(prep, anc_wires));
    enc.circuit.append(Gate::dense(select, all_wires));
    enc.circuit.append(Gate::dense(prep.adjoint(), anc_wires));
  } else {
    enc.circuit.append(Gate::dense(select, all_wires));
  }
  return enc;
}

PauliTermList load_terms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_terms: cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("load_terms: expected a non-empty array");
  std::vector<PauliTerm> terms;
  int length = -1;
  for (const auto& item : j) {
    if (!item.contains("coeff") || !item["coeff"].is_number())
      throw std::invalid_argument("load_terms: missing or invalid field 'coeff'");
    if (!item.contains("word") || !item["word"].is_string())
      throw std::invalid_argument("load_terms: missing or invalid field 'word'");
    PauliTerm t{item["coeff"].get<double>(), item["word"].get<std::string>()};
    if (length < 0) length = static_cast<int>(t.word.size());
    terms.push_back(std::move(t));
  }
  return make_term_list(std::move(terms), length);
}

void save_terms(const std::string& path, const PauliTermList& t) {
  t.validate();
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const PauliTerm& term : t.terms)
    j.push_back({{"coeff", term.coeff}, {"word", term.word}});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_terms: cannot open " + path);
  out << j.dump(2) << "\n";
}

} // namespace mpobe
