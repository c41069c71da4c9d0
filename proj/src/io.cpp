// Copyright 2026 The sepball Authors
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

#include "sepball/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sepball/error.hpp"
#include "sepball/product_approx.hpp"

namespace sepball::io {

namespace {

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

void dump_value(const Json& v, int indent, std::string& out);

void newline(int indent, std::string& out) {
  out += '\n';
  out.append(static_cast<std::size_t>(indent), ' ');
}

void dump_scalar(const Json& v, std::string& out) {
  if (v.is_number_float()) {
    const double d = v.get<double>();
    out += std::isfinite(d) ? format_double(d) : Json(format_double(d)).dump();
  } else {
    out += v.dump();
  }
}

void dump_value(const Json& v, int indent, std::string& out) {
  if (is_scalar(v)) {
    dump_scalar(v, out);
    return;
  }
  if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    bool flat = true;
    for (const Json& e : v) flat = flat && is_scalar(e);
    // Complex entries [re, im] are scalars-only arrays; a matrix row is an
    // array of those and is kept on one line as well.
    bool row_of_pairs = true;
    for (const Json& e : v) {
      row_of_pairs = row_of_pairs && e.is_array() && e.size() == 2 && is_scalar(e[0]) && is_scalar(e[1]);
    }
    if (flat || row_of_pairs) {
      out += '[';
      bool first = true;
      for (const Json& e : v) {
        if (!first) out += ", ";
        first = false;
        dump_value(e, indent, out);
      }
      out += ']';
      return;
    }
    out += '[';
    bool first = true;
    for (const Json& e : v) {
      if (!first) out += ',';
      first = false;
      newline(indent + 2, out);
      dump_value(e, indent + 2, out);
    }
    newline(indent, out);
    out += ']';
    return;
  }
  if (v.empty()) {
    out += "{}";
    return;
  }
  out += '{';
  bool first = true;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!first) out += ',';
    first = false;
    newline(indent + 2, out);
    out += Json(it.key()).dump();
    out += ": ";
    dump_value(it.value(), indent + 2, out);
  }
  newline(indent, out);
  out += '}';
}

const Json& require_key(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    fail(ErrorCode::Parse, std::string("missing key \"") + key + "\"");
  }
  return doc.at(key);
}

std::string require_string(const Json& doc, const char* key) {
  const Json& v = require_key(doc, key);
  if (!v.is_string()) fail(ErrorCode::Parse, std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<ComplexMatrix> factor_list(const Json& arr, const DimSignature& sig, const char* what) {
  if (!arr.is_array()) fail(ErrorCode::Parse, std::string(what) + " must be an array");
  if (arr.size() != sig.parties()) {
    fail(ErrorCode::DimensionMismatch, std::string(what) + " needs one matrix per subsystem");
  }
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    ComplexMatrix m = matrix_from_json(arr[k]);
    if (static_cast<std::size_t>(m.rows()) != sig[k]) {
      fail(ErrorCode::DimensionMismatch,
           std::string(what) + " " + std::to_string(k) + " does not match dims");
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<DensityMatrix> factor_states(const Json& arr, const DimSignature& sig) {
  std::vector<DensityMatrix> out;
  for (ComplexMatrix& m : factor_list(arr, sig, "factor")) {
    const std::size_t d = m.rows();
    out.push_back(DensityMatrix::from_matrix(std::move(m), DimSignature({d})));
  }
  return out;
}

Json factors_to_json(const ProductState& prod) {
  Json arr = Json::array();
  for (const DensityMatrix& f : prod.factors()) arr.push_back(matrix_to_json(f.matrix()));
  return arr;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string dump_json(const Json& doc) {
  std::string out;
  dump_value(doc, 0, out);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

double number_from_json(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(ErrorCode::Parse, "expected a number, got " + v.dump());
}

Json number_to_json(double v) {
  if (std::isfinite(v)) return Json(v);
  return Json(format_double(v));
}

ComplexMatrix matrix_from_json(const Json& rows) {
  if (!rows.is_array() || rows.empty()) fail(ErrorCode::Parse, "matrix must be a nonempty array of rows");
  const std::size_t n = rows.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != n) fail(ErrorCode::Parse, "matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      const Json& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        fail(ErrorCode::Parse, "matrix entries must be [re, im] number pairs");
      }
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  require_finite(m, "matrix");
  return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DimSignature dims_from_json(const Json& dims) {
  if (!dims.is_array() || dims.empty()) fail(ErrorCode::Parse, "dims must be a nonempty array");
  std::vector<std::size_t> out;
  for (const Json& d : dims) {
    if (!d.is_number_integer() || d.get<long long>() < 2) {
      fail(ErrorCode::Parse, "each dimension must be an integer >= 2");
    }
    out.push_back(d.get<std::size_t>());
  }
  return DimSignature(std::move(out));
}

Json dims_to_json(const DimSignature& sig) {
  Json arr = Json::array();
  for (std::size_t d : sig.dims()) arr.push_back(d);
  return arr;
}

DensityMatrix state_from_json(const Json& doc) {
  DimSignature sig = dims_from_json(require_key(doc, "dims"));
  ComplexMatrix m = matrix_from_json(require_key(doc, "matrix"));
  return DensityMatrix::from_matrix(std::move(m), std::move(sig));
}

Json state_to_json(const DensityMatrix& rho) {
  Json doc = Json::object();
  doc["dims"] = dims_to_json(rho.sig());
  doc["matrix"] = matrix_to_json(rho.matrix());
  return doc;
}

ProductState product_from_json(const Json& doc) {
  const DimSignature sig = dims_from_json(require_key(doc, "dims"));
  if (doc.contains("factors")) return ProductState(factor_states(doc.at("factors"), sig));
  const DensityMatrix rho = state_from_json(doc);
  ProductState prod = reduced_product(rho);
  const double gap = frobenius_norm(rho.matrix() - prod.matrix());
  if (gap > 1e-9) {
    std::ostringstream msg;
    msg << "matrix is not a product state (distance to its reduced product " << gap << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  return prod;
}

Json product_to_json(const ProductState& prod) {
  Json doc = Json::object();
  doc["dims"] = dims_to_json(prod.sig());
  doc["factors"] = factors_to_json(prod);
  return doc;
}

SeparableDecomposition decomposition_from_json(const Json& doc) {
  const DimSignature sig = dims_from_json(require_key(doc, "dims"));
  const Json& comps = require_key(doc, "components");
  if (!comps.is_array()) fail(ErrorCode::Parse, "components must be an array");
  SeparableDecomposition decomp;
  for (const Json& c : comps) {
    decomp.weights.push_back(number_from_json(require_key(c, "weight")));
    decomp.components.emplace_back(factor_states(require_key(c, "factors"), sig));
  }
  decomp.validate();
  return decomp;
}

Json decomposition_to_json(const SeparableDecomposition& decomp) {
  Json doc = Json::object();
  doc["dims"] = dims_to_json(decomp.sig());
  Json comps = Json::array();
  for (std::size_t i = 0; i < decomp.components.size(); ++i) {
    Json c = Json::object();
    c["weight"] = decomp.weights[i];
    c["factors"] = factors_to_json(decomp.components[i]);
    comps.push_back(std::move(c));
  }
  doc["components"] = std::move(comps);
  return doc;
}

HamiltonianSpec hamiltonian_from_json(const Json& doc) {
  DimSignature sig = dims_from_json(require_key(doc, "dims"));
  const Json& terms = require_key(doc, "terms");
  if (!terms.is_array()) fail(ErrorCode::Parse, "terms must be an array");
  std::vector<HamiltonianTerm> list;
  for (const Json& t : terms) {
    HamiltonianTerm term;
    term.coeff = t.contains("coeff") ? number_from_json(t.at("coeff")) : 1.0;
    term.factors = factor_list(require_key(t, "factors"), sig, "Hamiltonian factor");
    list.push_back(std::move(term));
  }
  return HamiltonianSpec(std::move(sig), std::move(list));
}

Json hamiltonian_to_json(const HamiltonianSpec& h) {
  Json doc = Json::object();
  doc["dims"] = dims_to_json(h.sig());
  Json terms = Json::array();
  for (const HamiltonianTerm& t : h.terms()) {
    Json term = Json::object();
    term["coeff"] = t.coeff;
    Json factors = Json::array();
    for (const ComplexMatrix& f : t.factors) factors.push_back(matrix_to_json(f));
    term["factors"] = std::move(factors);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

Json certificate_to_json(const Certificate& cert) {
  Json doc = Json::object();
  doc["criterion"] = criterion_name(cert.criterion);
  doc["verdict"] = verdict_name(cert.verdict);
  doc["threshold"] = number_to_json(cert.threshold);
  doc["achieved"] = number_to_json(cert.achieved);
  doc["margin"] = number_to_json(cert.margin);
  Json details = Json::object();
  for (const auto& [k, v] : cert.details) details[k] = number_to_json(v);
  doc["details"] = std::move(details);
  return doc;
}

Certificate certificate_from_json(const Json& doc) {
  Certificate cert;
  const auto criterion = parse_criterion(require_string(doc, "criterion"));
  if (!criterion) fail(ErrorCode::Parse, "unknown criterion " + doc.at("criterion").dump());
  const auto verdict = parse_verdict(require_string(doc, "verdict"));
  if (!verdict) fail(ErrorCode::Parse, "unknown verdict " + doc.at("verdict").dump());
  cert.criterion = *criterion;
  cert.verdict = *verdict;
  cert.threshold = number_from_json(require_key(doc, "threshold"));
  cert.achieved = number_from_json(require_key(doc, "achieved"));
  cert.margin = number_from_json(require_key(doc, "margin"));
  if (doc.contains("details")) {
    if (!doc.at("details").is_object()) fail(ErrorCode::Parse, "certificate details must be an object");
    for (auto it = doc.at("details").begin(); it != doc.at("details").end(); ++it) {
      cert.details.emplace_back(it.key(), number_from_json(it.value()));
    }
  }
  if ((cert.verdict == Verdict::CertifiedSeparable) != (cert.margin >= 0.0)) {
    fail(ErrorCode::Parse, "certificate verdict disagrees with its margin");
  }
  return cert;
}

Json negativity_to_json(const NegativityReport& rep) {
  Json doc = Json::object();
  Json cut = Json::array();
  for (std::size_t k : rep.bipartition) cut.push_back(k);
  doc["bipartition"] = std::move(cut);
  doc["min_pt_eigenvalue"] = number_to_json(rep.min_pt_eigenvalue);
  doc["negativity"] = number_to_json(rep.negativity);
  doc["is_ppt"] = rep.is_ppt;
  return doc;
}

NegativityReport negativity_from_json(const Json& doc) {
  NegativityReport rep;
  const Json& cut = require_key(doc, "bipartition");
  if (!cut.is_array()) fail(ErrorCode::Parse, "bipartition must be an array");
  for (const Json& k : cut) {
    if (!k.is_number_unsigned()) fail(ErrorCode::Parse, "bipartition entries must be indices");
    rep.bipartition.push_back(k.get<std::size_t>());
  }
  rep.min_pt_eigenvalue = number_from_json(require_key(doc, "min_pt_eigenvalue"));
  rep.negativity = number_from_json(require_key(doc, "negativity"));
  const Json& ppt = require_key(doc, "is_ppt");
  if (!ppt.is_boolean()) fail(ErrorCode::Parse, "is_ppt must be a boolean");
  rep.is_ppt = ppt.get<bool>();
  return rep;
}

std::string timeline_csv(const Timeline& tl) {
  std::string out = "time,distance,negativity\n";
  for (std::size_t i = 0; i < tl.times.size(); ++i) {
    out += format_double(tl.times[i]);
    out += ',';
    out += format_double(tl.distances[i]);
    out += ',';
    out += format_double(tl.negativities[i]);
    out += '\n';
  }
  return out;
}

void validate_report(const Json& report) {
  if (!report.is_object()) fail(ErrorCode::Parse, "report must be a JSON object");
  if (require_key(report, "tool") != kToolName) fail(ErrorCode::Parse, "report was not written by sepball");
  if (!require_key(report, "version").is_string()) fail(ErrorCode::Parse, "report version must be a string");
  if (!require_key(report, "command").is_string()) fail(ErrorCode::Parse, "report command must be a string");
  try {
    if (report.contains("certificates")) {
      for (const Json& c : report.at("certificates")) certificate_from_json(c);
    }
    if (report.contains("negativity")) {
      for (const Json& n : report.at("negativity")) negativity_from_json(n);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed report: ") + e.what());
  }
}

}  // namespace sepball::io
