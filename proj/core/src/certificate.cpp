#include "turan/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "turan/errors.hpp"

namespace turan {

namespace {

using nlohmann::json;

json matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rational_to_string(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

RatMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InvalidError("certificate matrix must be an array of rows");
  RatMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw InvalidError("certificate matrix row must be an array");
    std::vector<Rat> r;
    for (const auto& v : row) {
      if (!v.is_string()) throw InvalidError("certificate entries must be rational strings");
      r.push_back(parse_rational(v.get<std::string>()));
    }
    m.push_back(std::move(r));
  }
  for (const auto& row : m)
    if (row.size() != m.size()) throw InvalidError("certificate matrix must be square");
  return m;
}

const char* mode_name(ContainMode m) {
  return m == ContainMode::kSubgraph ? "subgraph" : "induced";
}

ContainMode mode_from(const std::string& s) {
  if (s == "subgraph") return ContainMode::kSubgraph;
  if (s == "induced") return ContainMode::kInduced;
  throw InvalidError("forbidden mode must be subgraph or induced");
}

// sorted (canonical key, mode) pairs; order of listing must not matter
std::vector<std::pair<std::string, int>> family_fingerprint(const ForbiddenFamily& fam) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& m : fam.members)
    out.emplace_back(canonical_form(m.graph).key(), m.mode == ContainMode::kSubgraph ? 0 : 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> target_fingerprint(const std::vector<UniformGraph>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(canonical_form(t).key());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Certificate make_certificate(const DensityProblem& prob, const Rat& bound,
                             std::vector<RatMatrix> q_matrices, std::vector<RatMatrix> r_factors) {
  if (q_matrices.size() != prob.types.size())
    throw InvalidError("one Q matrix per type required");
  if (!r_factors.empty() && r_factors.size() != q_matrices.size())
    throw InvalidError("factor list must match the Q list");
  Certificate c;
  c.order = prob.order;
  c.arity = prob.arity;
  c.directed = prob.directed;
  c.forbidden = prob.forbidden;
  c.targets = prob.targets;
  for (const auto& g : prob.graphs) c.admissible_keys.push_back(canonical_form(g).key());
  c.bound = bound;
  for (const auto& tb : prob.types) c.types.push_back(tb.sigma);
  c.q_matrices = std::move(q_matrices);
  c.r_factors = std::move(r_factors);
  return c;
}

std::string certificate_to_json(const Certificate& c) {
  json j;
  j["order"] = c.order;
  j["arity"] = c.arity;
  j["directed"] = c.directed;
  json fam = json::array();
  for (const auto& m : c.forbidden.members)
    fam.push_back({{"graph", m.graph.to_string()}, {"mode", mode_name(m.mode)}});
  j["forbidden"] = std::move(fam);
  json tgt = json::array();
  for (const auto& t : c.targets) tgt.push_back(t.to_string());
  j["target"] = std::move(tgt);
  j["admissible_keys"] = c.admissible_keys;
  j["bound"] = rational_to_string(c.bound);
  json types = json::array();
  for (const auto& t : c.types) types.push_back(t.to_string());
  j["types"] = std::move(types);
  json qs = json::array();
  for (const auto& q : c.q_matrices) qs.push_back(matrix_to_json(q));
  j["q_matrices"] = std::move(qs);
  if (!c.r_factors.empty()) {
    json rs = json::array();
    for (const auto& r : c.r_factors) rs.push_back(matrix_to_json(r));
    j["r_factors"] = std::move(rs);
  }
  return j.dump(2) + "\n";
}

Certificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidError(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    Certificate c;
    c.order = j.at("order").get<int>();
    c.arity = j.at("arity").get<int>();
    c.directed = j.at("directed").get<bool>();
    for (const auto& m : j.at("forbidden")) {
      ForbiddenMember fm;
      fm.graph = UniformGraph::parse(m.at("graph").get<std::string>(), c.arity);
      fm.mode = mode_from(m.at("mode").get<std::string>());
      c.forbidden.members.push_back(std::move(fm));
    }
    for (const auto& t : j.at("target"))
      c.targets.push_back(UniformGraph::parse(t.get<std::string>(), c.arity));
    c.admissible_keys = j.at("admissible_keys").get<std::vector<std::string>>();
    c.bound = parse_rational(j.at("bound").get<std::string>());
    for (const auto& t : j.at("types"))
      c.types.push_back(UniformGraph::parse(t.get<std::string>(), c.arity));
    for (const auto& q : j.at("q_matrices")) c.q_matrices.push_back(matrix_from_json(q));
    if (j.contains("r_factors") && !j.at("r_factors").is_null())
      for (const auto& r : j.at("r_factors")) c.r_factors.push_back(matrix_from_json(r));
    if (sgn(c.bound) < 0 || cmp(c.bound, Rat(1)) > 0)
      throw InvalidError("certificate bound must lie in [0,1]");
    if (c.q_matrices.size() != c.types.size())
      throw InvalidError("certificate needs one Q matrix per type");
    if (!c.r_factors.empty() && c.r_factors.size() != c.types.size())
      throw InvalidError("certificate factor count must match the type count");
    return c;
  } catch (const json::exception& e) {
    throw InvalidError(std::string("certificate field error: ") + e.what());
  }
}

void save_certificate(const Certificate& c, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InvalidError("cannot write " + path);
  os << certificate_to_json(c);
  if (!os) throw ComputeError("write failed for " + path);
}

Certificate load_certificate(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidError("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_certificate(buf.str());
}

std::string problem_to_json(const DensityProblem& prob) {
  json j;
  j["order"] = prob.order;
  j["arity"] = prob.arity;
  j["directed"] = prob.directed;
  json fam = json::array();
  for (const auto& m : prob.forbidden.members)
    fam.push_back({{"graph", m.graph.to_string()}, {"mode", mode_name(m.mode)}});
  j["forbidden"] = std::move(fam);
  json tgt = json::array();
  for (const auto& t : prob.targets) tgt.push_back(t.to_string());
  j["target"] = std::move(tgt);
  return j.dump(2) + "\n";
}

void save_problem(const DensityProblem& prob, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InvalidError("cannot write " + path);
  os << problem_to_json(prob);
  if (!os) throw ComputeError("write failed for " + path);
}

DensityProblem load_problem(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidError("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw InvalidError(std::string("problem file is not valid JSON: ") + e.what());
  }
  try {
    int order = j.at("order").get<int>();
    int arity = j.at("arity").get<int>();
    bool directed = j.at("directed").get<bool>();
    ForbiddenFamily fam;
    for (const auto& m : j.at("forbidden")) {
      ForbiddenMember fm;
      fm.graph = UniformGraph::parse(m.at("graph").get<std::string>(), arity);
      fm.mode = mode_from(m.at("mode").get<std::string>());
      fam.members.push_back(std::move(fm));
    }
    std::vector<UniformGraph> targets;
    for (const auto& t : j.at("target"))
      targets.push_back(UniformGraph::parse(t.get<std::string>(), arity));
    return assemble_problem(order, fam, targets, arity, directed);
  } catch (const json::exception& e) {
    throw InvalidError(std::string("problem field error: ") + e.what());
  }
}

bool check_psd(const RatMatrix& m) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw InvalidError("matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cmp(m[i][j], m[j][i]) != 0) throw InvalidError("matrix must be symmetric");

  RatMatrix a = m;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t j = k + 1; j < n; ++j)
      if (cmp(a[j][j], a[piv][piv]) > 0) piv = j;
    if (sgn(a[piv][piv]) < 0) return false;
    if (sgn(a[piv][piv]) == 0) {
      // all remaining diagonals are <= 0, hence 0; PSD iff the block vanishes
      for (std::size_t p = k; p < n; ++p)
        for (std::size_t q = k; q < n; ++q)
          if (sgn(a[p][q]) != 0) return false;
      return true;
    }
    if (piv != k) {
      std::swap(a[piv], a[k]);
      for (std::size_t p = 0; p < n; ++p) std::swap(a[p][piv], a[p][k]);
    }
    Rat d = a[k][k];
    for (std::size_t p = k + 1; p < n; ++p) {
      if (sgn(a[p][k]) == 0) continue;
      Rat f = a[p][k] / d;
      for (std::size_t q = k; q < n; ++q) a[p][q] -= f * a[k][q];
    }
    for (std::size_t q = k + 1; q < n; ++q) a[k][q] = 0;
  }
  return true;
}

Verdict verify(const Certificate& cert, const DensityProblem& prob) {
  if (cert.order != prob.order || cert.arity != prob.arity || cert.directed != prob.directed)
    throw InvalidError("certificate fingerprint mismatch: order or arity");
  if (family_fingerprint(cert.forbidden) != family_fingerprint(prob.forbidden))
    throw InvalidError("certificate fingerprint mismatch: forbidden family");
  if (target_fingerprint(cert.targets) != target_fingerprint(prob.targets))
    throw InvalidError("certificate fingerprint mismatch: target");
  std::vector<std::string> keys;
  for (const auto& g : prob.graphs) keys.push_back(canonical_form(g).key());
  if (cert.admissible_keys != keys)
    throw InvalidError("certificate fingerprint mismatch: admissible graphs");
  if (cert.types.size() != prob.types.size())
    throw InvalidError("certificate type count mismatch");
  for (std::size_t t = 0; t < cert.types.size(); ++t) {
    if (!(cert.types[t] == prob.types[t].sigma))
      throw InvalidError("certificate type mismatch");
    std::size_t kf = prob.types[t].flags.size();
    if (cert.q_matrices[t].size() != kf)
      throw InvalidError("certificate Q dimension mismatch");
    for (const auto& row : cert.q_matrices[t])
      if (row.size() != kf) throw InvalidError("certificate Q dimension mismatch");
    if (!cert.r_factors.empty()) {
      if (cert.r_factors[t].size() != kf) throw InvalidError("certificate factor dimension mismatch");
      for (const auto& row : cert.r_factors[t])
        if (row.size() != kf) throw InvalidError("certificate factor dimension mismatch");
    }
  }

  Verdict v;
  bool psd_ok = true;
  std::string reason;
  for (std::size_t t = 0; t < cert.q_matrices.size() && psd_ok; ++t) {
    const RatMatrix& q = cert.q_matrices[t];
    std::size_t kf = q.size();
    for (std::size_t i = 0; i < kf && psd_ok; ++i)
      for (std::size_t j = i + 1; j < kf; ++j)
        if (cmp(q[i][j], q[j][i]) != 0) {
          psd_ok = false;
          reason = "Q matrix " + std::to_string(t) + " is not symmetric";
        }
    if (!psd_ok) break;
    if (!cert.r_factors.empty()) {
      const RatMatrix& r = cert.r_factors[t];
      for (std::size_t i = 0; i < kf && psd_ok; ++i)
        for (std::size_t j = 0; j < kf && psd_ok; ++j) {
          Rat s = 0;
          for (std::size_t l = 0; l < kf; ++l) s += r[l][i] * r[l][j];
          if (cmp(s, q[i][j]) != 0) {
            psd_ok = false;
            reason = "factor identity fails for Q matrix " + std::to_string(t);
          }
        }
    } else if (!check_psd(q)) {
      psd_ok = false;
      reason = "Q matrix " + std::to_string(t) + " is not positive semidefinite";
    }
  }

  bool first = true;
  for (std::size_t i = 0; i < prob.graphs.size(); ++i) {
    Rat val = prob.target_density[i];
    for (std::size_t t = 0; t < prob.types.size(); ++t) {
      const auto& q = cert.q_matrices[t];
      const auto& d = prob.types[t].coeff[i];
      std::size_t kf = q.size();
      for (std::size_t p = 0; p < kf; ++p)
        for (std::size_t r = 0; r < kf; ++r) val += q[p][r] * d[p][r];
    }
    if (first || cmp(val, v.certified_bound) > 0) {
      v.certified_bound = val;
      v.worst_graph = i;
      first = false;
    }
  }

  v.valid = psd_ok && cmp(v.certified_bound, cert.bound) <= 0;
  if (!psd_ok)
    v.reason = reason;
  else if (!v.valid)
    v.reason = "constraint " + std::to_string(v.worst_graph) + " exceeds the claimed bound";
  return v;
}

}  // namespace turan
