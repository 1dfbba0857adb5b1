#include "instsym/json_io.hpp"

namespace instsym {

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

json to_json(const QuatMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

json to_json(const RMat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

json to_json(const StandardData& d) { return {{"n", d.n}, {"k", d.k}, {"L", to_json(d.L)}, {"M", to_json(d.M)}}; }

json to_json(const ADHMPair& p) { return {{"n", p.n}, {"k", p.k}, {"a", to_json(p.a)}, {"b", to_json(p.b)}}; }

json to_json(const GaugeElement& g) { return {{"Q", to_json(g.Q)}, {"K", to_json(g.K)}}; }

json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}, {"message", c.message}});
  return {{"ok", r.ok()},
          {"checks", checks},
          {"min_eigenvalue", r.min_eigenvalue},
          {"radius", r.radius},
          {"grid_points", r.grid_points}};
}

json to_json(const SymmetryCertificate& c) {
  json gens = json::array();
  for (const auto& g : c.generators) gens.push_back(to_json(g));
  return {{"kind", kind_name(c.kind)}, {"t", c.kind.t}, {"generators", gens}, {"residual", c.residual}};
}

json to_json(const SolveResult& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  json kdims = json::array();
  for (const auto& k : r.kernel) kdims.push_back(k.size());
  return {{"status", status_name(r.status)},
          {"backward_error", r.backward_error},
          {"certificates", certs},
          {"kernel_dims", kdims},
          {"diagnostic", r.diagnostic}};
}

json to_json(const MonopoleSample& s) {
  return {{"X", s.X}, {"|Phi|", s.phi_norm}, {"eigenphases", s.phi_eigs}, {"A_norms", s.A_norms},
          {"lift_residual", s.lift_residual}};
}

json to_json(const HolonomySpectrum& h) { return {{"base", to_json(h.base)}, {"phases", h.phases}}; }

Quaternion quat_from_json(const json& j) {
  if (j.is_number()) return Quaternion(j.get<double>());
  if (!j.is_array() || j.size() != 4) throw ParseError("quaternion must be [w, x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return j.at(key);
}

void shape(const json& j, int& r, int& c) {
  r = field(j, "rows").get<int>();
  c = field(j, "cols").get<int>();
  const json& data = field(j, "data");
  if (r < 0 || c < 0 || !data.is_array() || static_cast<int>(data.size()) != r) throw ParseError("matrix shape mismatch");
  for (const auto& row : data)
    if (!row.is_array() || static_cast<int>(row.size()) != c) throw ParseError("matrix row length mismatch");
}

}  // namespace

QuatMatrix quatmat_from_json(const json& j) {
  int r, c;
  shape(j, r, c);
  QuatMatrix m(r, c);
  const json& data = j.at("data");
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < c; ++b) m(a, b) = quat_from_json(data[a][b]);
  return m;
}

RMat realmat_from_json(const json& j) {
  int r, c;
  shape(j, r, c);
  RMat m(r, c);
  const json& data = j.at("data");
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < c; ++b) m(a, b) = data[a][b].get<double>();
  return m;
}

StandardData standard_from_json(const json& j) {
  StandardData d(quatmat_from_json(field(j, "L")), quatmat_from_json(field(j, "M")));
  if (j.contains("n") && j["n"].get<int>() != d.n) throw ParseError("n does not match L");
  if (j.contains("k") && j["k"].get<int>() != d.k) throw ParseError("k does not match L");
  return d;
}

ADHMPair pair_from_json(const json& j) {
  ADHMPair p;
  p.a = quatmat_from_json(field(j, "a"));
  p.b = quatmat_from_json(field(j, "b"));
  if (p.a.rows() != p.b.rows() || p.a.cols() != p.b.cols()) throw ParseError("a and b must have the same shape");
  p.k = p.a.cols();
  p.n = p.a.rows() - p.k;
  if (p.n < 0) throw ParseError("a must have at least k rows");
  return p;
}

SymmetryCertificate certificate_from_json(const json& j) {
  std::string name = field(j, "kind").get<std::string>();
  double t = j.value("t", 0.0);
  auto kind = parse_kind(name, t);
  if (!kind) throw ParseError("unknown symmetry kind '" + name + "'");
  SymmetryCertificate c{*kind, {}, j.value("residual", 0.0)};
  for (const auto& g : field(j, "generators")) c.generators.push_back(quatmat_from_json(g));
  return c;
}

DataFile data_from_json(const json& j) {
  if (j.is_object() && j.contains("L")) return standard_from_json(j);
  if (j.is_object() && j.contains("a")) return pair_from_json(j);
  throw ParseError("data must contain L and M, or a and b");
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace instsym
