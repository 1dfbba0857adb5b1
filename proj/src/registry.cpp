#include "instsym/registry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace instsym {

using namespace qunit;

namespace {

SymmetryKind kind(KindTag t, double tt = 0) { return {t, tt}; }

QuatMatrix iso_ex_M() {
  const Quaternion o = one, z = 0.0;
  return QuatMatrix{{z, z, z, z, o, -i, j},  {z, z, z, z, i, o, -k},  {z, z, z, z, j, -k, -o}, {z, z, z, z, k, j, i},
                    {o, i, j, k, z, z, z},    {-i, o, -k, j, z, z, z}, {j, -k, -o, i, z, z, z}};
}

QuatMatrix iso_ex_L() {
  const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
  const Quaternion z = 0.0;
  return QuatMatrix{{3.0, -i, -j, -k, z, z, z}, {z, 2 * s2, s2 * k, -s2 * j, z, z, z}, {z, z, s6, s6 * i, z, z, z}};
}

QuatMatrix rot_ex_M() {
  const Quaternion o = one, z = 0.0;
  return QuatMatrix{{z, z, z, z, o}, {z, z, z, z, i}, {z, z, z, z, j}, {z, z, z, z, k}, {o, i, j, k, z}};
}

QuatMatrix rot_ex_L() {
  const double s3 = std::sqrt(3.0), s23 = std::sqrt(2.0 / 3.0), s2 = std::sqrt(2.0);
  const Quaternion z = 0.0;
  return QuatMatrix{{s3, -i / s3, -j / s3, -k / s3, z}, {z, 2 * s23, s23 * k, -s23 * j, z}, {z, z, s2, s2 * i, z}};
}

void check_positive(double v, const char* what) {
  if (!(v > 0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

const std::vector<ExampleInfo>& example_registry() {
  static const std::vector<ExampleInfo> reg{
      {"basic", "", {kind(KindTag::full)}, Domain::full},
      {"m0-family", "alphas", {kind(KindTag::rotational)}, Domain::isoclinic},
      {"iso-ex", "lambda", {kind(KindTag::isoclinic_spherical)}, Domain::isoclinic},
      {"rot-ex", "lambda", {kind(KindTag::rotational)}, Domain::isoclinic},
      {"not-in-ms",
       "B",
       {kind(KindTag::conformal_superspherical), kind(KindTag::ms_circle), kind(KindTag::simple_spherical)},
       Domain::simple_spherical},
      {"not-in-ms-converted", "B", {kind(KindTag::circular, 1.0)}, Domain::circular},
  };
  return reg;
}

const ExampleInfo& example_info(const std::string& name) {
  for (const auto& e : example_registry())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown example '" + name + "'");
}

StandardData make_example(const std::string& name, const ExampleParams& p) {
  if (name == "basic") return StandardData(QuatMatrix{{1.0}}, QuatMatrix{{0.0}});
  if (name == "m0-family") {
    if (p.alphas.empty()) throw std::invalid_argument("m0-family needs at least one alpha");
    std::vector<Quaternion> d;
    for (double a : p.alphas) {
      check_positive(a, "alpha");
      d.emplace_back(a);
    }
    const int k = static_cast<int>(d.size());
    return StandardData(QuatMatrix::diag(d), QuatMatrix(k, k));
  }
  if (name == "iso-ex") {
    check_positive(p.lambda, "lambda");
    return StandardData(p.lambda * iso_ex_L(), p.lambda * iso_ex_M());
  }
  if (name == "rot-ex") {
    check_positive(p.lambda, "lambda");
    return StandardData(p.lambda * rot_ex_L(), p.lambda * rot_ex_M());
  }
  if (name == "not-in-ms") {
    auto c = not_in_ms_coefficients(p.B);
    return StandardData(QuatMatrix{{c.A, 0.0}, {0.0, p.B}}, QuatMatrix{{0.0, c.a}, {c.a, 0.0}});
  }
  if (name == "not-in-ms-converted") return not_in_ms_converted(p.B).data;
  throw std::invalid_argument("unknown example '" + name + "'");
}

double not_in_ms_max_B() { return 2.0 * std::sqrt(6.0) / 3.0; }

NotInMSCoefficients not_in_ms_coefficients(double B) {
  if (!(B > 0 && B < not_in_ms_max_B())) throw std::invalid_argument("B must lie in (0, 2 sqrt(6) / 3)");
  const double s = std::sqrt(B * B * B * B - B * B + 1);
  const double p = std::sqrt(12 - 15 * B * B + 12 * s);
  const double q = std::sqrt(-3 * B * B + 6 + 6 * s);
  return {p / 3, (2 * B * B - s - 1) / q, -p / q * B, -q / 3};
}

QuatMatrix not_in_ms_rho(double B) {
  auto c = not_in_ms_coefficients(B);
  return QuatMatrix{{0.0, c.b, c.A, 0.0}, {-c.b, 0.0, 0.0, B}, {-c.A, 0.0, 0.0, c.c}, {0.0, -B, -c.c, 0.0}};
}

std::vector<double> not_in_ms_eigenvalues(double B, double x0, double x1) {
  const double s = std::sqrt(B * B * B * B - B * B + 1);
  const double I = -2 * B * B + 3 * x0 * x0 + 4 * s + 1;
  const double disc = std::sqrt(std::max(0.0, I * I - 9 * (x0 * x0 + 1) * (x0 * x0 + 1)));
  return {(I + 3 * x1 * x1 - disc) / 3, (I + 3 * x1 * x1 + disc) / 3};
}

ADHMPair not_in_ms_rotated(double B) {
  const double r = 1 / std::sqrt(2.0);
  ConformalElement c{r * k, -r * i, r * j, Quaternion(r)};
  return conformal_apply(c, make_example("not-in-ms", {1.0, B, {}}).pair());
}

GaugeElement not_in_ms_printed_gauge(double B) {
  auto c = not_in_ms_coefficients(B);
  const double A = c.A, a = c.a;
  const double nA = std::sqrt(A * A + a * a + 1), nB = std::sqrt(B * B + a * a + 1), na = std::sqrt(a * a + 1);
  QuatMatrix Q{{na / nA, 0.0, -(A / (nA * na)) * i, Quaternion(-A * a / (nA * na))},
               {0.0, na / nB, Quaternion(-B * a / (nB * na)), -(B / (nB * na)) * i},
               {(A / nA) * j, 0.0, -(1 / nA) * k, (a / nA) * j},
               {0.0, (B / nB) * j, (a / nB) * j, -(1 / nB) * k}};
  RMat K = RMat::Zero(2, 2);
  K(0, 0) = nA / std::sqrt(2.0);
  K(1, 1) = nB / std::sqrt(2.0);
  return {Q, K};
}

ConvertedData not_in_ms_converted(double B) {
  ADHMPair rot = not_in_ms_rotated(B);
  GaugeElement g = not_in_ms_printed_gauge(B);
  ADHMPair out = gauge_apply(g, rot);
  QuatMatrix Mpp = out.a.block(2, 0, 2, 2);
  double defect = std::max({(out.b - standard_U(2, 2)).max_abs(), (Mpp - Mpp.transpose()).max_abs(),
                            unitarity_residual(g.Q)});
  if (defect <= 1e-10) return {StandardData(out.a.block(0, 0, 2, 2), Mpp), g, true, defect};
  Reduction red = reduce_standard(rot);
  return {red.data, red.gauge, false, defect};
}

std::vector<double> iso_ex_eigenvalues(double lambda, double x0) {
  const double l2 = lambda * lambda, x2 = x0 * x0, r = 2 * lambda * std::sqrt(4 * l2 + x2);
  std::vector<double> v{12 * l2 + x2};
  for (int c = 0; c < 3; ++c) {
    v.push_back(8 * l2 + x2 - r);
    v.push_back(8 * l2 + x2 + r);
  }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> rot_ex_eigenvalues(double lambda, double x0) {
  const double base = 4 * lambda * lambda + x0 * x0;
  std::vector<double> v{base, base, base, base - 2 * x0 * lambda, base + 2 * x0 * lambda};
  std::sort(v.begin(), v.end());
  return v;
}

ADHMPair rank_deficient_pair() {
  ADHMPair p;
  p.n = 1;
  p.k = 2;
  p.a = QuatMatrix{{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}};
  p.b = QuatMatrix{{0.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}};
  return p;
}

}  // namespace instsym
