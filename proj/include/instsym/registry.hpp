#pragma once

#include <string>
#include <vector>

#include "instsym/adhm.hpp"
#include "instsym/symmetry.hpp"

namespace instsym {

struct ExampleParams {
  double lambda = 1.0;
  double B = 0.5;
  std::vector<double> alphas{1.0};
};

struct ExampleInfo {
  std::string name;
  std::string params;                    // which ExampleParams fields matter
  std::vector<SymmetryKind> kinds;       // symmetry classes the example is known to carry
  Domain pd_domain = Domain::full;       // reduced domain sufficient for the PD check
};

const std::vector<ExampleInfo>& example_registry();
const ExampleInfo& example_info(const std::string& name);
StandardData make_example(const std::string& name, const ExampleParams& p = {});

// notinMSset coefficients as functions of B in (0, 2 sqrt(6) / 3).
struct NotInMSCoefficients {
  double A, a, b, c;
};
NotInMSCoefficients not_in_ms_coefficients(double B);
double not_in_ms_max_B();
// The printed sp(4) generator of the Manton-Sutcliffe circle for the raw data.
QuatMatrix not_in_ms_rho(double B);
// Sorted closed-form eigenvalues of Delta^dagger Delta at x0 + x1 i (each listed twice: k = 2).
std::vector<double> not_in_ms_eigenvalues(double B, double x0, double x1);

// Conversion to the usual circle: (Mhat', U') = (1/sqrt 2) [[k, -i], [j, 1]] . (Mhat, U).
ADHMPair not_in_ms_rotated(double B);
// The explicit gauge printed for the rotated data.
GaugeElement not_in_ms_printed_gauge(double B);
struct ConvertedData {
  StandardData data;
  GaugeElement gauge;       // gauge actually used
  bool printed_gauge_ok;    // printed (Q, K) lands exactly in standard form
  double printed_gauge_defect;
};
ConvertedData not_in_ms_converted(double B);

// Closed-form spectra of the two worked examples at real x0.
std::vector<double> iso_ex_eigenvalues(double lambda, double x0);
std::vector<double> rot_ex_eigenvalues(double lambda, double x0);

// A pair whose b has rank 1 although k = 2.
ADHMPair rank_deficient_pair();

}  // namespace instsym
