#pragma once

#include <array>
#include <functional>
#include <vector>

#include "instsym/adhm.hpp"

namespace instsym {

struct KernelFrame {
  Quaternion x;
  QuatMatrix V;  // (n+k) x n, V^dagger Delta(x) = 0, V^dagger V = I
};

KernelFrame kernel_frame(const StandardData& d, const Quaternion& x);
// max of |V^dagger Delta| and |V^dagger V - I|
double frame_residual(const StandardData& d, const KernelFrame& f);

// A gauge: any smooth map x -> V(x) of orthonormal kernel frames.
using FrameFn = std::function<QuatMatrix(const Quaternion&)>;

// Projection gauge anchored at a fixed frame: V(y) = F(y) polar(F(y)^dagger anchor).
// Anchoring at the evaluation point itself gives the synchronous gauge, where A(x) = 0.
FrameFn anchored_gauge(const StandardData& d, const QuatMatrix& anchor);

inline double default_fd_step(const Quaternion& x) { return 1e-4 * (1 + x.norm()); }

// A_mu = V^dagger d_mu V by central differences, mu = 0..3 along 1, i, j, k.
// Without a gauge the frame is anchored at the origin.
std::array<QuatMatrix, 4> connection_fd(const StandardData& d, const Quaternion& x, double h = -1,
                                        const FrameFn& gauge = {});

// Explicit frame of the M = 0, L = diag(alpha) family and its closed-form connection.
QuatMatrix m0_frame(const std::vector<double>& alphas, const Quaternion& x);
std::array<QuatMatrix, 4> m0_connection(const std::vector<double>& alphas, const Quaternion& x);

// Quaternion unit for coordinate mu (1, i, j, k).
Quaternion coord_unit(int mu);

struct MonopoleSample {
  std::array<double, 3> X{};
  QuatMatrix Phi;                // n x n, anti-Hermitian
  std::array<QuatMatrix, 3> A;   // gauge dependent
  double phi_norm = 0;           // sqrt(-tr(Phi^2)/n)
  std::vector<double> phi_eigs;  // eigenvalues of -i Phi on the complex embedding, ascending
  std::array<double, 3> A_norms{};
  double lift_residual = 0;  // singular construction only
};

// Norm used throughout: |A|^2 = -(1/n) Re tr(A^2).
double sp_norm(const QuatMatrix& a);
std::vector<double> anti_hermitian_spectrum(const QuatMatrix& a);

// Hyperbolic construction at the half-space point (x0, x1, r), r > 0, from a circular(1) generator.
MonopoleSample higgs_hyperbolic(const StandardData& d, const RMat& rho, const std::array<double, 3>& X,
                                const FrameFn& gauge = {});
// Same Higgs formula evaluated through the frame at an arbitrary quaternion (no A).
QuatMatrix higgs_hyperbolic_at(const StandardData& d, const RMat& rho, const Quaternion& x);

// Section X -> x_X of the Hopf map, sqrt|X| e^{i theta} r^dagger with r i r^dagger = X/|X|.
Quaternion hopf_section(const std::array<double, 3>& X, double theta = 0);

// Singular construction at X in sp(1) minus the origin from a circular(0) generator.
MonopoleSample higgs_singular(const StandardData& d, const RMat& rho, const std::array<double, 3>& X,
                              double section_theta = 0, const FrameFn& gauge = {});

// The lift coefficients of d/dX_l at x (already scaled by 1/(2|X|)), as 4-vectors over (1, i, j, k).
std::array<std::array<double, 4>, 3> singular_lifts(const Quaternion& x);
// d pi_x (v)
Quaternion hopf_differential(const Quaternion& x, const std::array<double, 4>& v);

Quaternion hopf_map(const Quaternion& x);
double xi_form(const Quaternion& x, const std::array<double, 4>& v);

// Point action of exp(theta Y) for Y in sp(2).
Quaternion orbit_point(const Sp2Element& Y, double theta, const Quaternion& x);
// Smallest T > 0 with exp(T Y) = +-I, searched over multiples of pi / (largest torus weight).
double orbit_period(const Sp2Element& Y);

struct HolonomySpectrum {
  Quaternion base;
  std::vector<double> phases;  // in (-pi, pi], ascending, 2n entries
};

HolonomySpectrum orbit_holonomy(const StandardData& d, const Sp2Element& Y, const Quaternion& x, int steps = 512,
                                double period = -1);
// One orbit per base point; parallel and serial variants.
std::vector<HolonomySpectrum> orbit_holonomy_batch(const StandardData& d, const Sp2Element& Y,
                                                   const std::vector<Quaternion>& xs, int steps = 512);
std::vector<HolonomySpectrum> orbit_holonomy_batch_serial(const StandardData& d, const Sp2Element& Y,
                                                          const std::vector<Quaternion>& xs, int steps = 512);

std::vector<MonopoleSample> hyperbolic_grid(const StandardData& d, const RMat& rho,
                                            const std::vector<std::array<double, 3>>& pts);
std::vector<MonopoleSample> hyperbolic_grid_serial(const StandardData& d, const RMat& rho,
                                                   const std::vector<std::array<double, 3>>& pts);

// Closed-form |Phi|(r) of the Chakrabarti-Nash family; C > 1.
double chakrabarti_profile(double C, double r);
double chakrabarti_mass(double C);

}  // namespace instsym
