#pragma once

#include <string>
#include <vector>

#include "instsym/adhm.hpp"

namespace instsym {

// Catalog names: r_t, toral, h311, h41, h5, p311, p41, sp1sp1, sp2.
// r_t takes the ratio t; the rest ignore it.
std::vector<Sp2Element> subalgebra(const std::string& name, double t = 1.0);
const std::vector<std::string>& subalgebra_names();

// Standard basis of sp(1): i/2, j/2, k/2.
Quaternion upsilon(int l);
// Manton-Sutcliffe circle generator [[0, 1], [-1, 0]].
Sp2Element ms_generator();

// c[a][b][c] with [g_a, g_b] = sum_c c[a][b][c] g_c (least squares on real coordinates).
using StructureConstants = std::vector<std::vector<std::vector<double>>>;
StructureConstants structure_constants(const std::vector<QuatMatrix>& gens);
// Residual of the least-squares fit above; zero iff the span is bracket closed.
double bracket_closure_residual(const std::vector<QuatMatrix>& gens);

double anti_hermitian_residual(const QuatMatrix& x);

QuatMatrix exp_sp2(const Sp2Element& x, double theta);

struct TorusForm {
  QuatMatrix A;  // Sp(2), A X A^dagger = diag(a i, b i)
  double a = 0, b = 0;
};
TorusForm conjugate_to_torus(const Sp2Element& x);

}  // namespace instsym
