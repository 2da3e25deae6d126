#pragma once

#include <string>
#include <vector>

#include "axifem/assembly.hpp"
#include "axifem/mesh.hpp"
#include "axifem/spaces.hpp"

namespace axifem {

/// Closed-form test problem: p = r^2 cos(pi r / 2) sin(pi z), z = -grad^{k*} p,
/// f = div^k z.
struct ManufacturedSolution {
  ScalarField p;
  VectorField3 z;
  ScalarField f;
};

ManufacturedSolution manufactured_solution(FourierMode k);

struct MixedSolution {
  Vector z;  // C_h coefficients
  Vector p;  // D_h coefficients
  /// Relative residuals of the two discrete equations.
  double residual_flux = 0.0;
  double residual_div = 0.0;
};

/// (z_h, w)_r - (p_h, div^k w)_r = 0, (div^k z_h, s)_r = (f, s)_r, solved as one
/// sparse indefinite system.
MixedSolution solve_mixed(const CSpace& space, const ScalarField& f);
/// Same with a load vector (f, chi_K)_r already assembled.
MixedSolution solve_mixed_load(const CSpace& space, const Vector& load);

struct MixedErrorRow {
  int level = 0;
  double err_z = 0.0;
  double err_p = 0.0;
  double err_pis = 0.0;
  /// log2(e_{l-1} / e_l); NaN on the first row.
  double rate_z = 0.0;
  double rate_p = 0.0;
  double rate_pis = 0.0;
};

std::vector<MixedErrorRow> error_table(Domain domain, FourierMode k, int max_level, int min_level = 1);

/// `level,err_z,rate_z,err_p,rate_p,err_PiSp,rate_PiSp` with full precision.
std::string mixed_csv(const std::vector<MixedErrorRow>& rows);

}  // namespace axifem
