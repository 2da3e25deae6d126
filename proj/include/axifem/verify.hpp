#pragma once

#include <string>
#include <vector>

#include <cstdint>

#include <Eigen/SparseCore>

#include "axifem/mesh.hpp"
#include "axifem/spaces.hpp"

namespace axifem {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

CheckResult make_check(std::string name, double residual, double tolerance);

/// Numerical rank with pivots below threshold * (largest column norm) dropped.
Index numerical_rank(const Eigen::SparseMatrix<double>& a, double threshold = 1e-10);

/// div curl = 0, curl grad = 0 (global and per element), alternating dimension
/// sum, surjectivity of div, and exactness at B_h and C_h via ranks.
std::vector<CheckResult> check_complex(const MeshLevel& level, FourierMode k);

/// Per triangle, div^k of the canonical interpolant of u against the mean of
/// div_u over the triangle.
CheckResult check_commuting_interp(const MeshLevel& level, FourierMode k, const VectorField3& u,
                                   const ScalarField& div_u, double tolerance = 1e-10);

/// Orthogonality of curl B_h and grad_h D_h, and their dimension count.
std::vector<CheckResult> check_helmholtz(const MeshLevel& level, FourierMode k, std::uint64_t seed = 1);

/// Galerkin coherence between levels l-1 and l of the hierarchy, and pointwise
/// reproduction of coarse functions. Level 1 compares against the identity.
std::vector<CheckResult> check_transfer(const MeshHierarchy& hierarchy, int l, FourierMode k,
                                        std::uint64_t seed = 1);

std::string format_check(const CheckResult& c);

}  // namespace axifem
