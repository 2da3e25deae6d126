#pragma once

#include <iosfwd>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "axifem/quadrature.hpp"
#include "axifem/spaces.hpp"

namespace axifem {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct SparseOperator {
  SparseMatrix matrix;
  bool symmetric = false;

  Index rows() const { return static_cast<Index>(matrix.rows()); }
  Index cols() const { return static_cast<Index>(matrix.cols()); }
};

/// Element matrix of (u, v)_r on C_1 with the canonical (outward) local basis.
Eigen::Matrix4d mass_c_element(const Triangle& tri, FourierMode k,
                               const QuadratureRule& rule = assembly_rule());
/// Element matrix of the Lambda^k form with the canonical local basis.
Eigen::Matrix4d lambda_element(const Triangle& tri, FourierMode k,
                               const QuadratureRule& rule = assembly_rule());

/// (u, v)_r + (div^k u, div^k v)_r on C_h.
SparseOperator assemble_lambda(const CSpace& space);
SparseOperator assemble_mass_c(const CSpace& space);
/// Diagonal, entries int_K r.
SparseOperator assemble_mass_d(const MeshLevel& level);
/// D_h x C_h coupling: entry (K, j) = int_K div^k(phi_j) r.
SparseOperator assemble_div(const CSpace& space);
/// D_h x C_h: value of div^k(phi_j) on K.
SparseOperator assemble_div_values(const CSpace& space);
/// C_h x B_h: canonical C_h DOFs of curl^k of each B_h basis function.
SparseOperator assemble_curl(const BSpace& b_space, const CSpace& c_space);
/// B_h x A_h: B_h DOFs of grad^k of each A_h basis function.
SparseOperator assemble_grad(const ASpace& a_space, const BSpace& b_space);

/// Entries (F, phi_j)_r.
Vector assemble_load(const CSpace& space, const VectorField3& f);
/// Entries (f, chi_K)_r.
Vector assemble_load_d(const MeshLevel& level, const ScalarField& f);

/// L^2_r norm of u_h - u.
double l2r_error(const CSpace& space, const Vector& coeffs, const VectorField3& exact);
double l2r_error(const BSpace& space, const Vector& coeffs, const VectorField3& exact);
double l2r_error(const DSpace& space, const Vector& coeffs, const ScalarField& exact);
/// Weighted L^2 norm with weight r^power of a continuous P1 function minus u.
double weighted_error_p1(const MeshLevel& level, const Vector& vertex_values,
                         const ScalarField& exact, int power);
/// Weighted L^2 norm with weight r^power of a Nedelec field minus v.
double weighted_error_nedelec(const MeshLevel& level, const Vector& edge_moments,
                              const VectorField2& exact, int power);

/// Largest |A - A^T| entry.
double asymmetry(const SparseMatrix& a);

/// "row col value" per line, 0-based.
void write_coordinate(const SparseOperator& op, std::ostream& out);

}  // namespace axifem
