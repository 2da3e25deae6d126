#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "axifem/assembly.hpp"
#include "axifem/mesh.hpp"
#include "axifem/spaces.hpp"

namespace axifem {

enum class SmootherKind { Multiplicative, Additive };
enum class SweepDirection { Forward, Backward };
enum class RateStatistic { Arithmetic, Geometric };

SmootherKind parse_smoother(const std::string& name);
RateStatistic parse_rate_statistic(const std::string& name);

/// Prolongation C_{l-1} -> C_l: fine canonical DOFs of each coarse basis
/// function. Exact because C_1 restricted to a child stays in C_1.
SparseOperator build_prolongation(const MeshLevel& coarse, const MeshLevel& fine,
                                  const RefinementMap& map, FourierMode k);

/// Vertex-patch block smoother for the Lambda operator of one level.
class PatchSmoother {
 public:
  struct Block {
    Index center = kNoIndex;
    std::vector<Index> dofs;
    Eigen::LLT<Eigen::MatrixXd> factor;
  };

  PatchSmoother(const CSpace& space, const SparseMatrix& lambda);

  /// One multiplicative sweep over the patches in ascending (Forward) or
  /// descending (Backward) vertex order.
  void sweep(Vector& x, const Vector& f, SweepDirection direction) const;
  /// Damped additive (Jacobi-type) patch correction.
  void additive(Vector& x, const Vector& f, double damping) const;

  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  void correct(Vector& x, const Vector& f, const Block& block) const;

  const SparseMatrix* lambda_;
  std::vector<Block> blocks_;
};

struct MultigridOptions {
  SmootherKind smoother = SmootherKind::Multiplicative;
  double additive_damping = 0.25;
};

/// V-cycle hierarchy for Lambda_l u = f on the C_h spaces of a mesh hierarchy.
class VCycle {
 public:
  VCycle(const MeshHierarchy& hierarchy, FourierMode k, MultigridOptions options = {});

  int num_levels() const { return static_cast<int>(levels_.size()); }
  FourierMode mode() const { return k_; }
  const SparseMatrix& lambda(int l) const { return at(l).lambda.matrix; }
  /// C_{l-1} -> C_l, for l >= 2.
  const SparseMatrix& prolongation(int l) const { return at(l).prolongation.matrix; }
  const PatchSmoother& smoother(int l) const { return at(l).smoother; }
  Index dim(int l) const { return static_cast<Index>(at(l).lambda.matrix.rows()); }

  /// mg_l(u, f).
  Vector cycle(int l, const Vector& u, const Vector& f) const;
  Vector coarse_solve(const Vector& f) const;
  /// Error propagation E_l e = mg_l(e, 0).
  Vector error_operator(int l, const Vector& e) const { return cycle(l, e, Vector::Zero(e.size())); }
  double lambda_norm(int l, const Vector& x) const;
  double lambda_inner(int l, const Vector& x, const Vector& y) const;

 private:
  struct Level {
    Level(SparseOperator lambda_op, SparseOperator prolongation_op, const CSpace& space);
    SparseOperator lambda;
    SparseOperator prolongation;
    PatchSmoother smoother;
  };
  const Level& at(int l) const { return *levels_.at(static_cast<std::size_t>(l - 1)); }
  void smooth(int l, Vector& x, const Vector& f, SweepDirection direction) const;

  FourierMode k_;
  MultigridOptions options_;
  std::vector<std::unique_ptr<Level>> levels_;
  Eigen::LLT<Eigen::MatrixXd> coarse_factor_;
};

struct SolveOptions {
  double tolerance = 1e-7;
  int max_iterations = 200;
  RateStatistic statistic = RateStatistic::Arithmetic;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  /// Lambda-norms of the iterates (f = 0) or of the updates (f != 0);
  /// entry 0 is the initial value.
  std::vector<double> norms;
  double rate = 0.0;
};

/// Iterate x <- mg_L(x, f) on the finest level until the tracked Lambda-norm
/// drops below tolerance relative to its initial value.
SolveReport solve_mg(const VCycle& mg, const Vector& f, const Vector& x0, const SolveOptions& options = {});

/// Mean of consecutive norm ratios.
double contraction_rate(const std::vector<double>& norms, RateStatistic statistic);

/// Uniform [-1, 1] entries from a seeded 64-bit generator.
Vector random_vector(Index n, std::uint64_t seed);

/// Largest Lambda(E u, u) / Lambda(u, u) found by power iteration on E_l
/// from `probes` random starts.
double estimate_contraction(const VCycle& mg, int l, int iterations, int probes, std::uint64_t seed);

/// grad_h d: the C_h vector g with M_C g = -B^T d.
Vector grad_h(const CSpace& space, const Vector& d);

}  // namespace axifem
