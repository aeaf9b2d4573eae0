#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Eigenpairs sorted by decreasing |eigenvalue| (positive first on ties);
/// column k of `eigenvectors` belongs to eigenvalues[k].
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  double residual = 0.0;  // off-diagonal Frobenius norm at termination
  int sweeps = 0;
};

struct JacobiOptions {
  double tolerance = 1e-12;
  int max_sweeps = 50;
  double symmetry_tolerance = 1e-14;
};

/// D^{1/2} W D^{1/2} with D the diagonal of block weights. Same spectrum as the
/// integral operator of the graphon.
Matrix kernel_matrix(const StepGraphon& h);

/// Cyclic Jacobi rotations. Throws InvalidArgument for non-square or
/// non-symmetric input and NotConverged (carrying the residual) when the sweep
/// cap is reached first.
Spectrum eigendecompose(const Matrix& m, const JacobiOptions& options = {});

/// t(C_k, H) as the power sum of kernel eigenvalues, k >= 3.
double cycle_density_spectral(const StepGraphon& h, unsigned k);

/// t_{ij}(P_{k+1}, H) = ((W D)^{k-1} W)_{ij}, exactly. k >= 1.
Rational path_operator_entry(const StepGraphon& h, std::size_t i, std::size_t j, unsigned k);

/// Eigenvalues closer than this are treated as one eigenspace when the
/// spectral coefficients are grouped. A numerical convention only.
inline constexpr double kEigenvalueGrouping = 1e-9;

struct SubdivisionCheck {
  unsigned k;  // the subdivided edge became a path with k edges
  Rational density1;
  Rational density2;
  double spectral1;  // sum_n a_n lambda_n^k
  double spectral2;
};

struct SpectralGroup {
  double eigenvalue;
  double coefficient1;  // sum of a_n over the group (0 if absent)
  double coefficient2;  // sum of b_n over the group
};

/// Harness that walks through the subdivision argument showing that equal
/// simple-graph densities force equal multigraph densities.
struct MultigraphCheckReport {
  LabeledMultigraph pattern;
  bool simple_densities_agree = false;  // up to the requested node count
  bool has_parallel_edge = false;
  NodeId pair_u = 0, pair_v = 0;        // the pair that gets subdivided
  std::vector<SubdivisionCheck> subdivisions{};  // k = 2..6, as far as the exact evaluator allows
  Rational density1{}, density2{};
  double spectral_density1 = 0.0;       // sum_n a_n lambda_n
  double spectral_density2 = 0.0;
  std::vector<SpectralGroup> groups{};

  bool densities_equal() const { return density1 == density2; }
  bool subdivisions_equal() const;
};

MultigraphCheckReport multigraph_from_simple_check(const StepGraphon& h1, const StepGraphon& h2,
                                                   const LabeledMultigraph& f, std::size_t max_simple_nodes);

std::string format_report(const MultigraphCheckReport& r);

}  // namespace graphlim
