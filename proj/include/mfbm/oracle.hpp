#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mfbm/eigen_sequence.hpp"
#include "mfbm/hurst.hpp"

namespace mfbm::oracle {

/// Midpoint grid on [0,1]: nodes t_i = (i - 1/2)/N, uniform weights 1/N.
struct GridSpec {
  explicit GridSpec(int n);
  int n;
  std::vector<double> nodes;
  double weight;  // 1/N, identical for every node
};

enum class KernelKind { bm, fbm, mixed };

/// Covariance kernel value at (s, t) for the requested process family.
/// bm: s ^ t;  fbm: (s^2H + t^2H - |t-s|^2H)/2;  mixed: their sum.
double kernel_value(const HurstParam& h, KernelKind kind, double s, double t);

/// Weight-symmetrized Nystrom matrix of the covariance operator on a grid.
/// With uniform midpoint weights, D^(1/2) K D^(1/2) = K / N, so the matrix
/// stays symmetric and a plain symmetric eigensolver applies.
struct DiscretizedOperator {
  Eigen::MatrixXd matrix;
  GridSpec grid;
  KernelKind kind;
  double h;
};

DiscretizedOperator build_covariance(const HurstParam& h, const GridSpec& grid, KernelKind kind);

/// Abstract symmetric dense eigensolver seam: eigenvalues of a symmetric
/// matrix in descending order.  Backed by a deterministic vetted routine
/// (tridiagonalization + implicit QL); no randomized solvers.
std::vector<double> symmetric_eigenvalues_desc(const Eigen::MatrixXd& sym);

/// Leading `count` numeric eigenvalues of the discretized operator.
/// Requires count <= N/4; accuracy degrades beyond that range.
EigenSequence numeric_eigenvalues(const DiscretizedOperator& op, int count);

/// Eigenvalues extrapolated to the continuum limit from the nested grids
/// N, 2N, 4N.  The midpoint-rule error carries the orders 2H+1 (kernel cusp)
/// and 2 (diagonal kink); both leading terms are removed per index, which
/// exposes the residual of the closed-form asymptotics well below the raw
/// discretization error.
EigenSequence extrapolated_eigenvalues(const HurstParam& h, int base_n, KernelKind kind,
                                       int count);

/// Multiplicative distortion prod model_n / target_n between two eigenvalue
/// sequences, with the convergence diagnostic sum |1 - target_n / model_n|.
/// `converged` is false when the partial sums of the deviations show no
/// decay over the provided range (the product is then not trustworthy).
struct LiDistortion {
  double value = 1.0;
  double deviation_sum = 0.0;  // sum |1 - target/model| over provided terms
  double tail_estimate = 0.0;  // estimated remainder of the deviation sum
  bool converged = true;
};

LiDistortion li_distortion(const EigenSequence& target, const EigenSequence& model);

/// One row of the spectrum comparison table exported as CSV by the CLI.
struct SpectrumRow {
  int n;
  double lambda_numeric;
  double lambda_closed_form;
  double rel_err;
};

std::vector<SpectrumRow> spectrum_table(const HurstParam& h, const EigenSequence& numeric,
                                        int first, int last);

/// CSV rendering of a spectrum table: header
/// n,lambda_numeric,lambda_closed_form,rel_err with full double precision.
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);

}  // namespace mfbm::oracle
