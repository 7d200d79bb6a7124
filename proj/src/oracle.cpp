#include "mfbm/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "mfbm/report.hpp"
#include "mfbm/spectrum.hpp"

namespace mfbm::oracle {

GridSpec::GridSpec(int n_) : n(n_) {
  if (n < 2) throw std::invalid_argument("GridSpec: N must be >= 2");
  nodes.resize(n);
  for (int i = 0; i < n; ++i) nodes[i] = (i + 0.5) / n;
  weight = 1.0 / n;
}

double kernel_value(const HurstParam& h, KernelKind kind, double s, double t) {
  const double two_h = 2.0 * h.h();
  const double bm = std::min(s, t);
  const double fbm =
      0.5 * (std::pow(s, two_h) + std::pow(t, two_h) - std::pow(std::fabs(t - s), two_h));
  switch (kind) {
    case KernelKind::bm:
      return bm;
    case KernelKind::fbm:
      return fbm;
    case KernelKind::mixed:
      return bm + fbm;
  }
  throw std::logic_error("kernel_value: bad kind");
}

DiscretizedOperator build_covariance(const HurstParam& h, const GridSpec& grid, KernelKind kind) {
  const int n = grid.n;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = kernel_value(h, kind, grid.nodes[i], grid.nodes[j]) * grid.weight;
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return DiscretizedOperator{std::move(m), grid, kind, h.h()};
}

std::vector<double> symmetric_eigenvalues_desc(const Eigen::MatrixXd& sym) {
  if (sym.rows() != sym.cols()) throw std::invalid_argument("eigensolver: matrix not square");
  if (!sym.isApprox(sym.transpose(), 1e-12))
    throw std::invalid_argument("eigensolver: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver: failed to converge");
  const auto& ev = solver.eigenvalues();  // ascending
  std::vector<double> out(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) out[i] = ev(ev.size() - 1 - i);
  return out;
}

EigenSequence numeric_eigenvalues(const DiscretizedOperator& op, int count) {
  if (count < 1) throw std::invalid_argument("numeric_eigenvalues: count must be >= 1");
  if (count > op.grid.n / 4)
    throw std::invalid_argument("numeric_eigenvalues: count must be <= N/4");
  auto all = symmetric_eigenvalues_desc(op.matrix);
  all.resize(count);
  return EigenSequence(std::move(all));
}

EigenSequence extrapolated_eigenvalues(const HurstParam& h, int base_n, KernelKind kind,
                                       int count) {
  if (count > base_n / 4)
    throw std::invalid_argument("extrapolated_eigenvalues: count must be <= base N/4");
  double p1 = std::min(2.0 * h.h() + 1.0, 2.0);
  double p2 = std::max(2.0 * h.h() + 1.0, 2.0);
  if (kind == KernelKind::bm || p2 - p1 < 0.1) {
    p1 = 2.0;
    p2 = 4.0;
  }
  std::array<std::vector<double>, 3> levels;
  std::array<double, 3> sizes{};
  for (int k = 0; k < 3; ++k) {
    const int n = base_n << k;
    sizes[k] = n;
    levels[k] = symmetric_eigenvalues_desc(build_covariance(h, GridSpec(n), kind).matrix);
  }
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    Eigen::Matrix3d a;
    Eigen::Vector3d rhs;
    for (int k = 0; k < 3; ++k) {
      a(k, 0) = 1.0;
      a(k, 1) = std::pow(sizes[k], -p1);
      a(k, 2) = std::pow(sizes[k], -p2);
      rhs(k) = levels[k][i];
    }
    out[i] = a.fullPivLu().solve(rhs)(0);
  }
  return EigenSequence(std::move(out));
}

LiDistortion li_distortion(const EigenSequence& target, const EigenSequence& model) {
  if (target.size() != model.size())
    throw std::invalid_argument("li_distortion: sequences must have the same length");
  const std::size_t m = target.size();
  LiDistortion out;
  double log_prod = 0.0;
  std::vector<double> dev(m);
  for (std::size_t n = 1; n <= m; ++n) {
    const double ratio = model.at(n) / target.at(n);
    if (!(ratio > 0.0)) throw std::invalid_argument("li_distortion: sign mismatch in sequences");
    log_prod += std::log(ratio);
    dev[n - 1] = std::fabs(1.0 - target.at(n) / model.at(n));
    out.deviation_sum += dev[n - 1];
  }
  out.value = std::exp(log_prod);
  // Divergence check: the tail of the deviations must decay.  Compare the
  // mean deviation over the last quarter with the preceding quarter.
  if (m >= 8) {
    const std::size_t q = m / 4;
    double last = 0.0, prev = 0.0;
    for (std::size_t i = m - q; i < m; ++i) last += dev[i];
    for (std::size_t i = m - 2 * q; i < m - q; ++i) prev += dev[i];
    out.converged = last <= prev || last < 1e-14 * m;
    // Crude geometric remainder estimate from the observed decay.
    if (out.converged && prev > 0.0 && last < prev)
      out.tail_estimate = last * (last / prev) / (1.0 - last / prev);
    else
      out.tail_estimate = last;
  }
  return out;
}

std::vector<SpectrumRow> spectrum_table(const HurstParam& h, const EigenSequence& numeric,
                                        int first, int last) {
  if (first < 1 || last < first || static_cast<std::size_t>(last) > numeric.size())
    throw std::invalid_argument("spectrum_table: bad index range");
  std::vector<SpectrumRow> rows;
  rows.reserve(last - first + 1);
  for (int n = first; n <= last; ++n) {
    const double num = numeric.at(n);
    const double closed = spectrum::lambda_mixed(h, n).lambda;
    rows.push_back({n, num, closed, std::fabs(closed - num) / num});
  }
  return rows;
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  report::Csv csv;
  csv.header = {"n", "lambda_numeric", "lambda_closed_form", "rel_err"};
  for (const auto& r : rows)
    csv.add_row({static_cast<double>(r.n), r.lambda_numeric, r.lambda_closed_form, r.rel_err});
  return csv.to_string();
}

}  // namespace mfbm::oracle
