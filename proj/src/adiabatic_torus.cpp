#include "torsionlab/adiabatic_torus.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "torsionlab/char_forms.hpp"
#include "torsionlab/clifford.hpp"
#include "torsionlab/quadrature.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Matrix matrix_sqrt_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("matrix square root: input not positive definite");
  return es.operatorSqrt();
}

} // namespace

TorusOperatorData::TorusOperatorData(const FlatComplexSpec& spec, int n_modes, int fine_factor) {
  if (spec.base_dim() != 2)
    throw std::invalid_argument("TorusOperatorData: the spectral verifier needs p = 2");
  if (n_modes % 2 != 0 || n_modes < 4)
    throw std::invalid_argument("TorusOperatorData: mode count must be even and >= 4");
  n_ = n_modes;
  r_total_ = spec.space()->total();
  const int lam_dim = 4; // Lambda(T*T^2)
  fiber_ = lam_dim * r_total_;

  for (int a = 1; a <= 2; ++a)
    c_.push_back(kron(clifford_c(2, a), Matrix::Identity(r_total_, r_total_)));
  const Matrix tau = clifford_tau(2);
  Matrix eps = Matrix::Zero(r_total_, r_total_);
  for (int i = 0; i < r_total_; ++i) eps(i, i) = spec.space()->parity_sign(i);
  g_fiber_ = kron(tau, eps);

  // Orthonormal eigenbasis of the grading: columns of the Householder Q of
  // the +/- projectors (deterministic).
  const Matrix id = Matrix::Identity(fiber_, fiber_);
  auto eigenbasis = [&](double sign) {
    const Matrix proj = 0.5 * (id + sign * g_fiber_);
    Eigen::ColPivHouseholderQR<Matrix> qr(proj);
    Matrix q = qr.householderQ();
    return Matrix(q.leftCols(fiber_ / 2));
  };
  t_plus_ = eigenbasis(1.0);
  t_minus_ = eigenbasis(-1.0);
  if ((g_fiber_ * t_plus_ - t_plus_).norm() > 1e-12 ||
      (g_fiber_ * t_minus_ + t_minus_).norm() > 1e-12)
    throw std::runtime_error("TorusOperatorData: grading split failed");

  // Coefficient fields in the orthonormal metric frame, sampled finely.
  TorusGrid fine{2, fine_factor * n_modes};
  FormContextPtr ctx = make_form_context(2);
  GridField p_field = GridField::sample(fine, [&](const std::vector<double>& x) {
    return matrix_sqrt_hermitian(spec.h_at(x));
  });
  GridField pinv_field = GridField::sample(fine, [&](const std::vector<double>& x) {
    return matrix_sqrt_hermitian(spec.h_at(x)).inverse().eval();
  });
  std::vector<GridField> dpinv;
  for (int a = 0; a < 2; ++a) dpinv.push_back(pinv_field.axis_derivative(a));

  std::vector<GridField> conn_on, omega_on;
  for (int a = 0; a < 2; ++a) {
    GridField conn(fine, r_total_, r_total_), omg(fine, r_total_, r_total_);
    for (long i = 0; i < fine.total(); ++i) {
      const auto x = fine.point(i);
      const PointData pd = spec.point_data(x, ctx);
      const Matrix& p = p_field.at(i);
      const Matrix& pinv = pinv_field.at(i);
      conn.at(i) = p * (pd.gamma[a] + 0.5 * pd.omega[a]) * pinv + p * dpinv[a].at(i);
      omg.at(i) = p * pd.omega[a] * pinv;
    }
    conn_on.push_back(std::move(conn));
    omega_on.push_back(std::move(omg));
  }
  GridField w1(fine, r_total_, r_total_), w2(fine, r_total_, r_total_);
  for (long i = 0; i < fine.total(); ++i) {
    const auto x = fine.point(i);
    const PointData pd = spec.point_data(x, ctx);
    const Matrix& p = p_field.at(i);
    const Matrix& pinv = pinv_field.at(i);
    w1.at(i) = p * (pd.v + pd.vstar) * pinv;
    w2.at(i) = p * (pd.vstar - pd.v) * pinv;
  }

  const int kwin = n_ - 1;
  for (int a = 0; a < 2; ++a) {
    conn_hat_[a] = fourier_window_2d(conn_on[a], kwin);
    omega_hat_[a] = fourier_window_2d(omega_on[a], kwin);
  }
  w1_hat_ = fourier_window_2d(w1, kwin);
  w2_hat_ = fourier_window_2d(w2, kwin);
}

const Matrix& TorusOperatorData::window(const std::vector<std::vector<Matrix>>& w,
                                        const std::vector<int>& m) const {
  const int kwin = n_ - 1;
  return w[m[0] + kwin][m[1] + kwin];
}

Matrix TorusOperatorData::fiber_template(const std::vector<int>& m, double u, double r) const {
  Matrix t = Matrix::Zero(fiber_, fiber_);
  const Complex irh(0.0, 0.5 * r);
  const Matrix idlam = Matrix::Identity(4, 4);
  for (int a = 0; a < 2; ++a) {
    const Matrix coef = window(conn_hat_[a], m) + irh * window(omega_hat_[a], m);
    t += kron(clifford_c(2, a + 1), coef);
  }
  const Matrix w = window(w1_hat_, m) + Complex(0.0, r) * window(w2_hat_, m);
  t += 0.5 * std::sqrt(u) * kron(idlam, w);
  return t;
}

Matrix TorusOperatorData::companion_template(const std::vector<int>& m, double u) const {
  Matrix t = Matrix::Zero(fiber_, fiber_);
  for (int a = 0; a < 2; ++a)
    t += 0.5 * kron(clifford_c(2, a + 1), window(omega_hat_[a], m));
  t += 0.5 * std::sqrt(u) * kron(Matrix::Identity(4, 4), window(w2_hat_, m));
  return t;
}

Matrix TorusOperatorData::derivative_symbol(const std::vector<int>& k) const {
  Matrix t = Matrix::Zero(fiber_, fiber_);
  for (int a = 0; a < 2; ++a)
    t += Complex(0.0, double(k[a])) * kron(clifford_c(2, a + 1),
                                           Matrix::Identity(r_total_, r_total_));
  return t;
}

double TorusOperatorData::grading_defect(double u, double r) const {
  double defect = 0.0;
  const int kwin = n_ - 1;
  for (int m1 = -kwin; m1 <= kwin; ++m1)
    for (int m2 = -kwin; m2 <= kwin; ++m2) {
      const Matrix t = fiber_template({m1, m2}, u, r);
      const Matrix anti = g_fiber_ * t + t * g_fiber_;
      defect = std::max(defect, anti.cwiseAbs().maxCoeff());
      const Matrix y = companion_template({m1, m2}, u);
      const Matrix anti_y = g_fiber_ * y + y * g_fiber_;
      defect = std::max(defect, anti_y.cwiseAbs().maxCoeff());
    }
  return defect;
}

double TorusOperatorData::hermiticity_defect(double u, double r) const {
  double defect = 0.0;
  const int kwin = n_ - 1;
  for (int m1 = -kwin; m1 <= kwin; ++m1)
    for (int m2 = -kwin; m2 <= kwin; ++m2) {
      const Matrix t = fiber_template({m1, m2}, u, r);
      const Matrix tn = fiber_template({-m1, -m2}, u, r);
      defect = std::max(defect, (t.adjoint() - tn).cwiseAbs().maxCoeff());
    }
  return defect;
}

OperatorBundle assemble_operator(const TorusOperatorData& data, double u, double r) {
  OperatorBundle b;
  b.n_modes = data.n_modes();
  b.u = u;
  b.r = r;
  const int n = data.n_modes();
  const int half = data.half_fiber();
  const long hd = data.half_dimension();
  b.x = Matrix::Zero(hd, hd);
  b.y_plus = Matrix::Zero(hd, hd);

  // Precompute split templates for all offsets.
  const int kwin = n - 1;
  const int w = 2 * kwin + 1;
  std::vector<Matrix> xt(w * w), yt(w * w);
  for (int m1 = -kwin; m1 <= kwin; ++m1)
    for (int m2 = -kwin; m2 <= kwin; ++m2) {
      const Matrix t = data.fiber_template({m1, m2}, u, r);
      const Matrix y = data.companion_template({m1, m2}, u);
      xt[(m1 + kwin) * w + (m2 + kwin)] = data.t_plus().adjoint() * t * data.t_minus();
      yt[(m1 + kwin) * w + (m2 + kwin)] = data.t_plus().adjoint() * y * data.t_minus();
    }
  // Diagnostics at the template level (cheap, exact structure checks).
  b.grading_defect = data.grading_defect(u, r);
  b.hermiticity_defect = data.hermiticity_defect(u, r);

  const int klo = -n / 2, khi = n / 2 - 1;
  std::vector<Matrix> dsym_split(n * n);
  {
    int idx = 0;
    for (int k1 = klo; k1 <= khi; ++k1)
      for (int k2 = klo; k2 <= khi; ++k2, ++idx)
        dsym_split[idx] = data.t_plus().adjoint() * data.derivative_symbol({k1, k2}) *
                          data.t_minus();
  }

  long row = 0;
  for (int k1p = klo; k1p <= khi; ++k1p)
    for (int k2p = klo; k2p <= khi; ++k2p) {
      long col = 0;
      for (int k1 = klo; k1 <= khi; ++k1)
        for (int k2 = klo; k2 <= khi; ++k2) {
          const int m1 = k1p - k1, m2 = k2p - k2;
          const Matrix& tx = xt[(m1 + kwin) * w + (m2 + kwin)];
          const Matrix& ty = yt[(m1 + kwin) * w + (m2 + kwin)];
          b.x.block(row * half, col * half, half, half) = tx;
          b.y_plus.block(row * half, col * half, half, half) = ty;
          if (m1 == 0 && m2 == 0)
            b.x.block(row * half, col * half, half, half) +=
                dsym_split[(k1 - klo) * n + (k2 - klo)];
          ++col;
        }
      ++row;
    }
  return b;
}

DenseBundle assemble_dense(const TorusOperatorData& data, double u, double r) {
  const OperatorBundle b = assemble_operator(data, u, r);
  const long hd = data.half_dimension();
  DenseBundle out;
  out.d = Matrix::Zero(2 * hd, 2 * hd);
  out.d.topRightCorner(hd, hd) = b.x;
  out.d.bottomLeftCorner(hd, hd) = b.x.adjoint();
  out.y = Matrix::Zero(2 * hd, 2 * hd);
  out.y.topRightCorner(hd, hd) = b.y_plus;
  out.y.bottomLeftCorner(hd, hd) = -b.y_plus.adjoint();
  out.g = Matrix::Zero(2 * hd, 2 * hd);
  out.g.topLeftCorner(hd, hd) = Matrix::Identity(hd, hd);
  out.g.bottomRightCorner(hd, hd) = -Matrix::Identity(hd, hd);
  return out;
}

DeltaResult delta_u(const OperatorBundle& bundle) {
  DeltaResult res;
  DenseLU lu(bundle.x);
  Matrix solved = bundle.y_plus;
  lu.solve_in_place(solved);
  res.delta = -2.0 * solved.trace().real();
  res.sigma_min = lu.smallest_singular_value();
  res.gap = res.sigma_min * res.sigma_min;
  return res;
}

double SpectralDelta::heat_trace(double t) const {
  double h = 0.0;
  for (int j = 0; j < lambda.size(); ++j) h += weight(j) * std::exp(-lambda(j) * t);
  return h;
}

SpectralDelta delta_spectral(const OperatorBundle& bundle) {
  SpectralDelta out;
  Matrix u, vh;
  Eigen::VectorXd s;
  dense_svd(bundle.x, u, s, vh);
  // str[D Y e^{-t D^2}] = sum_j -2 sigma_j Re[(U^H Y_{+-} V)_{jj}] e^{-sigma_j^2 t}
  const Matrix z = u.adjoint() * bundle.y_plus * vh.adjoint();
  const int n = int(s.size());
  out.lambda.resize(n);
  out.weight.resize(n);
  for (int j = 0; j < n; ++j) {
    out.lambda(j) = s(j) * s(j);
    out.weight(j) = -2.0 * s(j) * z(j, j).real();
  }
  for (int j = 0; j < n; ++j) out.delta_eig += out.weight(j) / out.lambda(j);
  // quadrature path over [0, T] plus the analytic exponential tail
  const double lmin = out.lambda.minCoeff();
  const double t_cut = 40.0 / std::max(lmin, 1e-12);
  auto h = [&](double t) {
    Eigen::VectorXcd v(1);
    v(0) = out.heat_trace(t);
    return v;
  };
  QuadResult q1 = integrate_adaptive(h, 0.0, 1.0, 1e-13, 1e-11, 4000);
  QuadResult q2 = integrate_adaptive_log(h, 1.0, t_cut, 1e-13, 1e-11, 4000);
  double tail = 0.0;
  for (int j = 0; j < n; ++j) tail += out.weight(j) * std::exp(-out.lambda(j) * t_cut) / out.lambda(j);
  out.delta_quad = q1.value(0).real() + q2.value(0).real() + tail;
  out.quad_error = q1.error_estimate + q2.error_estimate;
  return out;
}

AsymptoticFit small_t_structure(const SpectralDelta& spectral, double window_lo,
                                double window_hi, int samples) {
  auto f = [&](double t) {
    Eigen::VectorXcd v(1);
    v(0) = spectral.heat_trace(t);
    return v;
  };
  return fit_asymptotics(f, window_lo, window_hi, samples, {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0});
}

std::vector<double> extrapolate_adiabatic(const std::vector<double>& u,
                                          const std::vector<double>& delta) {
  const int m = int(u.size());
  if (m < 3) throw std::invalid_argument("extrapolate_adiabatic: need at least 3 samples");
  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const double eps = 1.0 / std::sqrt(u[i]);
    design(i, 0) = 1.0;
    design(i, 1) = eps;
    design(i, 2) = eps * eps;
    rhs(i) = delta[i];
  }
  Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);
  return {sol(0), sol(1), sol(2)};
}

namespace {

SweepResult run_sweep(const FlatComplexSpec& spec, const ExperimentConfig& cfg, int n_modes) {
  SweepResult sweep;
  sweep.n_modes = n_modes;
  TorusOperatorData data(spec, n_modes, cfg.fine_factor);
  for (double u : cfg.u_schedule) {
    OperatorBundle bundle = assemble_operator(data, u, cfg.r);
    DeltaResult d = delta_u(bundle);
    sweep.delta.push_back(d.delta);
    sweep.sigma_min.push_back(d.sigma_min);
  }
  sweep.model_coefficients = extrapolate_adiabatic(cfg.u_schedule, sweep.delta);
  sweep.extrapolated = sweep.model_coefficients[0];
  return sweep;
}

} // namespace

ExperimentReport run_experiment(const FlatComplexSpec& spec, const ExperimentConfig& config) {
  ExperimentReport rep;
  rep.config = config;

  const long dim = 4L * spec.space()->total() * config.n_modes * config.n_modes;
  if (dim > config.dimension_cap) {
    std::ostringstream os;
    os << "dimension " << dim << " exceeds cap " << config.dimension_cap
       << "; reduce the mode count (suggested N <= "
       << int(std::sqrt(double(config.dimension_cap) / (4.0 * spec.space()->total())))
       << ")";
    throw std::length_error(os.str());
  }

  TorusGrid acyclic_grid{2, 16};
  rep.lambda_min = spec.acyclicity_check(acyclic_grid);
  if (rep.lambda_min <= 1e-10) {
    rep.converged = false;
    rep.message = "complex is not acyclic; the adiabatic limit is undefined";
    return rep;
  }

  rep.sweep = run_sweep(spec, config, config.n_modes);

  // Reference side: integral over the torus of the 2-form part of the
  // torsion form (flat base, trivial twist).
  FormContextPtr ctx = make_form_context(2);
  TorsionOptions topts;
  topts.lambda_min = rep.lambda_min;
  TorusGrid rhs_grid{2, config.rhs_grid};
  rep.rhs_integral = integrate_over_base(
      [&](const std::vector<double>& x) {
        return torsion_form(spec.point_data(x, ctx), config.r, topts).value;
      },
      rhs_grid);

  const double lhs = 0.5 * rep.sweep.extrapolated;
  rep.relative_error = std::abs(Complex(lhs, 0.0) - rep.rhs_integral) /
                       std::max(std::abs(rep.rhs_integral), config.error_floor);

  if (config.n_modes_refined > config.n_modes) {
    rep.sweep_refined = run_sweep(spec, config, config.n_modes_refined);
    const double lhs2 = 0.5 * rep.sweep_refined.extrapolated;
    rep.relative_error_refined = std::abs(Complex(lhs2, 0.0) - rep.rhs_integral) /
                                 std::max(std::abs(rep.rhs_integral), config.error_floor);
    rep.refinement_monotone = rep.relative_error_refined <= rep.relative_error;
  }

  // Convergence guard: the sweep must approach its extrapolated limit
  // monotonically along the schedule.
  const double scale = std::max(std::abs(rep.sweep.extrapolated), config.error_floor);
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (std::size_t i = 0; i < config.u_schedule.size(); ++i) {
    const double dev = std::abs(rep.sweep.delta[i] - rep.sweep.extrapolated);
    if (dev > prev + 1e-9 * scale) monotone = false;
    prev = dev;
  }
  rep.converged = monotone;
  rep.message = monotone ? "ok" : "u-sweep deviations from the extrapolated limit are not monotone";
  return rep;
}

} // namespace torsionlab
