#include "torsionlab/flat_complex.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace torsionlab {

SuperElement PointData::gamma_form() const {
  SuperElement s = SuperElement::zero(space, ctx);
  for (std::size_t a = 0; a < gamma.size(); ++a)
    s += SuperElement::wrap(space, ctx, gamma[a], std::uint32_t{1} << a);
  return s;
}

SuperElement PointData::omega_form() const {
  SuperElement s = SuperElement::zero(space, ctx);
  for (std::size_t a = 0; a < omega.size(); ++a)
    s += SuperElement::wrap(space, ctx, omega[a], std::uint32_t{1} << a);
  return s;
}

FlatComplexSpec::FlatComplexSpec(std::vector<int> ranks, Matrix v0, TrigPolyField h,
                                 std::optional<TrigPolyField> g, int base_dim)
    : space_(make_graded_space(std::move(ranks))), p_(base_dim), v0_(std::move(v0)),
      h_(std::move(h)), g_(std::move(g)) {
  check_structure();
}

void FlatComplexSpec::check_structure() const {
  const int r = space_->total();
  if (v0_.rows() != r || v0_.cols() != r)
    throw std::invalid_argument("FlatComplexSpec: v0 size mismatch");
  // Degree +1 block structure.
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (v0_(i, j) != Complex{0.0, 0.0} &&
          space_->degree_of(i) != space_->degree_of(j) + 1)
        throw std::invalid_argument("FlatComplexSpec: v0 is not of degree +1");
    }
  const double v2 = (v0_ * v0_).cwiseAbs().maxCoeff();
  if (v2 > 1e-14 * std::max(1.0, v0_.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("FlatComplexSpec: v0^2 != 0");
  if (h_.rows() != r || h_.cols() != r)
    throw std::invalid_argument("FlatComplexSpec: h size mismatch");
  if (h_.axes() != p_) throw std::invalid_argument("FlatComplexSpec: h axes mismatch");
  if (!h_.is_hermitian_paired(1e-12))
    throw std::invalid_argument("FlatComplexSpec: h coefficients are not Hermitian-paired");
  auto check_block_diag = [&](const TrigPolyField& f, const char* name) {
    for (const auto& m : f.modes())
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          if (m.c(i, j) != Complex{0.0, 0.0} && space_->degree_of(i) != space_->degree_of(j)) {
            std::ostringstream os;
            os << "FlatComplexSpec: " << name << " is not block-diagonal";
            throw std::invalid_argument(os.str());
          }
  };
  check_block_diag(h_, "h");
  if (g_) {
    if (g_->rows() != r || g_->cols() != r || g_->axes() != p_)
      throw std::invalid_argument("FlatComplexSpec: g size mismatch");
    check_block_diag(*g_, "g");
  }
}

Matrix FlatComplexSpec::h_at(const std::vector<double>& x) const { return h_.eval(x); }

Matrix FlatComplexSpec::v_at(const std::vector<double>& x) const {
  if (!g_) return v0_;
  const Matrix g = g_->eval(x);
  return g.partialPivLu().solve(v0_ * g);
}

Matrix FlatComplexSpec::gamma_at(const std::vector<double>& x, int axis) const {
  if (!g_) return Matrix::Zero(space_->total(), space_->total());
  const Matrix g = g_->eval(x);
  return g.partialPivLu().solve(g_->eval_derivative(x, axis));
}

Matrix adjoint_v(const Matrix& v, const Matrix& h) {
  Eigen::FullPivLU<Matrix> lu(h);
  if (!lu.isInvertible()) throw std::invalid_argument("adjoint_v: singular metric");
  return lu.solve(v.adjoint() * h);
}

Matrix FlatComplexSpec::adjoint_of(const Matrix& v, const Matrix& h) { return adjoint_v(v, h); }

PointData FlatComplexSpec::point_data(const std::vector<double>& x, FormContextPtr ctx) const {
  PointData pd;
  pd.x = x;
  pd.space = space_;
  pd.ctx = std::move(ctx);
  pd.h = h_at(x);
  pd.v = v_at(x);
  pd.vstar = adjoint_v(pd.v, pd.h);
  pd.gamma.resize(p_);
  pd.omega.resize(p_);
  Eigen::FullPivLU<Matrix> hlu(pd.h);
  for (int a = 0; a < p_; ++a) {
    pd.gamma[a] = gamma_at(x, a);
    const Matrix dh = h_.eval_derivative(x, a);
    pd.omega[a] = hlu.solve(dh - pd.gamma[a].adjoint() * pd.h - pd.h * pd.gamma[a]);
  }
  return pd;
}

ValidationReport FlatComplexSpec::validate_flatness(const TorusGrid& grid, double tol) const {
  if (grid.total() <= 0) throw std::invalid_argument("validate_flatness: empty grid");
  ValidationReport rep;
  const int r = space_->total();

  // Metric positivity.
  rep.h_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (long i = 0; i < grid.total(); ++i) {
    const Matrix hx = h_at(grid.point(i));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hx + hx.adjoint()));
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < rep.h_min_eigenvalue) {
      rep.h_min_eigenvalue = lmin;
      rep.h_worst_point = i;
    }
  }
  if (rep.h_min_eigenvalue <= 0.0) {
    rep.passed = false;
    std::ostringstream os;
    os << "metric not positive definite (min eigenvalue " << rep.h_min_eigenvalue
       << " at grid point " << rep.h_worst_point << ")";
    rep.message = os.str();
    return rep;
  }

  // Spectral residuals of dGamma + Gamma^Gamma and dv + [Gamma, v].
  std::vector<GridField> gamma_fields;
  for (int a = 0; a < p_; ++a)
    gamma_fields.push_back(
        GridField::sample(grid, [&](const std::vector<double>& x) { return gamma_at(x, a); }));
  GridField v_field =
      GridField::sample(grid, [&](const std::vector<double>& x) { return v_at(x); });

  double flat_res = 0.0, diff_res = 0.0;
  for (int a = 0; a < p_; ++a) {
    GridField dv_a = v_field.axis_derivative(a);
    for (long i = 0; i < grid.total(); ++i) {
      const Matrix resid =
          dv_a.at(i) + gamma_fields[a].at(i) * v_field.at(i) - v_field.at(i) * gamma_fields[a].at(i);
      diff_res = std::max(diff_res, resid.cwiseAbs().maxCoeff());
    }
    for (int b = a + 1; b < p_; ++b) {
      // curvature component F_ab = d_a Gamma_b - d_b Gamma_a + [Gamma_a, Gamma_b]
      GridField dGb = gamma_fields[b].axis_derivative(a);
      GridField dGa = gamma_fields[a].axis_derivative(b);
      for (long i = 0; i < grid.total(); ++i) {
        const Matrix f = dGb.at(i) - dGa.at(i) +
                         gamma_fields[a].at(i) * gamma_fields[b].at(i) -
                         gamma_fields[b].at(i) * gamma_fields[a].at(i);
        flat_res = std::max(flat_res, f.cwiseAbs().maxCoeff());
      }
    }
  }
  rep.flatness_residual = flat_res;
  rep.differential_residual = diff_res;
  rep.passed = flat_res <= tol && diff_res <= tol;
  if (!rep.passed) {
    std::ostringstream os;
    os << "flatness residuals exceed tolerance " << tol << " (dGamma+Gamma^2: " << flat_res
       << ", dv+[Gamma,v]: " << diff_res << ")";
    rep.message = os.str();
  } else {
    rep.message = "ok";
  }
  (void)r;
  return rep;
}

double FlatComplexSpec::acyclicity_check(const TorusGrid& grid) const {
  double lmin = std::numeric_limits<double>::infinity();
  for (long i = 0; i < grid.total(); ++i) {
    const auto x = grid.point(i);
    const Matrix v = v_at(x);
    const Matrix vs = adjoint_v(v, h_at(x));
    const Matrix lap = (v + vs) * (v + vs);
    // (v+v*)^2 is self-adjoint for the weighted product; its spectrum is real.
    Eigen::ComplexEigenSolver<Matrix> es(lap, false);
    for (int j = 0; j < es.eigenvalues().size(); ++j)
      lmin = std::min(lmin, es.eigenvalues()(j).real());
  }
  return lmin;
}

// ---------------------------------------------------------------------------
// JSON fixture format

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("complex scalar must be [re, im]");
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a 2d array");
  const int rows = int(j.size());
  const int cols = int(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (int(j[i].size()) != cols) throw std::invalid_argument("ragged matrix");
    for (int c = 0; c < cols; ++c) m(i, c) = parse_complex(j[i][c]);
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(i, c)));
    rows.push_back(row);
  }
  return rows;
}

TrigPolyField parse_field(const json& j, int axes, int size) {
  TrigPolyField f(axes, size, size);
  if (!j.contains("coeffs")) throw std::invalid_argument("field needs coeffs");
  for (const auto& e : j.at("coeffs")) {
    std::vector<int> k = e.at("k").get<std::vector<int>>();
    if (int(k.size()) != axes) throw std::invalid_argument("wave vector dimension mismatch");
    f.add_mode(k, parse_matrix(e.at("matrix")));
  }
  return f;
}

json field_to_json(const TrigPolyField& f) {
  json coeffs = json::array();
  for (const auto& m : f.modes())
    coeffs.push_back({{"k", m.k}, {"matrix", matrix_to_json(m.c)}});
  return {{"K", f.max_order()}, {"coeffs", coeffs}};
}

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

} // namespace

FlatComplexSpec parse_complex_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("complex-spec JSON parse error: ") + e.what());
  }
  const auto ranks = j.at("ranks").get<std::vector<int>>();
  int total = 0;
  for (int r : ranks) total += r;
  std::vector<double> periods = j.value("periods", std::vector<double>{});
  const int p = periods.empty() ? j.value("p", 2) : int(periods.size());
  for (double per : periods)
    if (std::abs(per - kTwoPi) > 1e-9)
      throw std::invalid_argument("complex-spec: only period 2*pi per axis is supported");

  // v0 given either as per-degree blocks or as a full matrix.
  Matrix v0 = Matrix::Zero(total, total);
  const auto& jv = j.at("v0");
  if (jv.is_array() && !jv.empty() && jv[0].is_array() && !jv[0].empty() &&
      jv[0][0].is_array() && jv[0][0].size() > 0 && jv[0][0][0].is_array()) {
    // list of blocks: block i maps E^i (rank r_i) to E^{i+1} (rank r_{i+1})
    if (int(jv.size()) != int(ranks.size()) - 1)
      throw std::invalid_argument("v0 block count must be #ranks - 1");
    int off = 0;
    std::vector<int> offsets(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      offsets[i] = off;
      off += ranks[i];
    }
    for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
      Matrix blk = parse_matrix(jv[i]);
      if (blk.rows() != ranks[i + 1] || blk.cols() != ranks[i])
        throw std::invalid_argument("v0 block size mismatch");
      v0.block(offsets[i + 1], offsets[i], ranks[i + 1], ranks[i]) = blk;
    }
  } else {
    v0 = parse_matrix(jv);
  }

  TrigPolyField h = parse_field(j.at("h"), p, total);
  std::optional<TrigPolyField> g;
  if (j.contains("g") && !j.at("g").is_null()) g = parse_field(j.at("g"), p, total);
  return FlatComplexSpec(ranks, v0, h, g, p);
}

FlatComplexSpec load_complex_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open complex spec: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_complex_spec(ss.str());
}

void save_complex_spec(const FlatComplexSpec& spec, const std::string& path) {
  json j;
  std::vector<int> ranks;
  for (int i = 0; i < spec.space()->levels(); ++i) ranks.push_back(spec.space()->rank(i));
  j["ranks"] = ranks;
  j["periods"] = std::vector<double>(spec.base_dim(), kTwoPi);
  j["v0"] = matrix_to_json(spec.v0());
  j["h"] = field_to_json(spec.h_field());
  if (spec.g_field()) j["g"] = field_to_json(*spec.g_field());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write complex spec: " + path);
  out << j.dump(2) << "\n";
}

} // namespace torsionlab
