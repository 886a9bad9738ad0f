#include <doctest.h>

#include <cmath>

#include "torsionlab/flat_complex.hpp"
#include "torsionlab/rng.hpp"
#include "torsionlab/superconnection.hpp"

using namespace torsionlab;

namespace {

std::string fixture(const std::string& name) {
  return std::string(TORSIONLAB_FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST_CASE("constant spec validates exactly") {
  FlatComplexSpec spec = load_complex_spec(fixture("const_h.json"));
  TorusGrid grid{2, 16};
  ValidationReport rep = spec.validate_flatness(grid);
  CHECK(rep.passed);
  CHECK(rep.flatness_residual == 0.0);
  CHECK(rep.differential_residual == 0.0);
  CHECK(rep.h_min_eigenvalue == doctest::Approx(1.0));
}

TEST_CASE("gauge-built specs satisfy flatness spectrally") {
  for (const char* name : {"gauge11.json", "gauge22.json"}) {
    FlatComplexSpec spec = load_complex_spec(fixture(name));
    TorusGrid grid{2, 32};
    ValidationReport rep = spec.validate_flatness(grid, 1e-10);
    INFO(name, " residuals ", rep.flatness_residual, " ", rep.differential_residual);
    CHECK(rep.passed);
  }
}

TEST_CASE("broken differential is rejected at construction") {
  // 3-term complex where consecutive blocks do not compose to zero.
  Matrix v0 = Matrix::Zero(3, 3);
  v0(1, 0) = 1.0; // E^0 -> E^1
  v0(2, 1) = 1.0; // E^1 -> E^2, so v0^2 != 0
  TrigPolyField h = TrigPolyField::constant(2, Matrix::Identity(3, 3));
  CHECK_THROWS_AS(FlatComplexSpec({1, 1, 1}, v0, h, std::nullopt, 2), std::invalid_argument);
  // degree bookkeeping: an entry outside the +1 blocks
  Matrix bad = Matrix::Zero(3, 3);
  bad(2, 0) = 1.0; // jumps two degrees
  CHECK_THROWS_AS(FlatComplexSpec({1, 1, 1}, bad, h, std::nullopt, 2), std::invalid_argument);
}

TEST_CASE("metric adjoint") {
  // h = I: plain conjugate transpose
  Rng rng(3);
  Matrix v = rng.matrix_normal(3, 3);
  CHECK((adjoint_v(v, Matrix::Identity(3, 3)) - v.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

  // ranks (1,1), v = 1, h = diag(1, rho): v* = rho
  Matrix v2 = Matrix::Zero(2, 2);
  v2(1, 0) = 1.0;
  const double rho = 1.37;
  Matrix h = Matrix::Identity(2, 2);
  h(1, 1) = rho;
  const Matrix vs = adjoint_v(v2, h);
  CHECK(std::abs(vs(0, 1) - rho) < 1e-14);

  // inner-product identity <v a, b>_h = <a, v* b>_h on random vectors
  Matrix hr = rng.matrix_normal(3, 3);
  hr = (hr * hr.adjoint() + 0.5 * Matrix::Identity(3, 3)).eval(); // positive definite
  Matrix vr = rng.matrix_normal(3, 3);
  const Matrix vsr = adjoint_v(vr, hr);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector a = rng.matrix_normal(3, 1);
    const Vector b = rng.matrix_normal(3, 1);
    const Complex lhs = (vr * a).adjoint() * hr * b;
    const Complex rhs = a.adjoint() * hr * (vsr * b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (a.norm() * b.norm() * hr.norm() + 1.0));
  }

  Matrix sing = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(adjoint_v(v2, sing), std::invalid_argument);
}

TEST_CASE("omega examples") {
  auto ctx = make_form_context(2);
  // constant h: omega = 0
  FlatComplexSpec cs = load_complex_spec(fixture("const_h.json"));
  PointData pd = cs.point_data({0.4, 1.7}, ctx);
  CHECK(pd.omega_form().max_abs() == 0.0);
  for (const auto& g : pd.gamma) CHECK(g.cwiseAbs().maxCoeff() == 0.0);

  // h = diag(1, rho(x)): omega = diag(0, d rho / rho)
  FlatComplexSpec r11 = load_complex_spec(fixture("rank11.json"));
  const std::vector<double> x{0.9, 2.2};
  PointData p = r11.point_data(x, ctx);
  for (int a = 0; a < 2; ++a) {
    const double rho = r11.h_at(x)(1, 1).real();
    const Complex drho = r11.h_field().eval_derivative(x, a)(1, 1);
    CHECK(std::abs(p.omega[a](0, 0)) < 1e-14);
    CHECK(std::abs(p.omega[a](1, 1) - drho / rho) < 1e-13);
  }

  // conformal scalar metric rho(x) I: omega = (d rho / rho) I
  Matrix v0 = Matrix::Zero(2, 2);
  v0(1, 0) = 1.0;
  TrigPolyField h(2, 2, 2);
  h.add_mode({0, 0}, 1.6 * Matrix::Identity(2, 2));
  Matrix half = 0.25 * Matrix::Identity(2, 2);
  h.add_mode({1, 1}, half);
  h.add_mode({-1, -1}, half);
  FlatComplexSpec conf({1, 1}, v0, h, std::nullopt, 2);
  PointData pc = conf.point_data(x, ctx);
  const Complex rho = conf.h_at(x)(0, 0);
  for (int a = 0; a < 2; ++a) {
    const Complex expected = conf.h_field().eval_derivative(x, a)(0, 0) / rho;
    CHECK(std::abs(pc.omega[a](0, 0) - expected) < 1e-13);
    CHECK(std::abs(pc.omega[a](1, 1) - expected) < 1e-13);
    CHECK(std::abs(pc.omega[a](0, 1)) < 1e-14);
  }
}

TEST_CASE("point data is deterministic") {
  auto ctx = make_form_context(2);
  FlatComplexSpec spec = load_complex_spec(fixture("gauge22.json"));
  const std::vector<double> x{1.234, 5.678};
  PointData a = spec.point_data(x, ctx);
  PointData b = spec.point_data(x, ctx);
  CHECK((a.v - b.v).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.vstar - b.vstar).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 2; ++i) CHECK((a.omega[i] - b.omega[i]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vstar squares to zero and omega matches the adjoint-connection contract") {
  auto ctx = make_form_context(2);
  FlatComplexSpec spec = load_complex_spec(fixture("gauge22.json"));
  PointData pd = spec.point_data({0.3, 0.8}, ctx);
  CHECK((pd.vstar * pd.vstar).cwiseAbs().maxCoeff() < 1e-12);
  // blockwise adjoint identity v* = h^{-1} v^H h
  CHECK((pd.h * pd.vstar - pd.v.adjoint() * pd.h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("acyclicity checks") {
  // ranks (1,1), v = 1, h = I: lambda_min = 1
  Matrix v0 = Matrix::Zero(2, 2);
  v0(1, 0) = 1.0;
  TrigPolyField hid = TrigPolyField::constant(2, Matrix::Identity(2, 2));
  FlatComplexSpec unit({1, 1}, v0, hid, std::nullopt, 2);
  TorusGrid grid{2, 8};
  CHECK(unit.acyclicity_check(grid) == doctest::Approx(1.0));

  // v = 0: flagged by lambda_min = 0
  FlatComplexSpec degen({1, 1}, Matrix::Zero(2, 2), hid, std::nullopt, 2);
  CHECK(degen.acyclicity_check(grid) == doctest::Approx(0.0));

  // ranks (1,1), v = 1, h = diag(1, rho): lambda_min = min rho
  FlatComplexSpec r11 = load_complex_spec(fixture("rank11.json"));
  TorusGrid fine{2, 64};
  double min_rho = 1e300;
  for (long i = 0; i < fine.total(); ++i)
    min_rho = std::min(min_rho, r11.h_at(fine.point(i))(1, 1).real());
  CHECK(std::abs(r11.acyclicity_check(fine) - min_rho) < 1e-10);
}

TEST_CASE("gauge covariance of supertraces") {
  // A spec built from (v0, g, h) is gauge-equivalent to the trivial-gauge
  // spec with metric g^{-H} h g^{-1}; supertraces of covariant combinations
  // must agree pointwise.
  auto ctx = make_form_context(2);
  FlatComplexSpec spec_a = load_complex_spec(fixture("gauge22.json"));
  REQUIRE(spec_a.g_field().has_value());

  // Build the transformed metric as a trig field from fine samples.
  const int r = spec_a.space()->total();
  TorusGrid fine{2, 32};
  GridField hb_field = GridField::sample(fine, [&](const std::vector<double>& x) {
    const Matrix g = spec_a.g_field()->eval(x);
    const Matrix gi = g.inverse();
    return Matrix(gi.adjoint() * spec_a.h_at(x) * gi);
  });
  auto window = fourier_window_2d(hb_field, 10);
  TrigPolyField hb(2, r, r);
  for (int m1 = -10; m1 <= 10; ++m1)
    for (int m2 = -10; m2 <= 10; ++m2) {
      const Matrix& c = window[m1 + 10][m2 + 10];
      if (c.cwiseAbs().maxCoeff() > 1e-15) hb.add_mode({m1, m2}, c);
    }
  std::vector<int> ranks;
  for (int i = 0; i < spec_a.space()->levels(); ++i) ranks.push_back(spec_a.space()->rank(i));
  FlatComplexSpec spec_b(ranks, spec_a.v0(), hb, std::nullopt, 2);

  for (const auto& x : {std::vector<double>{0.7, 1.9}, std::vector<double>{3.1, 0.2}}) {
    PointData pa = spec_a.point_data(x, ctx);
    PointData pb = spec_b.point_data(x, ctx);
    for (double u : {1.0, 4.0}) {
      const SuperElement da = d_u(pa, u), db = d_u(pb, u);
      const SuperElement d2a = smul(da, da), d2b = smul(db, db);
      const SuperElement na = number_operator(pa.space, ctx);
      const SuperElement nb = number_operator(pb.space, ctx);
      const Form fa = supertrace(smul(na, smul(d2a, superexp(d2a * Complex(0.5, 0)))));
      const Form fb = supertrace(smul(nb, smul(d2b, superexp(d2b * Complex(0.5, 0)))));
      CHECK((fa - fb).norm() <= 1e-9 * std::max(1.0, fa.norm()));
    }
  }
}

TEST_CASE("fixture JSON round trip") {
  FlatComplexSpec spec = load_complex_spec(fixture("rank22.json"));
  const std::string tmp = "roundtrip_rank22.json";
  save_complex_spec(spec, tmp);
  FlatComplexSpec again = load_complex_spec(tmp);
  auto ctx = make_form_context(2);
  const std::vector<double> x{0.5, 1.5};
  CHECK((spec.h_at(x) - again.h_at(x)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((spec.v_at(x) - again.v_at(x)).cwiseAbs().maxCoeff() < 1e-15);
  std::remove(tmp.c_str());
}

TEST_CASE("malformed JSON raises a parse error") {
  CHECK_THROWS_WITH_AS(parse_complex_spec("{ not json"),
                       doctest::Contains("JSON parse error"), std::invalid_argument);
}
