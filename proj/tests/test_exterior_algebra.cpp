#include <doctest.h>

#include "torsionlab/exterior_algebra.hpp"
#include "torsionlab/rng.hpp"

using namespace torsionlab;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

Form random_form(Rng& rng, const FormContextPtr& ctx) {
  Form f(ctx);
  for (std::uint32_t m = 0; m < f.size(); ++m) f.coeff(m) = rng.complex_normal();
  return f;
}

Form random_homogeneous(Rng& rng, const FormContextPtr& ctx, int degree) {
  Form f(ctx);
  for (std::uint32_t m = 0; m < f.size(); ++m)
    if (popcount(m) == degree) f.coeff(m) = rng.complex_normal();
  return f;
}
} // namespace

TEST_CASE("generators anticommute and square to zero") {
  auto ctx = make_form_context(3);
  Form dx1 = Form::generator(ctx, 1);
  Form dx2 = Form::generator(ctx, 2);
  const Form ab = wedge(dx1, dx2);
  const Form ba = wedge(dx2, dx1);
  CHECK((ab + ba).norm() == 0.0);
  CHECK(ab.coeff(0b011) == Complex{1.0, 0.0});
  CHECK(wedge(dx1, dx1).norm() == 0.0);
}

TEST_CASE("bilinear expansion (2+dx1)^(3+dx2)") {
  auto ctx = make_form_context(2);
  Form a = Form(ctx, 2.0) + Form::generator(ctx, 1);
  Form b = Form(ctx, 3.0) + Form::generator(ctx, 2);
  Form w = wedge(a, b);
  CHECK(w.coeff(0b00) == Complex{6.0, 0.0});
  CHECK(w.coeff(0b01) == Complex{3.0, 0.0});
  CHECK(w.coeff(0b10) == Complex{2.0, 0.0});
  CHECK(w.coeff(0b11) == Complex{1.0, 0.0});
}

TEST_CASE("context mismatch is rejected") {
  auto ctx1 = make_form_context(2);
  auto ctx2 = make_form_context(2);
  CHECK_THROWS_AS(wedge(Form(ctx1, 1.0), Form(ctx2, 1.0)), std::invalid_argument);
}

TEST_CASE("associativity on random forms") {
  auto ctx = make_form_context(4);
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Form a = random_form(rng, ctx), b = random_form(rng, ctx), c = random_form(rng, ctx);
    Form lhs = wedge(wedge(a, b), c);
    Form rhs = wedge(a, wedge(b, c));
    const double scale = a.norm() * b.norm() * c.norm();
    CHECK((lhs - rhs).norm() <= 1e-13 * scale);
  }
}

TEST_CASE("supercommutativity for homogeneous forms") {
  auto ctx = make_form_context(4);
  Rng rng(11);
  for (int da = 0; da <= 4; ++da)
    for (int db = 0; db <= 4; ++db) {
      Form a = random_homogeneous(rng, ctx, da);
      Form b = random_homogeneous(rng, ctx, db);
      const double sign = (da * db) % 2 == 0 ? 1.0 : -1.0;
      CHECK((wedge(a, b) - sign * wedge(b, a)).norm() <= 1e-13 * (a.norm() * b.norm() + 1.0));
    }
}

TEST_CASE("component partition reassembles the form") {
  auto ctx = make_form_context(3);
  Rng rng(3);
  Form a = random_form(rng, ctx);
  Form sum(ctx);
  for (int d = 0; d <= 3; ++d) sum += component(a, d);
  CHECK((sum - a).norm() == 0.0);
  CHECK(component(Form(ctx, 6.0) + 3.0 * Form::generator(ctx, 1), 0).coeff(0) ==
        Complex{6.0, 0.0});
  CHECK(component(Form(ctx, 6.0) + 3.0 * Form::generator(ctx, 1), 1).coeff(1) ==
        Complex{3.0, 0.0});
  CHECK_THROWS_AS(component(a, 5), std::out_of_range);
}

TEST_CASE("phi normalization factors") {
  auto ctx = make_form_context(4);
  // degree 0 untouched
  CHECK(phi_normalize(Form(ctx, 5.0)).coeff(0) == Complex{5.0, 0.0});
  // degree 2: (2 pi i)^{-1}
  Form d12 = Form::monomial(ctx, 0b0011, 1.0);
  const Complex expected2 = 1.0 / (2.0 * kPi * Complex(0.0, 1.0));
  CHECK(std::abs(phi_normalize(d12).coeff(0b0011) - expected2) < 1e-15);
  // degree 4: -(4 pi^2)^{-1}
  Form d1234 = Form::monomial(ctx, 0b1111, 1.0);
  const Complex expected4 = -1.0 / (4.0 * kPi * kPi);
  CHECK(std::abs(phi_normalize(d1234).coeff(0b1111) - expected4) < 1e-15);
}

TEST_CASE("phi factors multiply across degrees") {
  auto ctx = make_form_context(4);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      const Complex prod = ctx->phi_factor(i) * ctx->phi_factor(j);
      CHECK(std::abs(prod - ctx->phi_factor(i + j)) < 1e-15);
    }
}

TEST_CASE("even-degree phi output independent of the sqrt branch") {
  auto ctx_a = make_form_context(4, std::polar(1.0, kPi / 4.0));
  auto ctx_b = make_form_context(4, std::polar(1.0, 5.0 * kPi / 4.0)); // the other root
  for (int deg = 0; deg <= 4; deg += 2)
    CHECK(std::abs(ctx_a->phi_factor(deg) - ctx_b->phi_factor(deg)) < 1e-15);
}
