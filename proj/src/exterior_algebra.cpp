#include "torsionlab/exterior_algebra.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace torsionlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

Complex FormContext::default_sqrt_of_i() {
  return std::polar(1.0, kPi / 4.0);
}

FormContext::FormContext(int p, Complex sqrt_of_i) : p_(p), sqrt_of_i_(sqrt_of_i) {
  if (p < 1 || p > 20) throw std::invalid_argument("FormContext: generator count out of range");
  // zeta = (2 pi sqrt(-1))^{-1/2} with the chosen branch; phi on degree i is zeta^i.
  const Complex zeta = 1.0 / (std::sqrt(2.0 * kPi) * sqrt_of_i_);
  phi_.resize(p + 1);
  Complex acc = 1.0;
  for (int i = 0; i <= p; ++i) {
    phi_[i] = acc;
    acc *= zeta;
  }
}

Complex FormContext::phi_factor(int degree) const {
  if (degree < 0 || degree > p_) throw std::out_of_range("phi_factor: degree out of range");
  return phi_[degree];
}

FormContextPtr make_form_context(int p, Complex sqrt_of_i) {
  return std::make_shared<const FormContext>(p, sqrt_of_i);
}

Form::Form(FormContextPtr ctx) : ctx_(std::move(ctx)) {
  coeff_.assign(ctx_->dimension(), Complex{0.0, 0.0});
}

Form::Form(FormContextPtr ctx, Complex scalar) : Form(std::move(ctx)) {
  coeff_[0] = scalar;
}

Form Form::generator(FormContextPtr ctx, int axis) {
  if (axis < 1 || axis > ctx->generators())
    throw std::out_of_range("Form::generator: axis out of range");
  Form f(std::move(ctx));
  f.coeff_[std::uint32_t{1} << (axis - 1)] = 1.0;
  return f;
}

Form Form::monomial(FormContextPtr ctx, std::uint32_t mask, Complex coeff) {
  Form f(std::move(ctx));
  if (mask >= f.coeff_.size()) throw std::out_of_range("Form::monomial: mask out of range");
  f.coeff_[mask] = coeff;
  return f;
}

namespace {
void require_same_context(const Form& a, const Form& b) {
  if (a.context() != b.context())
    throw std::invalid_argument("Form: context mismatch");
}
} // namespace

Form Form::operator+(const Form& o) const {
  require_same_context(*this, o);
  Form r(ctx_);
  for (std::size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] + o.coeff_[m];
  return r;
}

Form Form::operator-(const Form& o) const {
  require_same_context(*this, o);
  Form r(ctx_);
  for (std::size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] - o.coeff_[m];
  return r;
}

Form Form::operator-() const {
  Form r(ctx_);
  for (std::size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = -coeff_[m];
  return r;
}

Form Form::operator*(Complex s) const {
  Form r(ctx_);
  for (std::size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] * s;
  return r;
}

Form& Form::operator+=(const Form& o) {
  require_same_context(*this, o);
  for (std::size_t m = 0; m < coeff_.size(); ++m) coeff_[m] += o.coeff_[m];
  return *this;
}

Form& Form::operator*=(Complex s) {
  for (auto& c : coeff_) c *= s;
  return *this;
}

double Form::norm() const {
  double n = 0.0;
  for (const auto& c : coeff_) n = std::max(n, std::abs(c));
  return n;
}

Form Form::from_vector(FormContextPtr ctx, const std::vector<Complex>& v) {
  Form f(std::move(ctx));
  if (v.size() != f.coeff_.size())
    throw std::invalid_argument("Form::from_vector: size mismatch");
  f.coeff_ = v;
  return f;
}

Form operator*(Complex s, const Form& f) { return f * s; }

int popcount(std::uint32_t mask) { return std::popcount(mask); }

int wedge_sign(std::uint32_t s_mask, std::uint32_t t_mask) {
  // Count transpositions moving each generator of T left past the
  // generators of S that exceed it.
  int swaps = 0;
  for (std::uint32_t t = t_mask; t != 0; t &= t - 1) {
    const int bit = std::countr_zero(t);
    swaps += std::popcount(s_mask >> (bit + 1)); // generators of S above t's
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

Form wedge(const Form& a, const Form& b) {
  require_same_context(a, b);
  Form r(a.context());
  const std::size_t dim = a.size();
  for (std::uint32_t s = 0; s < dim; ++s) {
    const Complex ca = a.coeff(s);
    if (ca == Complex{0.0, 0.0}) continue;
    for (std::uint32_t t = 0; t < dim; ++t) {
      if ((s & t) != 0) continue;
      const Complex cb = b.coeff(t);
      if (cb == Complex{0.0, 0.0}) continue;
      r.coeff(s | t) += double(wedge_sign(s, t)) * ca * cb;
    }
  }
  return r;
}

Form component(const Form& a, int degree) {
  if (degree < 0 || degree > a.context()->generators())
    throw std::out_of_range("component: degree out of range");
  Form r(a.context());
  for (std::uint32_t m = 0; m < a.size(); ++m)
    if (popcount(m) == degree) r.coeff(m) = a.coeff(m);
  return r;
}

Form phi_normalize(const Form& a) {
  Form r(a.context());
  for (std::uint32_t m = 0; m < a.size(); ++m)
    r.coeff(m) = a.coeff(m) * a.context()->phi_factor(popcount(m));
  return r;
}

} // namespace torsionlab
