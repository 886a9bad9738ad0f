#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace torsionlab {

using Complex = std::complex<double>;

/// Complex exterior algebra on p anticommuting generators dx^1..dx^p.
/// Elements are stored densely over generator subsets encoded as bitmasks;
/// bit (a-1) set means dx^a is present, and the canonical monomial orders
/// generators ascending.
///
/// The context also fixes the square root of sqrt(-1) used by the
/// phi normalization (degree-i forms scaled by (2*pi*sqrt(-1))^{-i/2}).
/// Even-degree outputs do not depend on that choice.
class FormContext {
public:
  explicit FormContext(int p, Complex sqrt_of_i = default_sqrt_of_i());

  int generators() const { return p_; }
  std::size_t dimension() const { return std::size_t{1} << p_; }

  /// (2*pi*sqrt(-1))^{-degree/2} with the branch fixed by sqrt_of_i.
  Complex phi_factor(int degree) const;

  static Complex default_sqrt_of_i(); // exp(i*pi/4)

private:
  int p_;
  Complex sqrt_of_i_;
  std::vector<Complex> phi_; // cached per degree 0..p
};

using FormContextPtr = std::shared_ptr<const FormContext>;

FormContextPtr make_form_context(int p,
                                 Complex sqrt_of_i = FormContext::default_sqrt_of_i());

/// Element of the exterior algebra attached to a FormContext.
class Form {
public:
  Form() = default;
  explicit Form(FormContextPtr ctx);
  Form(FormContextPtr ctx, Complex scalar);

  static Form generator(FormContextPtr ctx, int axis); // dx^axis, 1-based
  static Form monomial(FormContextPtr ctx, std::uint32_t mask, Complex coeff);

  const FormContextPtr& context() const { return ctx_; }
  bool valid() const { return ctx_ != nullptr; }

  Complex coeff(std::uint32_t mask) const { return coeff_[mask]; }
  Complex& coeff(std::uint32_t mask) { return coeff_[mask]; }
  std::size_t size() const { return coeff_.size(); }

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const;
  Form operator*(Complex s) const;
  Form& operator+=(const Form& o);
  Form& operator*=(Complex s);

  /// Max coefficient magnitude.
  double norm() const;

  std::vector<Complex> to_vector() const { return coeff_; }
  static Form from_vector(FormContextPtr ctx, const std::vector<Complex>& v);

private:
  FormContextPtr ctx_;
  std::vector<Complex> coeff_;
};

Form operator*(Complex s, const Form& f);

/// Exterior product. Throws on context mismatch.
Form wedge(const Form& a, const Form& b);

/// Degree-i part of a; throws if i is out of [0, p].
Form component(const Form& a, int degree);

/// Scale the degree-i component by (2*pi*sqrt(-1))^{-i/2}.
Form phi_normalize(const Form& a);

/// Sign of reordering the concatenation (S, T) of two disjoint ascending
/// monomials into one ascending monomial: (-1)^{#{(s,t): s in S, t in T, s > t}}.
int wedge_sign(std::uint32_t s_mask, std::uint32_t t_mask);

int popcount(std::uint32_t mask);

} // namespace torsionlab
