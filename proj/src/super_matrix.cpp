#include "torsionlab/super_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

GradedSpace::GradedSpace(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  if (ranks_.size() < 2) throw std::invalid_argument("GradedSpace: need at least two levels");
  offsets_.resize(ranks_.size());
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (ranks_[i] < 0) throw std::invalid_argument("GradedSpace: negative rank");
    offsets_[i] = total_;
    total_ += ranks_[i];
    for (int j = 0; j < ranks_[i]; ++j) degree_of_.push_back(int(i));
  }
  if (total_ < 1) throw std::invalid_argument("GradedSpace: empty space");
}

Matrix GradedSpace::number_operator() const {
  Matrix n = Matrix::Zero(total_, total_);
  for (int i = 0; i < total_; ++i) n(i, i) = double(degree_of_[i]);
  return n;
}

Matrix GradedSpace::grading() const {
  Matrix g = Matrix::Zero(total_, total_);
  for (int i = 0; i < total_; ++i) g(i, i) = parity_sign(i);
  return g;
}

GradedSpacePtr make_graded_space(std::vector<int> ranks) {
  return std::make_shared<const GradedSpace>(std::move(ranks));
}

SuperElement::SuperElement(GradedSpacePtr space, FormContextPtr ctx)
    : space_(std::move(space)), ctx_(std::move(ctx)) {
  const int r = space_->total();
  coeff_.assign(ctx_->dimension(), Matrix::Zero(r, r));
}

SuperElement SuperElement::zero(GradedSpacePtr space, FormContextPtr ctx) {
  return SuperElement(std::move(space), std::move(ctx));
}

SuperElement SuperElement::identity(GradedSpacePtr space, FormContextPtr ctx) {
  SuperElement e(std::move(space), std::move(ctx));
  e.coeff_[0] = Matrix::Identity(e.space_->total(), e.space_->total());
  return e;
}

SuperElement SuperElement::wrap(GradedSpacePtr space, FormContextPtr ctx, const Matrix& m,
                                std::uint32_t mask) {
  SuperElement e(std::move(space), std::move(ctx));
  if (m.rows() != e.space_->total() || m.cols() != e.space_->total())
    throw std::invalid_argument("SuperElement::wrap: matrix size mismatch");
  if (mask >= e.coeff_.size()) throw std::out_of_range("SuperElement::wrap: bad subset mask");
  e.coeff_[mask] = m;
  return e;
}

namespace {
void require_compatible(const SuperElement& a, const SuperElement& b) {
  if (a.space() != b.space() || a.context() != b.context())
    throw std::invalid_argument("SuperElement: space mismatch");
}
} // namespace

SuperElement SuperElement::operator+(const SuperElement& o) const {
  require_compatible(*this, o);
  SuperElement r(space_, ctx_);
  for (std::size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] + o.coeff_[m];
  return r;
}

SuperElement SuperElement::operator-(const SuperElement& o) const {
  require_compatible(*this, o);
  SuperElement r(space_, ctx_);
  for (std::size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] - o.coeff_[m];
  return r;
}

SuperElement SuperElement::operator-() const {
  SuperElement r(space_, ctx_);
  for (std::size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = -coeff_[m];
  return r;
}

SuperElement SuperElement::operator*(Complex s) const {
  SuperElement r(space_, ctx_);
  for (std::size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] * s;
  return r;
}

SuperElement& SuperElement::operator+=(const SuperElement& o) {
  require_compatible(*this, o);
  for (std::size_t m = 0; m < coeff_.size(); ++m) coeff_[m] += o.coeff_[m];
  return *this;
}

SuperElement operator*(Complex s, const SuperElement& a) { return a * s; }

double SuperElement::norm() const {
  double n = 0.0;
  for (const auto& m : coeff_) {
    if (m.size() == 0) continue;
    const auto sv = m.jacobiSvd().singularValues();
    if (sv.size() > 0) n = std::max(n, sv(0));
  }
  return n;
}

double SuperElement::max_abs() const {
  double n = 0.0;
  for (const auto& m : coeff_) n = std::max(n, m.cwiseAbs().maxCoeff());
  return n;
}

std::optional<int> SuperElement::parity(double tol) const {
  // A subset-mask block M has definite total parity q when
  // eps M eps = (-1)^{|S| + q} M.
  const int r = space_->total();
  double even_dev = 0.0, odd_dev = 0.0;
  const double scale = std::max(1.0, max_abs());
  for (std::uint32_t s = 0; s < coeff_.size(); ++s) {
    const Matrix& m = coeff_[s];
    const int fs = popcount(s) % 2;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const int bp = (space_->degree_of(i) - space_->degree_of(j)) % 2;
        const int total = (fs + (bp != 0 ? 1 : 0)) % 2;
        const double a = std::abs(m(i, j));
        if (total == 0)
          odd_dev = std::max(odd_dev, a);
        else
          even_dev = std::max(even_dev, a);
      }
  }
  if (even_dev <= tol * scale) return 0;
  if (odd_dev <= tol * scale) return 1;
  return std::nullopt;
}

std::pair<SuperElement, SuperElement> SuperElement::parity_split() const {
  SuperElement even(space_, ctx_), odd(space_, ctx_);
  const int r = space_->total();
  for (std::uint32_t s = 0; s < coeff_.size(); ++s) {
    const int fs = popcount(s) % 2;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const int bp = (space_->degree_of(i) - space_->degree_of(j)) % 2 != 0 ? 1 : 0;
        const int total = (fs + bp) % 2;
        (total == 0 ? even : odd).coeff_[s](i, j) = coeff_[s](i, j);
      }
  }
  return {even, odd};
}

SuperElement smul(const SuperElement& a, const SuperElement& b) {
  require_compatible(a, b);
  const auto& space = a.space();
  SuperElement r(space, a.context());
  const int n = space->total();
  // eps-conjugation of the left coefficient implements the Koszul sign
  // (-1)^{|M| |beta|} without splitting M by parity.
  Eigen::VectorXd eps(n);
  for (int i = 0; i < n; ++i) eps(i) = space->parity_sign(i);
  const std::size_t dim = a.subsets();
  for (std::uint32_t s = 0; s < dim; ++s) {
    const Matrix& ms = a.block(s);
    if (ms.cwiseAbs().maxCoeff() == 0.0) continue;
    Matrix ms_conj = eps.asDiagonal() * ms * eps.asDiagonal();
    for (std::uint32_t t = 0; t < dim; ++t) {
      if ((s & t) != 0) continue;
      const Matrix& nt = b.block(t);
      if (nt.cwiseAbs().maxCoeff() == 0.0) continue;
      const double sign = double(wedge_sign(s, t));
      if (popcount(t) % 2 == 0)
        r.block(s | t) += sign * (ms * nt);
      else
        r.block(s | t) += sign * (ms_conj * nt);
    }
  }
  return r;
}

Form supertrace(const SuperElement& a) {
  Form f(a.context());
  const auto& space = a.space();
  const int n = space->total();
  for (std::uint32_t s = 0; s < a.subsets(); ++s) {
    Complex tr = 0.0;
    const Matrix& m = a.block(s);
    for (int i = 0; i < n; ++i) tr += space->parity_sign(i) * m(i, i);
    f.coeff(s) = tr;
  }
  return f;
}

SuperElement supercommutator(const SuperElement& a, const SuperElement& b) {
  require_compatible(a, b);
  auto pa = a.parity(), pb = b.parity();
  if (pa && pb) {
    const double sign = ((*pa) * (*pb)) % 2 == 0 ? 1.0 : -1.0;
    return smul(a, b) - sign * smul(b, a);
  }
  auto [ae, ao] = a.parity_split();
  auto [be, bo] = b.parity_split();
  SuperElement r = SuperElement::zero(a.space(), a.context());
  r += smul(ae, be) - smul(be, ae);
  r += smul(ae, bo) - smul(bo, ae);
  r += smul(ao, be) - smul(be, ao);
  r += smul(ao, bo) + smul(bo, ao);
  return r;
}

SuperElement superexp(const SuperElement& a) {
  auto p = a.parity(1e-12);
  if (!p || *p != 0)
    throw std::invalid_argument("superexp: element is not even");
  const double eta = a.norm();
  int squarings = 0;
  if (eta > 0.5) squarings = int(std::ceil(std::log2(eta / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);
  const SuperElement b = a * Complex(scale, 0.0);
  SuperElement sum = SuperElement::identity(a.space(), a.context());
  SuperElement term = SuperElement::identity(a.space(), a.context());
  constexpr int kTerms = 24;
  for (int k = 1; k <= kTerms; ++k) {
    term = smul(term, b) * Complex(1.0 / double(k), 0.0);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = smul(sum, sum);
  return sum;
}

SuperElement number_operator(GradedSpacePtr space, FormContextPtr ctx) {
  Matrix n = space->number_operator();
  return SuperElement::wrap(std::move(space), std::move(ctx), n, 0);
}

} // namespace torsionlab
