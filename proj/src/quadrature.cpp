#include "torsionlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace torsionlab {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1].
const double kKronrodNodes[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

const double kKronrodWeights[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

// Gauss-7 weights aligned with the odd Kronrod nodes (indices 1,3,...,13).
const double kGaussWeights[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Interval {
  double a, b;
  Eigen::VectorXcd value;
  double error;
};

void gk15(const QuadIntegrand& f, double a, double b, Eigen::VectorXcd& value, double& error,
          int& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Eigen::VectorXcd fk[15];
  for (int i = 0; i < 15; ++i) {
    fk[i] = f(mid + half * kKronrodNodes[i]);
    ++evals;
  }
  Eigen::VectorXcd kron = Eigen::VectorXcd::Zero(fk[0].size());
  Eigen::VectorXcd gauss = Eigen::VectorXcd::Zero(fk[0].size());
  for (int i = 0; i < 15; ++i) kron += kKronrodWeights[i] * fk[i];
  for (int i = 0; i < 7; ++i) gauss += kGaussWeights[i] * fk[2 * i + 1];
  kron *= half;
  gauss *= half;
  value = kron;
  // Conservative estimate: the raw Gauss/Kronrod difference.
  error = (kron - gauss).cwiseAbs().maxCoeff();
}

} // namespace

QuadResult integrate_adaptive(const QuadIntegrand& f, double a, double b, double abs_tol,
                              double rel_tol, int max_intervals) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive: empty interval");
  QuadResult res;
  std::vector<Interval> heap;
  auto cmp = [](const Interval& x, const Interval& y) { return x.error < y.error; };

  Interval first{a, b, {}, 0.0};
  gk15(f, a, b, first.value, first.error, res.evaluations);
  heap.push_back(std::move(first));

  auto total_value = [&]() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(heap[0].value.size());
    for (const auto& iv : heap) v += iv.value;
    return v;
  };
  auto total_error = [&]() {
    double e = 0.0;
    for (const auto& iv : heap) e += iv.error;
    return e;
  };

  while (int(heap.size()) < max_intervals) {
    const double err = total_error();
    const double scale = total_value().cwiseAbs().maxCoeff();
    if (err <= abs_tol || err <= rel_tol * scale) break;
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Interval worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) { // interval at roundoff floor
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), cmp);
      break;
    }
    Interval left{worst.a, mid, {}, 0.0}, right{mid, worst.b, {}, 0.0};
    gk15(f, left.a, left.b, left.value, left.error, res.evaluations);
    gk15(f, right.a, right.b, right.value, right.error, res.evaluations);
    heap.push_back(std::move(left));
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(std::move(right));
    std::push_heap(heap.begin(), heap.end(), cmp);
  }
  res.value = total_value();
  res.error_estimate = total_error();
  res.converged = res.error_estimate <= abs_tol ||
                  res.error_estimate <= rel_tol * res.value.cwiseAbs().maxCoeff();
  return res;
}

QuadResult integrate_adaptive_log(const QuadIntegrand& f, double a, double b, double abs_tol,
                                  double rel_tol, int max_intervals) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("integrate_adaptive_log: bad range");
  auto g = [&](double s) {
    const double t = std::exp(s);
    return (f(t) * t).eval();
  };
  return integrate_adaptive(g, std::log(a), std::log(b), abs_tol, rel_tol, max_intervals);
}

} // namespace torsionlab
