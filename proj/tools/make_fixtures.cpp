// Generates the complex-spec fixtures shipped under fixtures/.
#include <iostream>

#include "torsionlab/flat_complex.hpp"

using namespace torsionlab;

namespace {

Matrix pauli(int i) {
  Matrix m(2, 2);
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// amp cos(k.x) with Hermitian amp keeps the coefficient pairing.
void add_cos(TrigPolyField& f, const std::vector<int>& k, const Matrix& amp) {
  std::vector<int> neg(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
  f.add_mode(k, 0.5 * amp);
  f.add_mode(neg, 0.5 * amp.adjoint());
}

void add_sin(TrigPolyField& f, const std::vector<int>& k, const Matrix& amp) {
  std::vector<int> neg(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
  f.add_mode(k, Complex(0.0, -0.5) * amp);
  f.add_mode(neg, Complex(0.0, 0.5) * amp.adjoint());
}

Matrix embed(int total, int offset, const Matrix& block) {
  Matrix m = Matrix::Zero(total, total);
  m.block(offset, offset, block.rows(), block.cols()) = block;
  return m;
}

} // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";

  { // rank-(1,1): scalar metric weight on E^1
    Matrix v0 = Matrix::Zero(2, 2);
    v0(1, 0) = 1.0;
    TrigPolyField h(2, 2, 2);
    Matrix h0 = Matrix::Zero(2, 2);
    h0(0, 0) = 1.0;
    h0(1, 1) = 1.5;
    h.add_mode({0, 0}, h0);
    Matrix e11 = Matrix::Zero(2, 2);
    e11(1, 1) = 1.0;
    add_cos(h, {1, 0}, 0.3 * e11);
    add_sin(h, {0, 1}, 0.2 * e11);
    FlatComplexSpec spec({1, 1}, v0, h, std::nullopt, 2);
    save_complex_spec(spec, dir + "/rank11.json");
  }

  { // rank-(2,2): noncommuting 2x2 metric block on E^1
    Matrix v0 = Matrix::Zero(4, 4);
    v0(2, 0) = 1.0;
    v0(3, 1) = 1.0;
    TrigPolyField h(2, 4, 4);
    Matrix h0 = Matrix::Identity(4, 4);
    h0(2, 2) = 2.0;
    h0(3, 3) = 2.0;
    h.add_mode({0, 0}, h0);
    add_cos(h, {1, 0}, embed(4, 2, 0.5 * pauli(1)));
    add_sin(h, {1, 0}, embed(4, 2, 0.5 * pauli(3)));
    add_cos(h, {0, 1}, embed(4, 2, 0.4 * pauli(3)));
    add_sin(h, {0, 1}, embed(4, 2, -0.4 * pauli(2)));
    FlatComplexSpec spec({2, 2}, v0, h, std::nullopt, 2);
    save_complex_spec(spec, dir + "/rank22.json");
  }

  { // constant metric null fixture
    Matrix v0 = Matrix::Zero(4, 4);
    v0(2, 0) = 1.0;
    v0(3, 1) = 1.0;
    TrigPolyField h = TrigPolyField::constant(2, Matrix::Identity(4, 4));
    FlatComplexSpec spec({2, 2}, v0, h, std::nullopt, 2);
    save_complex_spec(spec, dir + "/const_h.json");
  }

  { // gauge-transformed rank-(1,1)
    Matrix v0 = Matrix::Zero(2, 2);
    v0(1, 0) = 1.0;
    TrigPolyField h(2, 2, 2);
    Matrix h0 = Matrix::Zero(2, 2);
    h0(0, 0) = 1.0;
    h0(1, 1) = 1.8;
    h.add_mode({0, 0}, h0);
    Matrix e11 = Matrix::Zero(2, 2);
    e11(1, 1) = 1.0;
    add_cos(h, {1, 0}, 0.25 * e11);
    add_sin(h, {0, 1}, 0.15 * e11);
    // complex-valued invertible scalar gauge blocks
    TrigPolyField g(2, 2, 2);
    g.add_mode({0, 0}, Matrix::Identity(2, 2));
    Matrix e00 = Matrix::Zero(2, 2);
    e00(0, 0) = 1.0;
    g.add_mode({1, 0}, Complex(0.10, -0.05) * e00 + Complex(0.03, 0.06) * e11);
    g.add_mode({-1, 0}, Complex(0.05, 0.02) * e00 + Complex(-0.04, 0.03) * e11);
    g.add_mode({0, 1}, Complex(-0.06, 0.04) * e00 + Complex(0.05, -0.02) * e11);
    FlatComplexSpec spec({1, 1}, v0, h, g, 2);
    save_complex_spec(spec, dir + "/gauge11.json");
  }

  { // gauge-transformed rank-(2,2)
    Matrix v0 = Matrix::Zero(4, 4);
    v0(2, 0) = 1.0;
    v0(3, 1) = 1.0;
    TrigPolyField h(2, 4, 4);
    Matrix h0 = Matrix::Identity(4, 4);
    h0(2, 2) = 2.0;
    h0(3, 3) = 2.0;
    h.add_mode({0, 0}, h0);
    add_cos(h, {1, 0}, embed(4, 2, 0.3 * pauli(1)));
    add_sin(h, {0, 1}, embed(4, 2, 0.25 * pauli(3)));
    TrigPolyField g(2, 4, 4);
    g.add_mode({0, 0}, Matrix::Identity(4, 4));
    g.add_mode({1, 0}, embed(4, 0, Complex(0.075, 0.0) * pauli(1)) +
                           embed(4, 2, Complex(0.0, 0.06) * pauli(3)));
    g.add_mode({0, -1}, embed(4, 0, Complex(0.0, -0.05) * pauli(2)) +
                            embed(4, 2, Complex(0.04, 0.04) * pauli(1)));
    FlatComplexSpec spec({2, 2}, v0, h, g, 2);
    save_complex_spec(spec, dir + "/gauge22.json");
  }

  { // four-dimensional base, rank-(2,2)
    Matrix v0 = Matrix::Zero(4, 4);
    v0(2, 0) = 1.0;
    v0(3, 1) = 1.0;
    TrigPolyField h(4, 4, 4);
    Matrix h0 = Matrix::Identity(4, 4);
    h0(2, 2) = 2.0;
    h0(3, 3) = 2.0;
    h.add_mode({0, 0, 0, 0}, h0);
    add_cos(h, {1, 0, 0, 0}, embed(4, 2, 0.40 * pauli(1)));
    add_sin(h, {1, 0, 0, 0}, embed(4, 2, 0.25 * pauli(3)));
    add_cos(h, {0, 1, 0, 0}, embed(4, 2, 0.35 * pauli(3)));
    add_sin(h, {0, 1, 0, 0}, embed(4, 2, -0.30 * pauli(2)));
    add_cos(h, {0, 0, 1, 0}, embed(4, 2, 0.30 * pauli(2)));
    add_sin(h, {0, 0, 1, 0}, embed(4, 2, 0.20 * pauli(1)));
    add_cos(h, {0, 0, 0, 1}, embed(4, 2, 0.25 * (pauli(1) + pauli(3))));
    add_sin(h, {0, 0, 0, 1}, embed(4, 2, 0.20 * pauli(2)));
    FlatComplexSpec spec({2, 2}, v0, h, std::nullopt, 4);
    save_complex_spec(spec, dir + "/rank22_p4.json");
  }

  { // metric with an indefinite point (negative fixture for validation)
    Matrix v0 = Matrix::Zero(2, 2);
    v0(1, 0) = 1.0;
    TrigPolyField h(2, 2, 2);
    Matrix h0 = Matrix::Identity(2, 2);
    h.add_mode({0, 0}, h0);
    Matrix e11 = Matrix::Zero(2, 2);
    e11(1, 1) = 1.0;
    add_cos(h, {1, 0}, 1.5 * e11); // dips to 1 - 1.5 < 0
    FlatComplexSpec spec({1, 1}, v0, h, std::nullopt, 2);
    save_complex_spec(spec, dir + "/indefinite_h.json");
  }

  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
