#pragma once

// Direct interface-matching solve of a layered stack, independent of the
// transfer-matrix chain. Each layer carries a forward and a backward wave
// referenced to its own left and right faces so no amplitude grows with kd.

#include "alberich/acoustics/transfer_matrix.hpp"

#include <Eigen/Dense>

#include <complex>

namespace oracle {

using alberich::acoustics::cplx;
using alberich::acoustics::LayerStack;

struct Result {
  cplx r{};
  cplx tau{};
  double R = 0.0;
  double T = 0.0;
};

inline Result interface_solve(const LayerStack& s, double f) {
  using alberich::acoustics::characteristic_impedance;
  using alberich::acoustics::wavenumber;
  const int n = static_cast<int>(s.layers.size());
  const int unknowns = 2 * n + 2; // r, (A_j, B_j), tau
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(unknowns, unknowns);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(unknowns);
  const cplx zf = characteristic_impedance(s.front);
  const cplx zb = characteristic_impedance(s.back);
  const cplx i(0.0, 1.0);
  auto a = [](int j) { return 1 + 2 * j; };
  auto b = [](int j) { return 2 + 2 * j; };
  const int tau = unknowns - 1;

  // Interface q sits between region q-1 and region q (front = -1, back = n).
  int row = 0;
  for (int q = 0; q <= n; ++q) {
    // left side values
    if (q == 0) {
      rhs(row) -= 1.0;
      m(row, 0) += 1.0; // p: 1 + r
      rhs(row + 1) -= 1.0 / zf;
      m(row + 1, 0) -= 1.0 / zf; // v: (1 - r) / zf
    } else {
      const auto& l = s.layers[q - 1];
      const cplx e = std::exp(-i * wavenumber(l.medium, f) * l.thickness_m);
      const cplx z = characteristic_impedance(l.medium);
      m(row, a(q - 1)) += e;
      m(row, b(q - 1)) += 1.0;
      m(row + 1, a(q - 1)) += e / z;
      m(row + 1, b(q - 1)) -= 1.0 / z;
    }
    // minus right side values
    if (q == n) {
      m(row, tau) -= 1.0;
      m(row + 1, tau) -= 1.0 / zb;
    } else {
      const auto& l = s.layers[q];
      const cplx e = std::exp(-i * wavenumber(l.medium, f) * l.thickness_m);
      const cplx z = characteristic_impedance(l.medium);
      m(row, a(q)) -= 1.0;
      m(row, b(q)) -= e;
      m(row + 1, a(q)) -= 1.0 / z;
      m(row + 1, b(q)) += e / z;
    }
    row += 2;
  }
  const Eigen::VectorXcd x = m.fullPivLu().solve(rhs);
  Result out;
  out.r = x(0);
  out.tau = x(tau);
  out.R = std::norm(out.r);
  out.T = std::norm(out.tau) * (1.0 / zb).real() / (1.0 / zf).real();
  return out;
}

} // namespace oracle
