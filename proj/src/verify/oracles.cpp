#include "anneal_probe/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace anneal_probe::oracle {

SymEigen jacobi_eigen(SymMatrix m) {
  const int n = m.n;
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;
  double norm = 0.0;
  for (double x : m.a) norm += x * x;
  norm = std::sqrt(norm);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (std::sqrt(off) <= 1e-15 * std::max(norm, 1e-300)) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return m(i, i) < m(j, j); });
  SymEigen out;
  for (int i : order) {
    out.values.push_back(m(i, i));
    std::vector<double> col(n);
    for (int k = 0; k < n; ++k) col[k] = v[k][i];
    out.vectors.push_back(col);
  }
  return out;
}

SymMatrix real_pauli_matrix(int n_qubits, const std::vector<std::pair<double, std::string>>& terms) {
  const int dim = 1 << n_qubits;
  SymMatrix m{dim, std::vector<double>(static_cast<std::size_t>(dim * dim), 0.0)};
  for (const auto& [coeff, word] : terms) {
    if (static_cast<int>(word.size()) != n_qubits) throw std::invalid_argument("word length");
    // Column j maps to row j ^ flip with a sign from the Z letters.
    for (int j = 0; j < dim; ++j) {
      int row = j;
      double sign = 1.0;
      for (int q = 0; q < n_qubits; ++q) {
        const int bit = 1 << (n_qubits - 1 - q);
        switch (word[q]) {
          case 'I': break;
          case 'X': row ^= bit; break;
          case 'Z': if (j & bit) sign = -sign; break;
          default: throw std::invalid_argument("real_pauli_matrix supports I, X, Z only");
        }
      }
      m(row, j) += coeff * sign;
    }
  }
  return m;
}

TwoLevel two_level(double a, double b, double c, double d) {
  const double r = std::hypot(a, b);
  // Eigenvectors of r (sin t X + cos t Z); the X, Z mixing gives c cos t - d sin t.
  return {2.0 * r, std::abs(c * b - d * a) / r};
}

std::vector<double> direct_dft_magnitudes(const std::vector<double>& x, double dt) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      s += x[j] * std::polar(1.0, phase);
    }
    out[k] = std::abs(s) * dt / std::sqrt(2.0 * std::numbers::pi);
  }
  return out;
}

}  // namespace anneal_probe::oracle
