#pragma once

#include <complex>
#include <vector>

/// Reference computations written without the library's numerical back ends,
/// used to cross-check it.
namespace anneal_probe::oracle {

/// Row-major real symmetric matrix.
struct SymMatrix {
  int n = 0;
  std::vector<double> a;
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

struct SymEigen {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[i] belongs to values[i]
};

/// Cyclic Jacobi rotations until the off-diagonal mass is below 1e-15 of the norm.
SymEigen jacobi_eigen(SymMatrix m);

/// Dense matrix of a real Pauli sum (letters I, X, Z only), qubit 0 leftmost.
SymMatrix real_pauli_matrix(int n_qubits, const std::vector<std::pair<double, std::string>>& terms);

/// H = a X + b Z: energies -+sqrt(a^2 + b^2) and |<1| c X + d Z |0>|.
struct TwoLevel {
  double gap = 0.0;
  double element = 0.0;
};
TwoLevel two_level(double a, double b, double c, double d);

/// Plain O(N^2) DFT magnitudes |sum_j x_j e^{-2 pi i k j / N}| * dt / sqrt(2 pi) for k < N.
std::vector<double> direct_dft_magnitudes(const std::vector<double>& x, double dt);

}  // namespace anneal_probe::oracle
