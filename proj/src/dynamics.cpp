#include "anneal_probe/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "anneal_probe/errors.hpp"

namespace anneal_probe {

namespace {

constexpr double kNormDriftTol = 1e-8;
constexpr double kTraceTol = 1e-6;
constexpr double kHermitianTol = 1e-8;
constexpr double kPositivityTol = 1e-8;
const Complex kMinusI(0.0, -1.0);

std::size_t step_count(double duration, double dt) {
  if (!(dt > 0.0)) throw ContractViolation("time step must be positive");
  if (duration < 0.0) throw ContractViolation("t_end must not precede t_start");
  if (duration == 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(duration / dt * (1.0 - 1e-12)));
}

// Calls fn with a compile-time dimension for the sizes the protocol uses and
// Eigen::Dynamic otherwise.
template <class Fn>
decltype(auto) with_dim(int dim, Fn&& fn) {
  switch (dim) {
    case 2: return fn(std::integral_constant<int, 2>{});
    case 4: return fn(std::integral_constant<int, 4>{});
    case 8: return fn(std::integral_constant<int, 8>{});
    default: return fn(std::integral_constant<int, Eigen::Dynamic>{});
  }
}

template <int D>
class HamiltonianCache {
 public:
  using Mat = Eigen::Matrix<Complex, D, D>;

  explicit HamiltonianCache(const TimeDependentOperator& h)
      : h_(h), coeffs_(h.terms().size()), value_(h.dim(), h.dim()) {
    for (const auto& t : h.terms()) terms_.push_back(t);
  }

  const Mat& at(double t) {
    if (t != time_) {
      h_.coefficients(t, coeffs_);
      value_.setZero();
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (coeffs_[i] != 0.0) value_ += coeffs_[i] * terms_[i];
      }
      time_ = t;
    }
    return value_;
  }

  int dim() const { return h_.dim(); }

 private:
  const TimeDependentOperator& h_;
  std::vector<Mat> terms_;
  std::vector<double> coeffs_;
  Mat value_;
  double time_ = std::nan("");
};

template <int D>
class SchrodingerRk4 {
 public:
  using Vec = Eigen::Matrix<Complex, D, 1>;

  explicit SchrodingerRk4(const TimeDependentOperator& h)
      : cache_(h), k1_(h.dim()), k2_(h.dim()), k3_(h.dim()), k4_(h.dim()), tmp_(h.dim()) {}

  void step(Vec& psi, double t, double dt) {
    const double half = 0.5 * dt;
    k1_.noalias() = kMinusI * (cache_.at(t) * psi);
    tmp_ = psi + half * k1_;
    k2_.noalias() = kMinusI * (cache_.at(t + half) * tmp_);
    tmp_ = psi + half * k2_;
    k3_.noalias() = kMinusI * (cache_.at(t + half) * tmp_);
    tmp_ = psi + dt * k3_;
    k4_.noalias() = kMinusI * (cache_.at(t + dt) * tmp_);
    psi += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  HamiltonianCache<D> cache_;
  Vec k1_, k2_, k3_, k4_, tmp_;
};

template <int D>
class LindbladRk4 {
 public:
  using Mat = Eigen::Matrix<Complex, D, D>;

  LindbladRk4(const TimeDependentOperator& h, std::span<const Matrix> jumps)
      : cache_(h),
        decay_(Mat::Zero(h.dim(), h.dim())),
        k1_(h.dim(), h.dim()), k2_(h.dim(), h.dim()), k3_(h.dim(), h.dim()),
        k4_(h.dim(), h.dim()), tmp_(h.dim(), h.dim()), heff_(h.dim(), h.dim()),
        work_(h.dim(), h.dim()) {
    for (const auto& l : jumps) {
      if (l.rows() != h.dim() || l.cols() != h.dim()) {
        throw ContractViolation("jump operator dimension does not match the Hamiltonian");
      }
      jumps_.push_back(l);
      jumps_adj_.push_back(l.adjoint());
      decay_ += Mat(l.adjoint() * l);
      diagonal_ = diagonal_ && l.isDiagonal(0.0);
    }
    decay_ *= Complex(0.0, -0.5);
    if (diagonal_) {
      // sum L rho L^+ collapses to rho .* W with W_ij = sum l_i conj(l_j)
      weights_ = Mat::Zero(h.dim(), h.dim());
      for (const auto& l : jumps_) weights_ += l.diagonal() * l.diagonal().adjoint();
    }
  }

  void step(Mat& rho, double t, double dt) {
    const double half = 0.5 * dt;
    rhs(t, rho, k1_);
    tmp_ = rho + half * k1_;
    rhs(t + half, tmp_, k2_);
    tmp_ = rho + half * k2_;
    rhs(t + half, tmp_, k3_);
    tmp_ = rho + dt * k3_;
    rhs(t + dt, tmp_, k4_);
    rho += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  // -i (Heff rho - rho Heff^+) + sum L rho L^+, Heff = H - i/2 sum L^+ L
  void rhs(double t, const Mat& rho, Mat& out) {
    heff_ = cache_.at(t) + decay_;
    out.noalias() = kMinusI * (heff_ * rho);
    out.noalias() -= kMinusI * (rho * heff_.adjoint());
    if (diagonal_) {
      out += rho.cwiseProduct(weights_);
      return;
    }
    for (std::size_t n = 0; n < jumps_.size(); ++n) {
      work_.noalias() = jumps_[n] * rho;
      out.noalias() += work_ * jumps_adj_[n];
    }
  }

  HamiltonianCache<D> cache_;
  std::vector<Mat> jumps_, jumps_adj_;
  Mat decay_, weights_;
  bool diagonal_ = true;
  Mat k1_, k2_, k3_, k4_, tmp_, heff_, work_;
};

void check_norm(Vector& psi, const char* where) {
  const double n = psi.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) >= kNormDriftTol) {
    throw StepSizeError(std::string(where) + ": norm drifted to " + std::to_string(n) +
                        "; reduce the time step");
  }
  psi /= n;
}

void check_dims(const TimeDependentOperator& h, Eigen::Index rows) {
  if (rows != h.dim()) throw ContractViolation("state dimension does not match the Hamiltonian");
}

}  // namespace

TimeDependentOperator::TimeDependentOperator(std::vector<Matrix> terms, Coefficients coefficients)
    : terms_(std::move(terms)), coefficients_(std::move(coefficients)) {
  if (terms_.empty()) throw ContractViolation("time-dependent operator needs at least one term");
  for (const auto& t : terms_) {
    if (t.rows() != terms_.front().rows() || t.cols() != t.rows()) {
      throw ContractViolation("time-dependent operator terms must share one square shape");
    }
  }
}

TimeDependentOperator TimeDependentOperator::constant(Matrix h) {
  return TimeDependentOperator({std::move(h)}, [](double, std::span<double> c) { c[0] = 1.0; });
}

Matrix TimeDependentOperator::at(double t) const {
  std::vector<double> c(terms_.size());
  coefficients_(t, c);
  Matrix out = Matrix::Zero(dim(), dim());
  for (std::size_t i = 0; i < terms_.size(); ++i) out += c[i] * terms_[i];
  return out;
}

QuantumState QuantumState::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw RangeError("basis index out of range");
  QuantumState s{Vector::Zero(dim)};
  s.amplitudes(index) = 1.0;
  return s;
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

DensityState DensityState::from_pure(const QuantumState& psi) {
  return DensityState{psi.amplitudes * psi.amplitudes.adjoint()};
}

void DensityState::check_invariants() const {
  if (!rho.allFinite()) throw StepSizeError("density matrix became non-finite");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw StepSizeError("density matrix trace drifted to " + std::to_string(tr));
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw StepSizeError("density matrix lost Hermiticity");
  }
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPositivityTol) {
    throw StepSizeError("density matrix lost positivity (min eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (d + d.adjoint())), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double default_time_step(double norm_bound) {
  if (norm_bound <= 0.0) return 0.01;
  return std::min(0.01, 0.05 / norm_bound);
}

QuantumState evolve_unitary(const TimeDependentOperator& h, const QuantumState& psi0,
                            double t_start, double t_end, double dt) {
  check_dims(h, psi0.amplitudes.size());
  const std::size_t n = step_count(t_end - t_start, dt);
  if (n == 0) return psi0;
  const double step = (t_end - t_start) / static_cast<double>(n);
  Vector out = with_dim(h.dim(), [&](auto d) -> Vector {
    constexpr int D = decltype(d)::value;
    SchrodingerRk4<D> rk(h);
    typename SchrodingerRk4<D>::Vec psi = psi0.amplitudes;
    for (std::size_t i = 0; i < n; ++i) rk.step(psi, t_start + static_cast<double>(i) * step, step);
    return psi;
  });
  check_norm(out, "evolve_unitary");
  return QuantumState{std::move(out)};
}

Matrix propagate_lindblad_operator(const TimeDependentOperator& h, std::span<const Matrix> jumps,
                                   const Matrix& x0, double t_start, double t_end, double dt) {
  check_dims(h, x0.rows());
  const std::size_t n = step_count(t_end - t_start, dt);
  if (n == 0) return x0;
  const double step = (t_end - t_start) / static_cast<double>(n);
  return with_dim(h.dim(), [&](auto d) -> Matrix {
    constexpr int D = decltype(d)::value;
    LindbladRk4<D> rk(h, jumps);
    typename LindbladRk4<D>::Mat rho = x0;
    for (std::size_t i = 0; i < n; ++i) rk.step(rho, t_start + static_cast<double>(i) * step, step);
    return rho;
  });
}

DensityState evolve_lindblad(const TimeDependentOperator& h, std::span<const Matrix> jumps,
                             const DensityState& rho0, double t_start, double t_end, double dt) {
  DensityState out{propagate_lindblad_operator(h, jumps, rho0.rho, t_start, t_end, dt)};
  out.check_invariants();
  return out;
}

QuantumState sample_unitary(const TimeDependentOperator& h, const QuantumState& psi0,
                            double t_start, double sample_dt, std::size_t n_samples,
                            double dt_max, const AmplitudeObserver& observe) {
  check_dims(h, psi0.amplitudes.size());
  const std::size_t per_sample = std::max<std::size_t>(1, step_count(sample_dt, dt_max));
  const double step = sample_dt / static_cast<double>(per_sample);
  Vector last = with_dim(h.dim(), [&](auto d) -> Vector {
    constexpr int D = decltype(d)::value;
    SchrodingerRk4<D> rk(h);
    typename SchrodingerRk4<D>::Vec psi = psi0.amplitudes;
    Vector view(h.dim());
    for (std::size_t j = 0; j < n_samples; ++j) {
      if (j > 0) {
        const std::size_t base = (j - 1) * per_sample;
        for (std::size_t i = 0; i < per_sample; ++i) {
          rk.step(psi, t_start + static_cast<double>(base + i) * step, step);
        }
        view = psi;
        check_norm(view, "sample_unitary");
        psi = view;
      } else {
        view = psi;
      }
      observe(j, view);
    }
    return view;
  });
  return QuantumState{std::move(last)};
}

DensityState sample_lindblad(const TimeDependentOperator& h, std::span<const Matrix> jumps,
                             const DensityState& rho0, double t_start, double sample_dt,
                             std::size_t n_samples, double dt_max, const DensityObserver& observe) {
  check_dims(h, rho0.rho.rows());
  const std::size_t per_sample = std::max<std::size_t>(1, step_count(sample_dt, dt_max));
  const double step = sample_dt / static_cast<double>(per_sample);
  Matrix last = with_dim(h.dim(), [&](auto d) -> Matrix {
    constexpr int D = decltype(d)::value;
    LindbladRk4<D> rk(h, jumps);
    typename LindbladRk4<D>::Mat rho = rho0.rho;
    Matrix view(h.dim(), h.dim());
    for (std::size_t j = 0; j < n_samples; ++j) {
      if (j > 0) {
        const std::size_t base = (j - 1) * per_sample;
        for (std::size_t i = 0; i < per_sample; ++i) {
          rk.step(rho, t_start + static_cast<double>(base + i) * step, step);
        }
      }
      view = rho;
      DensityState{view}.check_invariants();
      observe(j, view);
    }
    return view;
  });
  return DensityState{std::move(last)};
}

}  // namespace anneal_probe
