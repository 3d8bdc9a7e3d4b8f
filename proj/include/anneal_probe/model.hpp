#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anneal_probe/algebra.hpp"

namespace anneal_probe {

/// How the state entering the drive window is prepared and read out.
enum class FidelityMode {
  ExactPrep,      // eigenstate of H_QA(t1) in, projection onto H_QA(t1) eigenstate out
  FullEvolution,  // ramp from H_D, drive, ramp back, project onto H_D eigenstate
};

enum class NoiseMode { Closed, Open };

struct LindbladTerm {
  double rate = 0.0;  // kappa, 1/ns; the jump operator is sqrt(rate) * word
  std::string word;
};

/// Complete description of one driven-annealing experiment.
struct AnnealModel {
  PauliTermSum driver;
  PauliTermSum problem;
  double t_ann = 0.0;         // ns
  double t1 = 0.0;            // ns, drive switch-on time
  double lambda_ratio = 0.05;  // lambda / T_ann
  double omega = 0.0;          // drive angular frequency, rad/ns
  int k = 0;                   // prepared level
  int l = 1;                   // measured level
  std::vector<LindbladTerm> lindblad;
  FidelityMode fidelity = FidelityMode::ExactPrep;
  NoiseMode noise = NoiseMode::Closed;

  int n_qubits() const { return driver.n_qubits(); }
  int dim() const { return 1 << n_qubits(); }
  double lambda() const { return lambda_ratio * t_ann; }
  double t1_fraction() const { return t1 / t_ann; }

  /// Throws ContractViolation when an invariant is broken.
  void validate() const;

  AnnealModel with_omega(double w) const;
  AnnealModel with_lambda_ratio(double r) const;
};

enum class CaseLabel { A, B, C, D, E, F };

/// One row of the studied case table together with its parameter grid.
struct CasePreset {
  CaseLabel label;
  FidelityMode fidelity;
  NoiseMode noise;
  int qubits;
  std::vector<double> t_anns;        // ns
  std::vector<double> t1_fractions;  // t1 / T_ann

  AnnealModel make(double t_ann, double t1_fraction, double lambda_ratio = 0.05) const;
};

inline constexpr double kDefaultLambdaRatio = 0.05;
inline constexpr double kDefaultDephasingRate = 2.5e-3;  // 1/ns

CaseLabel parse_case_label(std::string_view s);
char to_char(CaseLabel label);
std::string to_string(FidelityMode m);
std::string to_string(NoiseMode m);
FidelityMode parse_fidelity_mode(std::string_view s);
NoiseMode parse_noise_mode(std::string_view s);

CasePreset case_preset(CaseLabel label);

/// H_D = w1/2 X, H_P = g Z.
PauliTermSum single_qubit_driver(double omega1 = 1.0);
PauliTermSum single_qubit_problem(double g = 0.4);
/// H_D = w1/2 XI + w2/2 IX, H_P = g1 ZZ + g2 ZI + g3 IZ.
PauliTermSum two_qubit_driver(double omega1 = 1.0, double omega2 = 1.1);
PauliTermSum two_qubit_problem(double g1 = 0.5, double g2 = 0.3, double g3 = 0.0);
/// sigma_z dephasing of equal rate on every qubit.
std::vector<LindbladTerm> uniform_dephasing(int n_qubits, double rate);

/// Conventional linear schedule 1 - t/T_ann on [0, T_ann].
double anneal_schedule(const AnnealModel& m, double t);

/// Piecewise protocol schedule: linear ramp down to t1, hold for the drive
/// window of length tau, ramp back up to 1 at 2*t1 + tau.
double schedule_A(const AnnealModel& m, double t, double tau);

/// H_QA along the conventional schedule.
OperatorMatrix h_qa_at(const AnnealModel& m, double t);
/// H_QA along the protocol schedule.
OperatorMatrix h_qa_at(const AnnealModel& m, double t, double tau);

/// dH_QA/dt on the linear branch, (H_P - H_D) / T_ann.
OperatorMatrix hdot_qa(const AnnealModel& m);

/// Drive coefficient lambda(t) cos(omega (t - t1)); zero outside [t1, t1 + tau).
double drive_coefficient(const AnnealModel& m, double t, double tau);

/// H_QA(t) plus the rectangular drive lambda * dH_QA * cos(omega (t - t1)).
OperatorMatrix h_total_at(const AnnealModel& m, double t, double tau);

/// Dense jump operators sqrt(rate) * word.
std::vector<Matrix> jump_operators(const AnnealModel& m);

}  // namespace anneal_probe
