#include "anneal_probe/model.hpp"

#include <cmath>

#include "anneal_probe/errors.hpp"

namespace anneal_probe {

void AnnealModel::validate() const {
  if (driver.n_qubits() <= 0 || driver.n_qubits() != problem.n_qubits()) {
    throw ContractViolation("driver and problem must act on the same, non-empty register");
  }
  if (!(t_ann > 0.0)) throw ContractViolation("T_ann must be positive");
  if (!(t1 > 0.0 && t1 < t_ann)) throw ContractViolation("need 0 < t1 < T_ann");
  if (!(lambda_ratio >= 0.0) || !std::isfinite(lambda_ratio)) {
    throw ContractViolation("lambda_ratio must be a finite non-negative number");
  }
  if (!std::isfinite(omega) || omega < 0.0) throw ContractViolation("omega must be >= 0");
  if (k < 0 || k >= dim() || l < 0 || l >= dim() || k == l) {
    throw ContractViolation("levels k, l must be distinct and below 2^n_qubits");
  }
  for (const auto& op : lindblad) {
    if (!(op.rate >= 0.0)) throw ContractViolation("Lindblad rates must be >= 0");
    if (static_cast<int>(op.word.size()) != n_qubits()) {
      throw MalformedOperatorError("Lindblad word '" + op.word + "' has the wrong length");
    }
  }
}

AnnealModel AnnealModel::with_omega(double w) const {
  auto m = *this;
  m.omega = w;
  return m;
}

AnnealModel AnnealModel::with_lambda_ratio(double r) const {
  auto m = *this;
  m.lambda_ratio = r;
  return m;
}

CaseLabel parse_case_label(std::string_view s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': case 'a': return CaseLabel::A;
      case 'B': case 'b': return CaseLabel::B;
      case 'C': case 'c': return CaseLabel::C;
      case 'D': case 'd': return CaseLabel::D;
      case 'E': case 'e': return CaseLabel::E;
      case 'F': case 'f': return CaseLabel::F;
      default: break;
    }
  }
  throw ConfigError("unknown case label '" + std::string(s) + "' (expected A-F)");
}

char to_char(CaseLabel label) { return static_cast<char>('A' + static_cast<int>(label)); }

std::string to_string(FidelityMode m) {
  return m == FidelityMode::ExactPrep ? "exact-prep" : "full-evolution";
}

std::string to_string(NoiseMode m) { return m == NoiseMode::Closed ? "closed" : "open"; }

FidelityMode parse_fidelity_mode(std::string_view s) {
  if (s == "exact-prep") return FidelityMode::ExactPrep;
  if (s == "full-evolution") return FidelityMode::FullEvolution;
  throw ConfigError("unknown fidelity_mode '" + std::string(s) + "'");
}

NoiseMode parse_noise_mode(std::string_view s) {
  if (s == "closed") return NoiseMode::Closed;
  if (s == "open") return NoiseMode::Open;
  throw ConfigError("unknown noise_mode '" + std::string(s) + "'");
}

PauliTermSum single_qubit_driver(double omega1) { return PauliTermSum(1, {{omega1 / 2, "X"}}); }

PauliTermSum single_qubit_problem(double g) { return PauliTermSum(1, {{g, "Z"}}); }

PauliTermSum two_qubit_driver(double omega1, double omega2) {
  return PauliTermSum(2, {{omega1 / 2, "XI"}, {omega2 / 2, "IX"}});
}

PauliTermSum two_qubit_problem(double g1, double g2, double g3) {
  std::vector<PauliTerm> terms{{g1, "ZZ"}, {g2, "ZI"}};
  if (g3 != 0.0) terms.push_back({g3, "IZ"});
  return PauliTermSum(2, std::move(terms));
}

std::vector<LindbladTerm> uniform_dephasing(int n_qubits, double rate) {
  std::vector<LindbladTerm> ops;
  for (int q = 0; q < n_qubits; ++q) {
    std::string word(n_qubits, 'I');
    word[q] = 'Z';
    ops.push_back({rate, word});
  }
  return ops;
}

CasePreset case_preset(CaseLabel label) {
  const std::vector<double> single_t_anns{10, 30, 100, 300, 1000};
  const std::vector<double> single_fracs{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const std::vector<double> two_t_anns{10, 30, 100};
  const std::vector<double> two_fracs{0.1, 0.3, 0.5, 0.7, 0.9};
  switch (label) {
    case CaseLabel::A:
      return {label, FidelityMode::ExactPrep, NoiseMode::Closed, 1, single_t_anns, single_fracs};
    case CaseLabel::B:
      return {label, FidelityMode::FullEvolution, NoiseMode::Closed, 1, single_t_anns,
              single_fracs};
    case CaseLabel::C:
      return {label, FidelityMode::FullEvolution, NoiseMode::Open, 1, single_t_anns, single_fracs};
    case CaseLabel::D:
      return {label, FidelityMode::ExactPrep, NoiseMode::Closed, 2, two_t_anns, two_fracs};
    case CaseLabel::E:
      return {label, FidelityMode::FullEvolution, NoiseMode::Closed, 2, two_t_anns, two_fracs};
    case CaseLabel::F:
      return {label, FidelityMode::FullEvolution, NoiseMode::Open, 2, two_t_anns, two_fracs};
  }
  throw ContractViolation("bad case label");
}

AnnealModel CasePreset::make(double t_ann, double t1_fraction, double lambda_ratio) const {
  AnnealModel m;
  if (qubits == 1) {
    m.driver = single_qubit_driver();
    m.problem = single_qubit_problem();
  } else {
    m.driver = two_qubit_driver();
    m.problem = two_qubit_problem();
  }
  m.t_ann = t_ann;
  m.t1 = t1_fraction * t_ann;
  m.lambda_ratio = lambda_ratio;
  m.fidelity = fidelity;
  m.noise = noise;
  if (noise == NoiseMode::Open) m.lindblad = uniform_dephasing(qubits, kDefaultDephasingRate);
  m.validate();
  return m;
}

double anneal_schedule(const AnnealModel& m, double t) {
  if (t < 0.0 || t > m.t_ann) {
    throw RangeError("t = " + std::to_string(t) + " outside [0, T_ann]");
  }
  return 1.0 - t / m.t_ann;
}

double schedule_A(const AnnealModel& m, double t, double tau) {
  if (tau < 0.0) throw RangeError("drive duration tau must be >= 0");
  const double end = 2.0 * m.t1 + tau;
  if (t < 0.0 || t > end) {
    throw RangeError("t = " + std::to_string(t) + " outside protocol window [0, " +
                     std::to_string(end) + "]");
  }
  if (t < m.t1) return 1.0 - t / m.t_ann;
  if (t < m.t1 + tau) return 1.0 - m.t1 / m.t_ann;
  return (t - tau - 2.0 * m.t1) / m.t_ann + 1.0;
}

namespace {

OperatorMatrix interpolate(const AnnealModel& m, double a) {
  const auto hd = to_matrix(m.driver);
  const auto hp = to_matrix(m.problem);
  return OperatorMatrix(Matrix(a * hd.matrix() + (1.0 - a) * hp.matrix()));
}

}  // namespace

OperatorMatrix h_qa_at(const AnnealModel& m, double t) { return interpolate(m, anneal_schedule(m, t)); }

OperatorMatrix h_qa_at(const AnnealModel& m, double t, double tau) {
  return interpolate(m, schedule_A(m, t, tau));
}

OperatorMatrix hdot_qa(const AnnealModel& m) {
  const auto hd = to_matrix(m.driver);
  const auto hp = to_matrix(m.problem);
  return OperatorMatrix(Matrix((hp.matrix() - hd.matrix()) / m.t_ann));
}

double drive_coefficient(const AnnealModel& m, double t, double tau) {
  if (t < m.t1 || t >= m.t1 + tau) return 0.0;
  return m.lambda() * std::cos(m.omega * (t - m.t1));
}

OperatorMatrix h_total_at(const AnnealModel& m, double t, double tau) {
  const double c = drive_coefficient(m, t, tau);
  const auto h = h_qa_at(m, t, tau);
  if (c == 0.0) return h;
  return OperatorMatrix(Matrix(h.matrix() + c * hdot_qa(m).matrix()));
}

std::vector<Matrix> jump_operators(const AnnealModel& m) {
  std::vector<Matrix> ops;
  for (const auto& term : m.lindblad) {
    if (term.rate == 0.0) continue;
    ops.push_back(std::sqrt(term.rate) * pauli_string_matrix(term.word));
  }
  return ops;
}

}  // namespace anneal_probe
