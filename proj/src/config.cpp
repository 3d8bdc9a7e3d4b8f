#include "anneal_probe/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "anneal_probe/errors.hpp"

namespace anneal_probe {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

struct Entry {
  std::string value;
  int line = 0;
};

class Keys {
 public:
  void add(std::string key, std::string value, int line) {
    if (key == "m") key = "l";
    if (!entries_.emplace(key, Entry{std::move(value), line}).second) {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    }
  }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<std::string> text(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_.insert(key);
    return it->second.value;
  }
  std::optional<double> number(const std::string& key) {
    auto v = text(key);
    if (!v) return std::nullopt;
    double out = 0.0;
    const auto* end = v->data() + v->size();
    const auto [p, ec] = std::from_chars(v->data(), end, out);
    if (ec != std::errc() || p != end) {
      throw ConfigError("line " + std::to_string(entries_.at(key).line) + ": '" + key +
                        "' expects a number, got '" + *v + "'");
    }
    return out;
  }
  std::optional<long long> integer(const std::string& key) {
    auto v = number(key);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v) || *v < 0) {
      throw ConfigError("line " + std::to_string(entries_.at(key).line) + ": '" + key +
                        "' expects a non-negative integer");
    }
    return static_cast<long long>(*v);
  }
  void reject_unused() const {
    for (const auto& [key, e] : entries_) {
      if (!used_.count(key)) {
        throw ConfigError("line " + std::to_string(e.line) + ": unknown or inapplicable key '" + key + "'");
      }
    }
  }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

std::vector<LindbladTerm> parse_lindblad(std::string_view text, int first_line) {
  std::vector<LindbladTerm> ops;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = first_line;
  while (std::getline(in, line)) {
    ++n;
    const auto body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    std::istringstream fields{std::string(body)};
    LindbladTerm t;
    if (!(fields >> t.rate >> t.word)) {
      throw ConfigError("line " + std::to_string(n) + ": expected 'rate word' in [lindblad]");
    }
    ops.push_back(t);
  }
  return ops;
}

}  // namespace

PipelineOptions RunConfig::pipeline_options() const {
  PipelineOptions o = pipeline;
  if (omega_range) {
    o.omegas.resize(omega_range->n);
    for (std::size_t i = 0; i < omega_range->n; ++i) {
      const double u = omega_range->n > 1 ? static_cast<double>(i) / static_cast<double>(omega_range->n - 1) : 0.0;
      o.omegas[i] = omega_range->min + (omega_range->max - omega_range->min) * u;
    }
  }
  return o;
}

RunConfig parse_config(std::string_view text) {
  Keys keys;
  std::map<std::string, std::pair<std::string, int>> sections;  // name -> (body, line before body)
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(n) + ": malformed section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current != "driver" && current != "problem" && current != "lindblad") {
        throw ConfigError("line " + std::to_string(n) + ": unknown section [" + current + "]");
      }
      if (sections.count(current)) throw ConfigError("line " + std::to_string(n) + ": duplicate section [" + current + "]");
      sections[current] = {"", n};
      continue;
    }
    if (!current.empty()) {
      sections[current].first += std::string(raw) + "\n";
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(n) + ": expected 'key = value'");
    }
    keys.add(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), n);
  }

  RunConfig c;
  const auto t_ann = keys.number("T_ann");
  const auto frac = keys.number("t1_fraction");
  if (!t_ann || !frac) throw ConfigError("T_ann and t1_fraction are required");
  c.t1_fraction = *frac;
  const double lambda_ratio = keys.number("lambda_ratio").value_or(kDefaultLambdaRatio);

  const bool custom = keys.has("qubits") || sections.count("driver") || sections.count("problem");
  if (keys.has("case") == custom) {
    throw ConfigError("give exactly one of 'case' or a custom model (qubits, [driver], [problem])");
  }
  if (!custom) {
    c.case_label = parse_case_label(*keys.text("case"));
    const CasePreset preset = case_preset(*c.case_label);
    if (sections.count("lindblad")) throw ConfigError("[lindblad] is not allowed with a case preset");
    try {
      c.model = preset.make(*t_ann, *frac, lambda_ratio);
    } catch (const Error& e) {
      throw ConfigError(std::string("invalid preset parameters: ") + e.what());
    }
    if (preset.noise == NoiseMode::Open) {
      c.kappa = keys.number("kappa").value_or(kDefaultDephasingRate);
      c.model.lindblad = uniform_dephasing(preset.qubits, c.kappa);
    }
  } else {
    const auto q = keys.integer("qubits");
    if (!q || *q < 1 || *q > kDefaultMaxQubits) {
      throw ConfigError("qubits must be given and lie in 1.." + std::to_string(kDefaultMaxQubits));
    }
    if (!sections.count("driver") || !sections.count("problem")) {
      throw ConfigError("a custom model needs both [driver] and [problem] sections");
    }
    try {
      c.model.driver = PauliTermSum::parse(static_cast<int>(*q), sections["driver"].first);
      c.model.problem = PauliTermSum::parse(static_cast<int>(*q), sections["problem"].first);
    } catch (const Error& e) {
      throw ConfigError(std::string("bad Pauli term: ") + e.what());
    }
    c.model.t_ann = *t_ann;
    c.model.t1 = *frac * *t_ann;
    c.model.lambda_ratio = lambda_ratio;
    if (auto f = keys.text("fidelity_mode")) c.model.fidelity = parse_fidelity_mode(*f);
    if (auto nm = keys.text("noise_mode")) c.model.noise = parse_noise_mode(*nm);
    if (sections.count("lindblad")) {
      c.model.lindblad = parse_lindblad(sections["lindblad"].first, sections["lindblad"].second);
      if (keys.has("kappa")) throw ConfigError("give either kappa or a [lindblad] section, not both");
    } else if (auto kappa = keys.number("kappa")) {
      c.kappa = *kappa;
      c.model.lindblad = uniform_dephasing(static_cast<int>(*q), *kappa);
    }
    if (!c.model.lindblad.empty() && c.model.noise == NoiseMode::Closed) {
      throw ConfigError("Lindblad operators given but noise_mode is closed");
    }
  }
  if (auto k = keys.integer("k")) c.model.k = static_cast<int>(*k);
  if (auto l = keys.integer("l")) c.model.l = static_cast<int>(*l);
  try {
    c.model.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }

  PipelineOptions& p = c.pipeline;
  if (auto v = keys.text("mode")) p.mode = parse_run_mode(*v);
  if (auto v = keys.text("method")) p.method = parse_peak_method(*v);
  const auto wmin = keys.number("omega_min");
  const auto wmax = keys.number("omega_max");
  const auto wn = keys.integer("n_omega");
  if (wmin || wmax) {
    if (!wmin || !wmax) throw ConfigError("omega_min and omega_max go together");
    if (!(*wmin > 0.0 && *wmax >= *wmin)) throw ConfigError("need 0 < omega_min <= omega_max");
    c.omega_range = OmegaRange{*wmin, *wmax, wn ? static_cast<std::size_t>(*wn) : 51};
    if (c.omega_range->n == 0) throw ConfigError("n_omega must be positive");
    if (c.omega_range->n == 1 && *wmin != *wmax) throw ConfigError("one drive frequency needs omega_min == omega_max");
  } else if (wn) {
    p.n_omega = static_cast<std::size_t>(*wn);
    if (p.n_omega < 5) throw ConfigError("n_omega must be at least 5 for a fitted sweep");
  }
  if (auto v = keys.number("omega_span")) p.omega_span = *v;
  if (auto v = keys.number("zoom_factor")) p.zoom_factor = *v;
  if (auto v = keys.integer("n_zoom")) p.n_zoom = static_cast<std::size_t>(*v);
  if (auto v = keys.number("tau_max")) p.tau_design.tau_max = *v;
  if (auto v = keys.integer("n_samples")) p.tau_design.min_samples = static_cast<std::size_t>(*v);
  if (auto v = keys.number("n_periods")) p.tau_design.n_periods = *v;
  if (auto v = keys.number("dt")) p.sweep.dt_max = *v;
  if (auto v = keys.integer("padding")) p.padding = static_cast<int>(*v);
  if (auto v = keys.integer("threads")) p.sweep.threads = static_cast<unsigned>(*v);
  if (auto v = keys.integer("max_peaks")) p.peaks.max_peaks = static_cast<std::size_t>(*v);
  const auto pmin = keys.number("peak_min");
  const auto pmax = keys.number("peak_max");
  if (pmin || pmax) {
    if (!pmin || !pmax) throw ConfigError("peak_min and peak_max go together");
    p.peaks.window = PeakWindow{*pmin, *pmax};
  }
  if (auto v = keys.number("inlier_factor")) p.selection.inlier_factor = *v;
  if (auto v = keys.integer("seed")) p.selection.seed = static_cast<std::uint64_t>(*v);
  if (auto v = keys.text("out")) c.out = *v;
  keys.reject_unused();

  if (!(p.omega_span > 0.0 && p.omega_span < 1.0)) throw ConfigError("omega_span must lie in (0, 1)");
  if (p.zoom_factor < 0.0) throw ConfigError("zoom_factor must be >= 0");
  if (p.zoom_factor > 0.0 && p.n_zoom < 5) throw ConfigError("n_zoom must be at least 5");
  if (p.tau_design.min_samples < 256) throw ConfigError("n_samples must be at least 256");
  if (!(p.tau_design.n_periods > 0.0)) throw ConfigError("n_periods must be positive");
  if (p.tau_design.tau_max < 0.0 || p.sweep.dt_max < 0.0) throw ConfigError("tau_max and dt must be >= 0");
  if (p.padding < 1) throw ConfigError("padding must be >= 1");
  if (p.sweep.threads < 1) throw ConfigError("threads must be >= 1");
  if (p.peaks.max_peaks < 1) throw ConfigError("max_peaks must be >= 1");
  if (!(p.selection.inlier_factor > 0.0)) throw ConfigError("inlier_factor must be positive");
  if (c.out.empty()) throw ConfigError("out must not be empty");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize(const RunConfig& c) {
  std::ostringstream o;
  const AnnealModel& m = c.model;
  const PipelineOptions& p = c.pipeline;
  if (c.case_label) {
    o << "case = " << to_char(*c.case_label) << '\n';
  } else {
    o << "qubits = " << m.n_qubits() << '\n';
    o << "fidelity_mode = " << to_string(m.fidelity) << '\n';
    o << "noise_mode = " << to_string(m.noise) << '\n';
  }
  o << "T_ann = " << fmt(m.t_ann) << '\n';
  o << "t1_fraction = " << fmt(c.t1_fraction) << '\n';
  o << "lambda_ratio = " << fmt(m.lambda_ratio) << '\n';
  if (c.case_label && m.noise == NoiseMode::Open) o << "kappa = " << fmt(c.kappa) << '\n';
  o << "k = " << m.k << '\n';
  o << "l = " << m.l << '\n';
  o << "mode = " << to_string(p.mode) << '\n';
  o << "method = " << to_string(p.method) << '\n';
  if (c.omega_range) {
    o << "omega_min = " << fmt(c.omega_range->min) << '\n';
    o << "omega_max = " << fmt(c.omega_range->max) << '\n';
    o << "n_omega = " << c.omega_range->n << '\n';
  } else {
    o << "n_omega = " << p.n_omega << '\n';
  }
  o << "omega_span = " << fmt(p.omega_span) << '\n';
  o << "zoom_factor = " << fmt(p.zoom_factor) << '\n';
  o << "n_zoom = " << p.n_zoom << '\n';
  o << "tau_max = " << fmt(p.tau_design.tau_max) << '\n';
  o << "n_samples = " << p.tau_design.min_samples << '\n';
  o << "n_periods = " << fmt(p.tau_design.n_periods) << '\n';
  o << "dt = " << fmt(p.sweep.dt_max) << '\n';
  o << "padding = " << p.padding << '\n';
  o << "max_peaks = " << p.peaks.max_peaks << '\n';
  if (p.peaks.window) {
    o << "peak_min = " << fmt(p.peaks.window->min) << '\n';
    o << "peak_max = " << fmt(p.peaks.window->max) << '\n';
  }
  o << "inlier_factor = " << fmt(p.selection.inlier_factor) << '\n';
  o << "seed = " << p.selection.seed << '\n';
  o << "threads = " << p.sweep.threads << '\n';
  o << "out = " << c.out << '\n';
  if (!c.case_label) {
    o << "\n[driver]\n" << m.driver.to_text();
    o << "\n[problem]\n" << m.problem.to_text();
    if (!m.lindblad.empty()) {
      o << "\n[lindblad]\n";
      for (const auto& op : m.lindblad) o << fmt(op.rate) << ' ' << op.word << '\n';
    }
  }
  return o.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) { return serialize(a) == serialize(b); }

}  // namespace anneal_probe
