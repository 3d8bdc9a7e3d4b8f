#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "anneal_probe/protocol.hpp"

namespace anneal_probe {

/// One-sided |FT[p]| over the drive-duration axis at a fixed drive frequency.
///
/// Magnitudes follow the continuous convention |int p(tau) e^{-i Omega tau} dtau| / sqrt(2 pi)
/// approximated by a rectangular-window DFT. The record is zero padded, so bins
/// are spaced resolution / padding; `resolution` is 2 pi / tau_max.
struct PowerSpectrum {
  double omega = 0.0;
  double resolution = 0.0;
  int padding = 4;
  std::vector<double> Omegas;
  std::vector<double> magnitudes;

  double bin_width() const { return resolution / padding; }
  double tau_max() const;
};

inline constexpr int kDefaultPadding = 4;

/// The sample mean is removed before zero padding and its contribution is
/// put back into the zero-frequency bin only. On the unpadded bins 2 pi k / tau_max
/// this is the plain DFT; between them it keeps the constant offset from
/// leaking into the Rabi band.
PowerSpectrum power_spectrum(const ProtocolResult& result, int padding = kDefaultPadding);

/// Full two-sided DFT magnitudes of the same padded record; entry padding*N - k
/// holds the -Omega_k bin.
std::vector<double> two_sided_magnitudes(const ProtocolResult& result, int padding = kDefaultPadding);

struct Peak {
  double Omega = 0.0;
  double height = 0.0;
};

/// Peak candidates at one drive frequency, highest first.
struct PeakSet {
  double omega = 0.0;
  std::vector<Peak> peaks;
};

struct PeakWindow {
  double min = 0.0;
  double max = 0.0;
};

struct PeakOptions {
  std::optional<PeakWindow> window;  // default [2 resolution, omega / 2]
  std::size_t max_peaks = 3;
  double min_height = -1.0;          // < 0: 1e-9 * tau_max / sqrt(2 pi)
};

/// Strict local maxima inside the window. A candidate must be a maximum over
/// the unpadded bins (spacing `resolution`); its position is then taken from
/// the nearest padded-bin maximum, refined by a parabola through the three
/// neighbouring bins. Ties in height go to the smaller Omega.
PeakSet detect_peaks(const PowerSpectrum& spec, const PeakOptions& opts = {});

struct DispersionPoint {
  double omega = 0.0;
  double Omega = 0.0;
  double height = 0.0;
};

/// Highest retained peak per drive frequency; empty peak sets are skipped.
std::vector<DispersionPoint> dispersion_from_top_peak(std::span<const PeakSet> peaks);

/// Longest contiguous run of points (ordered by omega) in which neighbours
/// obey |dOmega| <= |domega| + tolerance, the slope bound of any hyperbola with
/// unit asymptotes. Equal lengths go to the run reaching the smaller Omega.
std::vector<DispersionPoint> track_branch(std::span<const DispersionPoint> points, double tolerance);

/// Least-squares fit of Omega = sqrt(a^2 + (omega - Delta)^2).
struct HyperbolaFit {
  double a = 0.0;
  double Delta = 0.0;
  double rms_residual = 0.0;
  double threshold = 0.0;
  bool accepted = false;
  bool converged = false;
  int iterations = 0;
  std::size_t n_points = 0;
  std::string diagnostic;

  double at(double omega) const;
};

/// Seeded at (min Omega, its omega) and refined by damped Gauss-Newton for at
/// most 200 iterations. accepted iff the fit converged with rms <= threshold.
/// Throws PreconditionError for fewer than five points.
HyperbolaFit fit_hyperbola(std::span<const DispersionPoint> points, double threshold);

inline constexpr std::uint64_t kDefaultSelectionSeed = 20240611;

struct SelectionOptions {
  double inlier_factor = 3.0;        // inlier band = factor * resolution
  std::uint64_t seed = kDefaultSelectionSeed;
  std::size_t max_hypotheses = 20000;  // pairs enumerated exhaustively below this
  double min_inlier_fraction = 0.3;  // of the drive frequencies swept
  std::size_t min_points = 5;
  int refine_rounds = 5;
};

struct PeakSelection {
  std::vector<DispersionPoint> points;  // one inlier per retained drive frequency
  HyperbolaFit fit;
  bool identified = false;
  std::size_t n_frequencies = 0;
  std::size_t hypotheses = 0;
  std::uint64_t seed = 0;
  std::string diagnostic;
};

/// Picks, among up to three candidates per drive frequency, the subset that
/// lies on a single hyperbola. Pairs of candidates from different frequencies
/// fix a trial curve; the curve with the most candidates inside the inlier band
/// wins and is refit on its inliers until the inlier set stops changing.
/// Frequencies without an inlier are dropped. When no hyperbola gathers enough
/// support, or the vertex falls outside the swept range, the result is
/// unidentified rather than an exception.
PeakSelection modified_peak_selection(std::span<const PeakSet> peaks, double resolution,
                                      const SelectionOptions& opts = {});

/// CSV `omega,Omega,magnitude` rows, Omega limited to [0, max_Omega] when > 0.
void write_spectrum_csv(std::ostream& out, std::span<const PowerSpectrum> spectra,
                        double max_Omega = 0.0);

nlohmann::json to_json(const HyperbolaFit& fit);
nlohmann::json to_json(const PeakSelection& selection);

}  // namespace anneal_probe
