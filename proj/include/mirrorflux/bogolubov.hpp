#pragma once

// Bogolubov coefficients between wave-packet bases of right-moving modes.
//
// Packets are Gaussian in x = ln(omega):
//   h(x) = (2 pi s^2)^(-1/4) exp(-(x - x0)^2 / (4 s^2)),
//   packet = int dx h(x) e^{-i omega u*} / sqrt(4 pi),
// which has unit Klein-Gordon norm. All products are taken on the surface
// t = 0 of the inertial chart.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "mirrorflux/charts.hpp"
#include "mirrorflux/vacuum_stress.hpp"

namespace mirrorflux {

using Complex = std::complex<double>;

enum class ModeFamily {
  /// e^{-i omega u*} in the chart's own null coordinate.
  plane_wave,
  /// Minkowski positive-frequency boost eigenmodes (u - i0)^{+-i omega};
  /// only for the inertial chart. Each frequency contributes two packets.
  boost_eigen,
};

struct ModeBasis {
  ConformalChart chart;
  Boundary boundary = Boundary::full_line;
  std::vector<double> frequencies;
  double packet_width = 0.5;
  ModeFamily family = ModeFamily::plane_wave;

  std::size_t size() const;
};

/// n log-spaced values over [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int n);

/// Validated basis; default grid is 32 packets over [0.1, 10].
ModeBasis make_mode_basis(const ConformalChart& chart,
                          std::vector<double> frequencies = log_spaced(0.1, 10.0, 32),
                          double packet_width = 0.5,
                          ModeFamily family = ModeFamily::plane_wave);

/// A single packet, possibly complex conjugated.
struct Packet {
  enum class Kind { minkowski_wave, rindler_wave, boost_plus, boost_minus };
  Kind kind;
  double center;  // ln(omega) at the packet center
  double width;   // standard deviation of |h|^2 in ln(omega)
  bool conjugated = false;

  double frequency() const;
};

Packet packet(const ModeBasis& basis, std::size_t index);
Packet conjugate(Packet p);

struct QuadratureSpec {
  double abs_tol = 1e-8;
  /// Half-width of the integration window in envelope standard deviations.
  double window_widths = 8.0;
  /// The window of a packet whose tail is still above the tolerance at
  /// window_widths deviations grows, up to this factor.
  double max_window_growth = 4.0;
  /// Minimum trapezoid nodes per packet in ln(omega); odd so the half grid
  /// nests. Raised automatically when the window needs a finer grid.
  int frequency_nodes = 129;
  int max_intervals = 400000;
};

struct KGResult {
  Complex value;
  /// Adaptive-quadrature estimate plus the change from halving the
  /// frequency grid.
  double error = 0.0;
  /// Window truncation estimate exceeded the tolerance.
  bool truncated = false;
  double truncation_estimate = 0.0;
  /// Subdivision hit max_intervals before meeting the tolerance.
  bool unconverged = false;
};

/// i int (m1* d_t m2 - d_t m1* m2) dx on t = 0.
KGResult kg_inner_product(const Packet& m1, const Packet& m2, const QuadratureSpec& spec = {});

/// Dense row-major complex matrix.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Complex& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Coefficients of basis-B packets in terms of basis-A packets, after
/// symmetric orthonormalization of both bases:
///   B_j = sum_i alpha_ji A_i + beta_ji A_i*.
struct BogolubovPair {
  ComplexMatrix alpha;
  ComplexMatrix beta;
  std::vector<double> row_frequencies;
  /// Bound on the numerical error of any alpha or beta entry.
  double discretization_error = 0.0;
  bool truncated = false;
  bool unconverged = false;
};

BogolubovPair compute_coefficients(const ModeBasis& a, const ModeBasis& b,
                                   const QuadratureSpec& spec = {});

/// sum_k |beta_jk|^2: occupation of packet j of B in the vacuum of A.
double expected_number(const BogolubovPair& pair, std::size_t row);

/// Numerical error bound on expected_number for the row.
double expected_number_error(const BogolubovPair& pair, std::size_t row);

/// sum_k (|alpha_jk|^2 - |beta_jk|^2).
double row_normalization(const BogolubovPair& pair, std::size_t row);

/// sum_k |beta_jk|^2 / sum_k |alpha_jk|^2.
double thermal_ratio(const BogolubovPair& pair, std::size_t row);

}  // namespace mirrorflux
