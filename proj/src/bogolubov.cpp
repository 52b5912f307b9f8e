#include "mirrorflux/bogolubov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace mirrorflux {

namespace {

// Integration patches on t = 0: the whole u line, or the two wedges in
// logarithmic coordinates (right: u = -e^{-ubar}, left: u = e^{l}).
enum class Patch { line, right, left };

// Gauss-Kronrod 15/7 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Trapezoid nodes in ln(omega) for one packet profile.
struct Profile {
  std::vector<double> omega;
  std::vector<double> weight;  // h(x) dx / sqrt(4 pi)
  std::vector<double> cosh_r;  // 1 / sqrt(1 - e^{-2 pi omega})
  std::vector<double> sinh_r;  // 1 / sqrt(e^{2 pi omega} - 1)
};

Profile make_profile(double center, double width, int nodes) {
  Profile p;
  const double half = 12.0 * width;
  const double dx = 2.0 * half / (nodes - 1);
  const double norm = std::pow(2.0 * kPi * width * width, -0.25) / std::sqrt(4.0 * kPi);
  for (int k = 0; k < nodes; ++k) {
    const double x = center - half + k * dx;
    const double w = std::exp(-(x - center) * (x - center) / (4.0 * width * width));
    const double omega = std::exp(x);
    p.omega.push_back(omega);
    p.weight.push_back(norm * w * dx);
    p.cosh_r.push_back(1.0 / std::sqrt(-std::expm1(-2.0 * kPi * omega)));
    p.sinh_r.push_back(1.0 / std::sqrt(std::expm1(2.0 * kPi * omega)));
  }
  return p;
}

// Standard deviation of a packet's envelope in its native null coordinate.
double envelope_std(const Packet& p) { return 1.0 / (std::sqrt(2.0) * p.width * p.frequency()); }

bool active(const Packet& p, Patch patch) {
  switch (p.kind) {
    case Packet::Kind::minkowski_wave:
      return patch == Patch::line;
    case Packet::Kind::rindler_wave:
      return patch == Patch::right;
    case Packet::Kind::boost_plus:
    case Packet::Kind::boost_minus:
      return patch != Patch::line;
  }
  return false;
}

struct PairSpec {
  std::size_t first;
  std::size_t second;
};

struct PairResult {
  Complex fine;
  Complex coarse;
  double gk_error = 0.0;
};

struct PatchResult {
  std::vector<PairResult> pairs;
  bool truncated = false;
  double truncation_estimate = 0.0;
  bool unconverged = false;
};

// |packet| near +-cut (several nearby points, so an oscillation node does
// not hide the tail), including the larger of the boost amplitudes.
double edge_amplitude(const Profile& pr, double cut) {
  double out = 0.0;
  for (double sign : {-1.0, 1.0}) {
    for (double stretch : {1.0, 1.03, 1.07, 1.12}) {
      const double xi = sign * cut * stretch;
      Complex s = 0.0;
      for (std::size_t k = 0; k < pr.omega.size(); ++k) {
        s += pr.weight[k] * std::max(1.0, pr.cosh_r[k]) * std::polar(1.0, -pr.omega[k] * xi);
      }
      out = std::max(out, std::abs(s));
    }
  }
  return out;
}

// Evaluates packet values and derivatives (with respect to the patch
// coordinate) on the fine and the half frequency grid. Each packet is cut off
// outside its own window: window_widths envelope deviations, widened while
// the packet's tail at the edge still matters at the tolerance. The ln(omega)
// grid is fine enough that the aliasing replicas of the half grid stay a
// further window away.
class PacketSet {
 public:
  PacketSet(std::vector<Packet> packets, const QuadratureSpec& spec)
      : packets_(std::move(packets)) {
    if (spec.frequency_nodes < 5 || spec.frequency_nodes % 2 == 0) {
      throw ConfigError("frequency_nodes must be odd and at least 5");
    }
    std::map<std::pair<double, double>, std::size_t> seen;
    for (const Packet& p : packets_) {
      auto key = std::make_pair(p.center, p.width);
      auto it = seen.find(key);
      if (it == seen.end()) {
        it = seen.emplace(key, profiles_.size()).first;
        const double omega_top = p.frequency() * std::exp(4.0 * p.width);
        const double base_cut = spec.window_widths * envelope_std(p);
        auto profile_for = [&](double cut) {
          const double dx_max = kPi / (2.0 * omega_top * cut);
          int nodes = static_cast<int>(std::ceil(24.0 * p.width / dx_max)) + 1;
          nodes = std::max(nodes + (nodes % 2 == 0 ? 1 : 0), spec.frequency_nodes);
          return make_profile(p.center, p.width, nodes);
        };
        double cut = base_cut;
        Profile pr = profile_for(cut);
        // tail size ~ amplitude * |d packet| bound * (tail length ~ cut)
        auto tail = [&](const Profile& q, double c) {
          return edge_amplitude(q, c) * omega_top * c;
        };
        while (tail(pr, cut) > 0.1 * spec.abs_tol &&
               cut * 1.25 <= spec.max_window_growth * base_cut * (1.0 + 1e-12)) {
          cut *= 1.25;
          pr = profile_for(cut);
        }
        profiles_.push_back(std::move(pr));
        cut_.push_back(cut);
      }
      profile_of_.push_back(it->second);
    }
    phase_.resize(profiles_.size());
  }

  std::size_t size() const { return packets_.size(); }
  const Packet& operator[](std::size_t i) const { return packets_[i]; }
  double cut(std::size_t m) const { return cut_[profile_of_[m]]; }

  // Bounds on |packet| and |d packet| over the whole line.
  double value_bound() const { return bound(false); }
  double derivative_bound() const { return bound(true); }

  // Fills value/derivative arrays (fine then coarse) at coordinate xi.
  void evaluate(Patch patch, double xi, std::vector<Complex>& f, std::vector<Complex>& d,
                std::vector<Complex>& fc, std::vector<Complex>& dc, bool apply_cut = true) {
    for (std::size_t g = 0; g < profiles_.size(); ++g) {
      if (apply_cut && std::abs(xi) > cut_[g]) continue;
      const Profile& pr = profiles_[g];
      auto& ph = phase_[g];
      ph.resize(pr.omega.size());
      for (std::size_t k = 0; k < pr.omega.size(); ++k) ph[k] = std::polar(1.0, -pr.omega[k] * xi);
    }
    f.assign(size(), 0.0);
    d.assign(size(), 0.0);
    fc.assign(size(), 0.0);
    dc.assign(size(), 0.0);
    const Complex i_unit(0.0, 1.0);
    for (std::size_t m = 0; m < size(); ++m) {
      const Packet& p = packets_[m];
      if (!active(p, patch)) continue;
      if (apply_cut && std::abs(xi) > cut(m)) continue;
      const Profile& pr = profiles_[profile_of_[m]];
      const auto& ph = phase_[profile_of_[m]];
      // Either a * e^{-i omega xi} or a * e^{+i omega xi}.
      const bool flip = (p.kind == Packet::Kind::boost_plus && patch == Patch::left) ||
                        (p.kind == Packet::Kind::boost_minus && patch == Patch::right);
      const std::vector<double>* amp = nullptr;
      if (p.kind == Packet::Kind::boost_plus) amp = patch == Patch::right ? &pr.cosh_r : &pr.sinh_r;
      if (p.kind == Packet::Kind::boost_minus) amp = patch == Patch::right ? &pr.sinh_r : &pr.cosh_r;
      Complex sf = 0.0, sd = 0.0, cf = 0.0, cd = 0.0;
      for (std::size_t k = 0; k < pr.omega.size(); ++k) {
        const double a = pr.weight[k] * (amp ? (*amp)[k] : 1.0);
        const Complex e = flip ? std::conj(ph[k]) : ph[k];
        const Complex val = a * e;
        const Complex der = (flip ? i_unit : -i_unit) * pr.omega[k] * val;
        sf += val;
        sd += der;
        if (k % 2 == 0) {
          cf += val;
          cd += der;
        }
      }
      cf *= 2.0;
      cd *= 2.0;
      if (p.conjugated) {
        sf = std::conj(sf);
        sd = std::conj(sd);
        cf = std::conj(cf);
        cd = std::conj(cd);
      }
      f[m] = sf;
      d[m] = sd;
      fc[m] = cf;
      dc[m] = cd;
    }
  }

 private:
  double bound(bool derivative) const {
    double out = 0.0;
    for (const Profile& pr : profiles_) {
      double s = 0.0;
      for (std::size_t k = 0; k < pr.omega.size(); ++k) {
        s += pr.weight[k] * std::max(1.0, pr.cosh_r[k]) * (derivative ? pr.omega[k] : 1.0);
      }
      out = std::max(out, s);
    }
    return out;
  }

  std::vector<Packet> packets_;
  std::vector<Profile> profiles_;
  std::vector<double> cut_;
  std::vector<std::size_t> profile_of_;
  std::vector<std::vector<Complex>> phase_;
};

// i (f1* d2 - d1* f2) for every pair, fine grid then coarse grid.
void pair_integrand(const std::vector<PairSpec>& pairs, const std::vector<Complex>& f,
                    const std::vector<Complex>& d, const std::vector<Complex>& fc,
                    const std::vector<Complex>& dc, std::vector<Complex>& out) {
  const Complex i_unit(0.0, 1.0);
  out.resize(2 * pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const auto [a, b] = pairs[q];
    out[q] = i_unit * (std::conj(f[a]) * d[b] - std::conj(d[a]) * f[b]);
    out[pairs.size() + q] = i_unit * (std::conj(fc[a]) * dc[b] - std::conj(dc[a]) * fc[b]);
  }
}

PatchResult integrate_patch(PacketSet& set, const std::vector<PairSpec>& pairs, Patch patch,
                            const QuadratureSpec& spec) {
  PatchResult result;
  result.pairs.assign(pairs.size(), {});
  double half = 0.0;
  double omega_max = 0.0;
  double cut_max = 0.0;
  for (std::size_t m = 0; m < set.size(); ++m) {
    if (!active(set[m], patch)) continue;
    cut_max = std::max(cut_max, set.cut(m));
    omega_max = std::max(omega_max, set[m].frequency() * std::exp(4.0 * set[m].width));
  }
  if (cut_max == 0.0) return result;
  half = cut_max;
  const double total = 2.0 * half;

  std::vector<Complex> f, d, fc, dc, g;
  const std::size_t np = pairs.size();

  // Window truncation: packet size at its own cutoff times the partner bound,
  // over a tail as long as the window itself.
  const double fmax = set.value_bound();
  const double dmax = set.derivative_bound();
  for (std::size_t m = 0; m < set.size(); ++m) {
    if (!active(set[m], patch)) continue;
    for (double edge : {-set.cut(m), set.cut(m)}) {
      set.evaluate(patch, edge, f, d, fc, dc, false);
      const double tail =
          (std::abs(f[m]) * dmax + std::abs(d[m]) * fmax) * set.cut(m);
      result.truncation_estimate = std::max(result.truncation_estimate, tail);
    }
  }
  result.truncated = result.truncation_estimate > spec.abs_tol;

  std::vector<Complex> kron(2 * np), gauss(np);
  // GK15 on [a, b]; returns max error over pairs and fills kron/gauss.
  auto rule = [&](double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::fill(kron.begin(), kron.end(), Complex(0.0));
    std::fill(gauss.begin(), gauss.end(), Complex(0.0));
    for (int k = 0; k < 15; ++k) {
      const int j = k < 8 ? k : 14 - k;
      const double x = k < 8 ? c - h * kXgk[j] : c + h * kXgk[j];
      set.evaluate(patch, x, f, d, fc, dc);
      pair_integrand(pairs, f, d, fc, dc, g);
      const double wk = kWgk[j] * h;
      // Gauss nodes are the odd-indexed Kronrod abscissae.
      const bool is_gauss = j % 2 == 1 || j == 7;
      const double wg = j == 7 ? kWg[3] * h : (j % 2 == 1 ? kWg[j / 2] * h : 0.0);
      for (std::size_t q = 0; q < 2 * np; ++q) kron[q] += wk * g[q];
      if (is_gauss) {
        for (std::size_t q = 0; q < np; ++q) gauss[q] += wg * g[q];
      }
    }
    double err = 0.0;
    for (std::size_t q = 0; q < np; ++q) err = std::max(err, std::abs(kron[q] - gauss[q]));
    return err;
  };

  // Initial pieces about one period of the fastest packet long; then
  // depth-first bisection, left to right, for a reproducible summation order.
  const double period = 2.0 * kPi / omega_max;
  const int pieces = std::max(1, static_cast<int>(std::ceil(total / period)));
  int intervals = 0;
  std::vector<std::pair<double, double>> stack;
  for (int s = pieces - 1; s >= 0; --s) {
    stack.emplace_back(-half + total * s / pieces, -half + total * (s + 1) / pieces);
  }
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const double err = rule(a, b);
    ++intervals;
    const double allowed = spec.abs_tol * (b - a) / total;
    const bool too_many = intervals + static_cast<int>(stack.size()) >= spec.max_intervals;
    const bool too_small = (b - a) < 1e-12 * total;
    if (err <= allowed || too_many || too_small) {
      if (err > allowed) result.unconverged = true;
      for (std::size_t q = 0; q < np; ++q) {
        result.pairs[q].fine += kron[q];
        result.pairs[q].coarse += kron[np + q];
        result.pairs[q].gk_error += std::abs(kron[q] - gauss[q]);
      }
    } else {
      const double mid = 0.5 * (a + b);
      stack.emplace_back(mid, b);
      stack.emplace_back(a, mid);
    }
  }
  return result;
}

std::vector<Patch> patches_for(const std::vector<Packet>& packets) {
  bool line = false, wedge = false;
  for (const Packet& p : packets) {
    (p.kind == Packet::Kind::minkowski_wave ? line : wedge) = true;
  }
  if (line && wedge) {
    throw ConfigError(
        "inertial plane-wave packets cannot be paired with wedge packets; use the boost_eigen "
        "family for the inertial basis");
  }
  if (line) return {Patch::line};
  return {Patch::right, Patch::left};
}

// Sum over patches of the pair integrals.
struct PairTotals {
  std::vector<PairResult> pairs;
  bool truncated = false;
  double truncation_estimate = 0.0;
  bool unconverged = false;
};

PairTotals integrate_pairs(const std::vector<Packet>& packets, const std::vector<PairSpec>& pairs,
                           const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.window_widths > 0.0) || !(spec.max_window_growth >= 1.0) ||
      spec.max_intervals < 1) {
    throw ConfigError("invalid quadrature spec");
  }
  PacketSet set(packets, spec);
  PairTotals totals;
  totals.pairs.assign(pairs.size(), {});
  for (Patch patch : patches_for(packets)) {
    const PatchResult r = integrate_patch(set, pairs, patch, spec);
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      totals.pairs[q].fine += r.pairs[q].fine;
      totals.pairs[q].coarse += r.pairs[q].coarse;
      totals.pairs[q].gk_error += r.pairs[q].gk_error;
    }
    totals.truncated = totals.truncated || r.truncated;
    totals.truncation_estimate = std::max(totals.truncation_estimate, r.truncation_estimate);
    totals.unconverged = totals.unconverged || r.unconverged;
  }
  return totals;
}

void validate(const ModeBasis& b) {
  if (b.boundary != Boundary::full_line) {
    throw ConfigError("mode bases on a Dirichlet half line are not supported");
  }
  if (b.frequencies.empty()) throw ConfigError("mode basis needs at least one frequency");
  for (std::size_t i = 0; i < b.frequencies.size(); ++i) {
    if (!(b.frequencies[i] > 0.0) || !std::isfinite(b.frequencies[i])) {
      throw ConfigError("mode frequencies must be positive and finite");
    }
    if (i > 0 && !(b.frequencies[i] > b.frequencies[i - 1])) {
      throw ConfigError("mode frequencies must be strictly increasing");
    }
  }
  if (!(b.packet_width > 0.0)) throw ConfigError("packet_width must be positive");
  const bool inertial = b.chart.name == "minkowski";
  const bool rindler = b.chart.name == "rindler";
  if (b.family == ModeFamily::boost_eigen && !inertial) {
    throw ConfigError("boost eigenmodes are defined for the minkowski chart only");
  }
  if (!inertial && !rindler) {
    throw ConfigError("no mode basis for chart " + b.chart.name);
  }
}

using Mat = Eigen::MatrixXcd;

// S^{-1/2} on the numerically nondegenerate part of a Gram matrix.
Mat inverse_sqrt(const Mat& s) {
  const Mat h = 0.5 * (s + s.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXd lam = es.eigenvalues();
  if (!(lam.maxCoeff() > 0.0) || lam.minCoeff() < -1e-6 * lam.maxCoeff()) {
    throw ConfigError("packet Gram matrix is not positive: packets are not positive frequency");
  }
  Eigen::VectorXd inv(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    inv[k] = lam[k] > 1e-8 * lam.maxCoeff() ? 1.0 / std::sqrt(lam[k]) : 0.0;
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

double spectral_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

ComplexMatrix to_matrix(const Mat& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

}  // namespace

std::size_t ModeBasis::size() const {
  return family == ModeFamily::boost_eigen ? 2 * frequencies.size() : frequencies.size();
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 1) throw ConfigError("log_spaced needs 0 < lo < hi, n >= 1");
  std::vector<double> out;
  if (n == 1) return {lo};
  const double step = std::log(hi / lo) / (n - 1);
  for (int k = 0; k < n; ++k) out.push_back(lo * std::exp(step * k));
  return out;
}

ModeBasis make_mode_basis(const ConformalChart& chart, std::vector<double> frequencies,
                          double packet_width, ModeFamily family) {
  ModeBasis b{chart, Boundary::full_line, std::move(frequencies), packet_width, family};
  validate(b);
  return b;
}

double Packet::frequency() const { return std::exp(center); }

Packet packet(const ModeBasis& basis, std::size_t index) {
  validate(basis);
  if (index >= basis.size()) {
    std::ostringstream os;
    os << "packet index " << index << " out of range for a basis of " << basis.size();
    throw ConfigError(os.str());
  }
  const std::size_t n = basis.frequencies.size();
  Packet p{Packet::Kind::minkowski_wave, 0.0, basis.packet_width, false};
  if (basis.family == ModeFamily::boost_eigen) {
    p.kind = index < n ? Packet::Kind::boost_plus : Packet::Kind::boost_minus;
    index %= n;
  } else if (basis.chart.name == "rindler") {
    p.kind = Packet::Kind::rindler_wave;
  }
  p.center = std::log(basis.frequencies[index]);
  return p;
}

Packet conjugate(Packet p) {
  p.conjugated = !p.conjugated;
  return p;
}

KGResult kg_inner_product(const Packet& m1, const Packet& m2, const QuadratureSpec& spec) {
  const PairTotals t = integrate_pairs({m1, m2}, {{0, 1}}, spec);
  const PairResult& r = t.pairs[0];
  KGResult out;
  out.value = r.fine;
  out.error = r.gk_error + std::abs(r.fine - r.coarse);
  out.truncated = t.truncated;
  out.truncation_estimate = t.truncation_estimate;
  out.unconverged = t.unconverged;
  return out;
}

BogolubovPair compute_coefficients(const ModeBasis& a, const ModeBasis& b,
                                   const QuadratureSpec& spec) {
  validate(a);
  validate(b);
  const std::size_t na = a.size();
  const std::size_t nb = b.size();

  // Packet list: A, B, conj(A).
  std::vector<Packet> packets;
  for (std::size_t i = 0; i < na; ++i) packets.push_back(packet(a, i));
  for (std::size_t j = 0; j < nb; ++j) packets.push_back(packet(b, j));
  for (std::size_t i = 0; i < na; ++i) packets.push_back(conjugate(packet(a, i)));

  std::vector<PairSpec> pairs;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < na; ++k) pairs.push_back({i, k});
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t m = 0; m < nb; ++m) pairs.push_back({na + j, na + m});
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i) pairs.push_back({na + j, i});
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i) pairs.push_back({na + j, na + nb + i});

  const PairTotals t = integrate_pairs(packets, pairs, spec);

  auto assemble = [&](bool coarse, Mat& sa, Mat& sb, Mat& al, Mat& be, double& gk) {
    sa.resize(na, na);
    sb.resize(nb, nb);
    al.resize(nb, na);
    be.resize(nb, na);
    gk = 0.0;
    std::size_t q = 0;
    auto take = [&]() {
      const PairResult& r = t.pairs[q++];
      gk = std::max(gk, r.gk_error);
      return coarse ? r.coarse : r.fine;
    };
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t k = 0; k < na; ++k) sa(i, k) = take();
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t m = 0; m < nb; ++m) sb(j, m) = take();
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t i = 0; i < na; ++i) al(j, i) = take();
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t i = 0; i < na; ++i) be(j, i) = -take();
  };

  auto transform = [&](bool coarse, Mat& alpha, Mat& beta, double& amplification, double& gk) {
    Mat sa, sb, al, be;
    assemble(coarse, sa, sb, al, be, gk);
    const Mat x = inverse_sqrt(sa);
    const Mat y = inverse_sqrt(sb);
    alpha = y.adjoint() * al * x;
    beta = y.adjoint() * be * x.conjugate();
    amplification = spectral_norm(x) * spectral_norm(y);
  };

  Mat alpha, beta, alpha_c, beta_c;
  double amp = 0.0, amp_c = 0.0, gk = 0.0, gk_c = 0.0;
  transform(false, alpha, beta, amp, gk);
  transform(true, alpha_c, beta_c, amp_c, gk_c);

  BogolubovPair out;
  out.alpha = to_matrix(alpha);
  out.beta = to_matrix(beta);
  for (std::size_t j = 0; j < nb; ++j) out.row_frequencies.push_back(packet(b, j).frequency());
  const double grid_change = std::max((alpha - alpha_c).cwiseAbs().maxCoeff(),
                                      (beta - beta_c).cwiseAbs().maxCoeff());
  // Quadrature error enters through the Gram matrices as well as the
  // overlaps, hence the squared amplification bound.
  out.discretization_error = grid_change + gk * amp * std::max(1.0, amp) * std::sqrt(double(na));
  out.truncated = t.truncated;
  out.unconverged = t.unconverged;
  return out;
}

double expected_number(const BogolubovPair& pair, std::size_t row) {
  if (row >= pair.beta.rows) throw ConfigError("row index out of range");
  double s = 0.0;
  for (std::size_t k = 0; k < pair.beta.cols; ++k) s += std::norm(pair.beta(row, k));
  return s;
}

double expected_number_error(const BogolubovPair& pair, std::size_t row) {
  if (row >= pair.beta.rows) throw ConfigError("row index out of range");
  const double e = pair.discretization_error;
  double s = 0.0;
  for (std::size_t k = 0; k < pair.beta.cols; ++k) s += 2.0 * std::abs(pair.beta(row, k)) * e + e * e;
  return s;
}

double row_normalization(const BogolubovPair& pair, std::size_t row) {
  if (row >= pair.alpha.rows) throw ConfigError("row index out of range");
  double s = 0.0;
  for (std::size_t k = 0; k < pair.alpha.cols; ++k) {
    s += std::norm(pair.alpha(row, k)) - std::norm(pair.beta(row, k));
  }
  return s;
}

double thermal_ratio(const BogolubovPair& pair, std::size_t row) {
  if (row >= pair.alpha.rows) throw ConfigError("row index out of range");
  double a = 0.0;
  for (std::size_t k = 0; k < pair.alpha.cols; ++k) a += std::norm(pair.alpha(row, k));
  if (a == 0.0) throw SingularityError("row has no positive-frequency overlap");
  return expected_number(pair, row) / a;
}

}  // namespace mirrorflux
