#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace centralkit {

using Complex = std::complex<double>;

/// Truncated Fourier series sum_{|k|<=N} c_k e^{ikx} on [-pi, pi).
struct FourierProjection {
  std::size_t N = 0;
  std::vector<Complex> coeffs;  ///< c_k stored at index k + N
  /// True when the coefficients came from 2N+1 point values (discrete inner
  /// product) rather than exact moments.
  bool interpolated = false;

  FourierProjection() = default;
  FourierProjection(std::size_t n, std::vector<Complex> c, bool from_samples);
  static FourierProjection zero(std::size_t n);

  Complex& operator[](long k) { return coeffs[static_cast<std::size_t>(k + static_cast<long>(N))]; }
  const Complex& operator[](long k) const {
    return coeffs[static_cast<std::size_t>(k + static_cast<long>(N))];
  }

  /// Real part of the partial sum at x.
  double evaluate(double x) const;
  /// max_k |c_{-k} - conj(c_k)|
  double conjugate_asymmetry() const;
  /// sqrt(sum_k |c_k|^2)
  double l2_norm() const;
};

/// x_j = -pi + 2 pi j / M, j = 0..M-1.
std::vector<double> equispaced_points(std::size_t M);
/// The 2N+1 collocation points of a degree-N projection.
inline std::vector<double> collocation_points(std::size_t N) { return equispaced_points(2 * N + 1); }

/// Discrete Fourier coefficients from 2N+1 samples at the collocation points.
FourierProjection project(std::span<const double> samples);

/// Real parts of the partial sum on M equispaced points (M >= 2N+1).
std::vector<double> synthesize(const FourierProjection& p, std::size_t M);

/// Periodic signed difference wrapped into [-pi, pi).
double wrap_angle(double x);

// ---------------------------------------------------------------------------
// Edge detection

/// Concentration factor eta on [0, 1]: Fejer (eta = 1) or the exponential
/// factor C exp(beta / (xi (xi - 1))) normalised to unit mass.
class ConcentrationKernel {
 public:
  enum class Kind { Fejer, Exponential };

  static ConcentrationKernel fejer();
  static ConcentrationKernel exponential(double beta = 1.0);

  Kind kind() const { return kind_; }
  double beta() const { return beta_; }
  double normalization() const { return norm_; }
  double operator()(double xi) const;

 private:
  ConcentrationKernel(Kind kind, double beta, double norm) : kind_(kind), beta_(beta), norm_(norm) {}
  Kind kind_;
  double beta_;
  double norm_;
};

/// (pi/N) sum_{|k|<=N} eta(|k|/N) c_k (ik) e^{ikx}, real part. Approximates
/// the jump v(x+) - v(x-) near a discontinuity and decays in smooth regions.
double concentration_detect(const FourierProjection& p, const ConcentrationKernel& kernel,
                            double x);

struct Edge {
  double location;   ///< in [-pi, pi)
  double amplitude;  ///< estimated jump v(x+) - v(x-)
};

struct EdgeReport {
  std::vector<Edge> edges;
  double threshold = 0.0;
  std::size_t N_used = 0;
};

struct EdgeDetectorOptions {
  double threshold = 0.1;
  double exp_beta = 1.0;
  /// Sub-samples per collocation cell used to localise each peak.
  std::size_t refine_subdivisions = 32;
};

/// Pointwise minmod of the Fejer and exponential detectors.
double combined_detector(const FourierProjection& p, const ConcentrationKernel& fejer,
                         const ConcentrationKernel& exponential, double x);

/// Combined detector values at the collocation points.
std::vector<double> combined_detector_on_grid(const FourierProjection& p,
                                              const EdgeDetectorOptions& opt = {});

/// Edges are the local maxima of |combined detector| on the collocation grid
/// that exceed the threshold. Each one is then localised on a sub-grid, and
/// its amplitude is read there. For interpolated projections the amplitude
/// undoes the sin(kh/2)/(kh/2) inflation that sampling puts on jump coefficients.
EdgeReport minmod_edge_detect(const FourierProjection& p, const EdgeDetectorOptions& opt);
EdgeReport minmod_edge_detect(const FourierProjection& p, double threshold);

/// d(x) = min(cap, periodic distance from x to the nearest edge).
class DistanceFunction {
 public:
  explicit DistanceFunction(std::vector<double> edges, double cap = std::numbers::pi);
  double operator()(double x) const;
  const std::vector<double>& edges() const { return edges_; }
  double cap() const { return cap_; }

 private:
  std::vector<double> edges_;
  double cap_;
};

DistanceFunction distance_function(const EdgeReport& report, double cap = std::numbers::pi);

// ---------------------------------------------------------------------------
// Reconstruction in the direction of smoothness

struct MollifierOptions {
  double beta = 8.0;            ///< rho_beta(y) = exp(beta y^2 / (y^2 - 1))
  double c_p = 0.15;            ///< Dirichlet degree p = max(1, floor(c_p d N))
  std::size_t oversample = 4;   ///< quadrature points per collocation point
};

/// rho_beta(y) on [-1, 1], zero outside.
double mollifier_bump(double y, double beta);
/// D_p(y) = sin((p + 1/2) pi y) / (2 sin(pi y / 2))
double dirichlet_kernel(double y, std::size_t p);

/// Adaptive mollifier Psi_{theta,p} * P_N v with theta = d(x), p ~ d(x) N.
/// The partial sum is tabulated once on the quadrature grid.
class AdaptiveMollifier {
 public:
  AdaptiveMollifier(const FourierProjection& p, MollifierOptions opt = {});

  /// Throws std::invalid_argument when d <= 0.
  double operator()(double x, double d) const;
  double operator()(double x, const DistanceFunction& dist) const { return (*this)(x, dist(x)); }

  std::size_t degree(double d) const;

 private:
  std::size_t N_;
  MollifierOptions opt_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

double adaptive_mollify(const FourierProjection& p, const DistanceFunction& d, double x,
                        const MollifierOptions& opt = {});

struct FilterOptions {
  double beta = 8.0;
  double r = 1.0;    ///< p = max(2, round((c_f d N)^{r/(r+1)}))
  double c_f = 1.0;
};

/// sigma_p(xi) = exp(beta xi^p / (xi^2 - 1)) on [0, 1), zero at xi = 1.
double adaptive_filter_profile(double xi, double p, double beta);
std::size_t adaptive_filter_degree(double d, std::size_t N, const FilterOptions& opt);

/// sum_{|k|<=N} sigma_p(|k|/N) c_k e^{ikx} with an adaptive degree p(d(x)).
double adaptive_filter(const FourierProjection& p, const DistanceFunction& d, double x,
                       const FilterOptions& opt = {});

}  // namespace centralkit
