#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "cmconv/series.hpp"

namespace cmconv {

/// |a_1| at or below this is treated as a vanishing first moment.
inline constexpr double mean_zero_tolerance = 1e-12;

struct Atom {
    double angle = 0.0;   // radians
    double weight = 0.0;  // >= 0
};

struct AtomicMeasure {
    std::vector<Atom> atoms;
};
struct HaarMeasure {};
struct RawMoments {
    std::vector<Complex> values;  // m_1..m_N
};

/// A probability measure on the unit circle: point masses, the normalized
/// Haar measure, or a raw moment sequence.
using CircleMeasureSpec = std::variant<AtomicMeasure, HaarMeasure, RawMoments>;

/// m_1..m_N with m_n = integral of zeta^n.
class MomentSequence {
  public:
    MomentSequence() = default;
    explicit MomentSequence(std::vector<Complex> values) : values_(std::move(values)) {}

    /// m_n = c^n, the moments of the point mass at c (or the functional
    /// delta_c when |c| < 1).
    static MomentSequence delta(Complex c, std::size_t order);

    std::size_t order() const noexcept { return values_.size(); }
    /// 1-based: m(1) is the mean.
    Complex m(std::size_t n) const { return values_.at(n - 1); }
    const std::vector<Complex>& values() const noexcept { return values_; }

    /// The series psi(z) = sum m_n z^n.
    TruncatedSeries psi() const;

  private:
    std::vector<Complex> values_;
};

/// Coefficients a_1..a_N of eta(z) = sum a_n z^n (eta(0) = 0).
class EtaCoefficients {
  public:
    EtaCoefficients() : eta_(1) {}
    /// Throws Errc::domain unless eta(0) == 0.
    explicit EtaCoefficients(TruncatedSeries eta);

    static EtaCoefficients from_coeffs(const std::vector<Complex>& a);
    /// eta = c z: the point mass at c.
    static EtaCoefficients rotation(Complex c, std::size_t order);
    static EtaCoefficients haar(std::size_t order);

    std::size_t order() const noexcept { return eta_.order(); }
    /// 1-based.
    Complex a(std::size_t n) const { return eta_[n]; }
    Complex mean() const { return order() >= 1 ? eta_[1] : Complex{}; }
    const TruncatedSeries& series() const noexcept { return eta_; }

  private:
    TruncatedSeries eta_;
};

/// (mu, nu): the distributions of a variable under phi and psi.
struct PairDistribution {
    EtaCoefficients mu;
    EtaCoefficients nu;

    PairDistribution() = default;
    /// Throws Errc::usage if the orders differ.
    PairDistribution(EtaCoefficients mu_, EtaCoefficients nu_);

    std::size_t order() const noexcept { return mu.order(); }
};

/// Throws Errc::invalid_measure when weights are negative or not normalized
/// (1e-12), angles leave [0, 2pi), or some |m_n| exceeds 1 + 1e-9.
void validate(const CircleMeasureSpec& spec);

/// Moments m_1..m_N.  Raw moment specs must carry at least `order` values.
MomentSequence moments_from_spec(const CircleMeasureSpec& spec, std::size_t order);

/// eta = psi / (1 + psi).
EtaCoefficients eta_from_moments(const MomentSequence& m);

/// psi = eta / (1 - eta).
MomentSequence moments_from_eta(const EtaCoefficients& a);

/// R-tilde_nu, the solution of R(z / (1 - eta_nu)) = eta_nu / (1 - eta_nu).
/// Throws Errc::mean_zero when a_1 vanishes.
TruncatedSeries rtilde_from_eta(const EtaCoefficients& nu);

/// R-tilde_(mu,nu), the solution of R(z / (1 - eta_nu)) = eta_mu / (1 - eta_nu).
TruncatedSeries cfree_rtilde(const PairDistribution& p);

struct TTransforms {
    TruncatedSeries pair;  // T_(mu,nu)
    TruncatedSeries nu;    // T_nu
};

/// T_(mu,nu)(z) = R_(mu,nu)(R_nu^{-1}(z)) / R_nu^{-1}(z) and T_nu(z) = z / R_nu^{-1}(z).
///
/// Both are determined through z^{N-1}; the z^N slot is set to zero.
/// Requires nonzero means on both sides.
TTransforms t_transforms(const PairDistribution& p);

/// Inverts t_transforms: rebuilds (eta_mu, eta_nu) through z^N from T-transforms
/// known through z^{N-1}.
PairDistribution pair_from_t_transforms(const TTransforms& t);

/// max_j |eta(r e^{i theta_j})| - r over `points` equispaced angles.
double schur_margin(const EtaCoefficients& a, double radius, int points);

/// Sampled necessary condition |eta(z)| <= |z| (within 1e-9) on the circle
/// |z| = radius.  This is a grid test, not a certificate.
bool schur_check(const EtaCoefficients& a, double radius, int points);

}  // namespace cmconv
