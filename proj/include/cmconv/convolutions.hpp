#pragma once

#include <string_view>

#include "cmconv/transforms.hpp"

namespace cmconv {

// Multiplicative convolutions of circle measures, all computed on
// eta-coefficients.  Inputs must share one truncation order.

/// Monotone: eta_mu o eta_nu.
EtaCoefficients conv_monotone(const EtaCoefficients& mu, const EtaCoefficients& nu);

/// Boolean: eta_mu(z) eta_nu(z) / z.
EtaCoefficients conv_boolean(const EtaCoefficients& mu, const EtaCoefficients& nu);

/// Orthogonal: z eta_mu(eta_nu(z)) / eta_nu(z), formed as z ((eta_mu(w)/w) o eta_nu).
/// For eta_nu = 0 this is a_1(mu) z.
EtaCoefficients conv_orthogonal(const EtaCoefficients& mu, const EtaCoefficients& nu);

/// Conditionally monotone convolution of pairs.
///
/// Left component ((eta_mu1(w)/w) o eta_nu2) * eta_mu2, right component
/// eta_nu1 o eta_nu2.  The quotient is never formed by dividing by eta_nu2, so
/// a vanishing mean of nu2 (including nu2 = Haar, where the left component is
/// a_1(mu1) eta_mu2) needs no special case.
PairDistribution conv_cmonotone(const PairDistribution& p1, const PairDistribution& p2);

/// Conditionally free convolution through the subordination maps w1, w2 of
/// nu1 and nu2: eta_mu / z = prod_i (eta_mui / z)(w_i), and likewise for nu.
/// Equivalent to multiplying T-transforms but free of series inversion.
/// All four means must be nonzero.
PairDistribution conv_cfree(const PairDistribution& p1, const PairDistribution& p2);

/// eta_mu(eta_nu(m z) / m) with m = m_1(mu) != 0.
EtaCoefficients conv_monotone0(const EtaCoefficients& mu, const EtaCoefficients& nu);

/// z (eta_mu(m_nu z)/(m_nu z)) (eta_nu(m_mu z)/(m_mu z)); both means nonzero.
EtaCoefficients conv_boolean0(const EtaCoefficients& mu, const EtaCoefficients& nu);

/// T_c: eta -> c eta.
EtaCoefficients scale_T(Complex c, const EtaCoefficients& mu);

/// S_c: eta(z) -> eta(c z) / c; throws Errc::usage for c = 0.
EtaCoefficients scale_S(Complex c, const EtaCoefficients& mu);

/// n-fold power under conv_cmonotone, associated to the left.
PairDistribution cmonotone_power(const PairDistribution& p, int n);

enum class ConvolutionKind { monotone, boolean, orthogonal, cmonotone, cfree, monotone0, boolean0 };

/// True for the kinds that act on pairs (cmonotone, cfree).
bool is_pair_kind(ConvolutionKind kind) noexcept;
ConvolutionKind parse_convolution_kind(std::string_view name);
std::string_view to_string(ConvolutionKind kind) noexcept;

/// Dispatch for monotone, boolean, orthogonal, monotone0, boolean0.
EtaCoefficients convolve_single(ConvolutionKind kind, const EtaCoefficients& mu, const EtaCoefficients& nu);

/// Dispatch for cmonotone and cfree.
PairDistribution convolve_pair(ConvolutionKind kind, const PairDistribution& p1, const PairDistribution& p2);

}  // namespace cmconv
