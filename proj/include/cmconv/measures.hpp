#pragma once

#include <cstddef>
#include <vector>

#include "cmconv/transforms.hpp"

namespace cmconv {

/// Abel-Poisson smoothed density on equispaced angles, relative to dtheta/(2 pi).
struct DensitySamples {
    double radius = 0.0;
    std::vector<double> angles;
    std::vector<double> values;
};

/// p(theta) = 1 + 2 sum_{n<=N} radius^n Re(m_n e^{-i n theta}) at `points`
/// angles 2 pi j / points.  Throws Errc::inconsistent_moments when a sample is
/// below -1e-9, Errc::usage unless 0 < radius < 1 and points >= 1.
DensitySamples poisson_density(const MomentSequence& m, double radius, int points);

/// (1 - rho^2) / (1 - 2 rho cos theta + rho^2).
double poisson_kernel(double rho, double theta);

/// Trapezoid mass, in units of total mass, of the samples whose angle lies
/// within `half_width` of `center` (circular distance).
double window_mass(const DensitySamples& d, double center, double half_width);

/// Trapezoid integral of the samples over [0, 2 pi) divided by 2 pi.
double total_mass(const DensitySamples& d);

// Closed forms for the two semigroups driven by B2 = -a + i b and B2 = a (z - 1).
// All require a > 0 and t >= 0 (Errc::usage otherwise).

/// Density of the measure with eta(z) = z e^{(-a + i b) t}: the Poisson kernel
/// of radius e^{-a t} rotated by b t.
DensitySamples reference_poisson(double a, double b, double t, const std::vector<double>& angles);

/// m_n = e^{-a t} for n = 1..N: the mixture (1 - e^{-a t}) Haar + e^{-a t} delta_1.
MomentSequence reference_haar_delta(double a, double t, std::size_t order);

/// eta(z) = z (z + (1 - z) e^{a t})^{-r}, expanded through z^N.
EtaCoefficients reference_mu_r(double a, double r, double t, std::size_t order);

}  // namespace cmconv
