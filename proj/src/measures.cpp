#include "cmconv/measures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cmconv/error.hpp"

namespace cmconv {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_params(double a, double t) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(Errc::usage, "parameter a must be positive");
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::usage, "time must be nonnegative");
}

double spacing(const DensitySamples& d) { return d.angles.empty() ? 0.0 : two_pi / d.angles.size(); }

}  // namespace

DensitySamples poisson_density(const MomentSequence& m, double radius, int points) {
    if (!(radius > 0.0 && radius < 1.0)) throw Error(Errc::usage, "density radius must lie in (0, 1)");
    if (points < 1) throw Error(Errc::usage, "density needs at least one point");
    DensitySamples out;
    out.radius = radius;
    out.angles.resize(points);
    out.values.resize(points);
    for (int j = 0; j < points; ++j) {
        const double theta = two_pi * j / points;
        // (radius e^{-i theta})^n by repeated multiplication.
        const Complex step = std::polar(radius, -theta);
        Complex w = 1.0;
        double p = 1.0;
        for (std::size_t n = 1; n <= m.order(); ++n) {
            w *= step;
            p += 2.0 * (m.m(n) * w).real();
        }
        if (p < -1e-9) {
            throw Error(Errc::inconsistent_moments,
                        "smoothed density is negative (" + std::to_string(p) + ") at theta = " + std::to_string(theta));
        }
        out.angles[j] = theta;
        out.values[j] = p;
    }
    return out;
}

double poisson_kernel(double rho, double theta) {
    return (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(theta) + rho * rho);
}

double window_mass(const DensitySamples& d, double center, double half_width) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d.angles.size(); ++j) {
        const double dist = std::abs(std::remainder(d.angles[j] - center, two_pi));
        if (dist <= half_width) acc += d.values[j];
    }
    return acc * spacing(d) / two_pi;
}

double total_mass(const DensitySamples& d) {
    double acc = 0.0;
    for (double v : d.values) acc += v;
    return acc * spacing(d) / two_pi;
}

DensitySamples reference_poisson(double a, double b, double t, const std::vector<double>& angles) {
    check_params(a, t);
    DensitySamples out;
    out.radius = 1.0;
    out.angles = angles;
    out.values.reserve(angles.size());
    const double rho = std::exp(-a * t);
    for (double theta : angles) out.values.push_back(poisson_kernel(rho, theta - b * t));
    return out;
}

MomentSequence reference_haar_delta(double a, double t, std::size_t order) {
    check_params(a, t);
    return MomentSequence(std::vector<Complex>(order, std::exp(-a * t)));
}

EtaCoefficients reference_mu_r(double a, double r, double t, std::size_t order) {
    check_params(a, t);
    const double e = std::exp(a * t);
    auto base = TruncatedSeries::constant(e, order);
    if (order >= 1) base[1] = 1.0 - e;
    auto eta = ps_shift_up(ps_exp(ps_log(base) * (-r)));
    eta[0] = 0.0;
    return EtaCoefficients(std::move(eta));
}

}  // namespace cmconv
