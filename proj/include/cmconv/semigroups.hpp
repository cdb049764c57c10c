#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cmconv/transforms.hpp"

namespace cmconv {

/// B(z) = i gamma + sum_k w_k (z + zeta_k) / (z - zeta_k), zeta_k = e^{i theta_k}.
///
/// Nonnegative weights make Re B <= 0 on the disc.
struct HerglotzField {
    double gamma = 0.0;
    std::vector<Atom> tau;

    double total_mass() const noexcept;
};

/// Taylor coefficients r_1..r_N of a vector field, B(z) = sum r_n z^{n-1}.
class FieldSeries {
  public:
    FieldSeries() = default;
    explicit FieldSeries(std::vector<Complex> r);

    std::size_t order() const noexcept { return r_.size(); }
    /// 1-based; zero beyond the stored order.
    Complex r(std::size_t n) const { return n >= 1 && n <= r_.size() ? r_[n - 1] : Complex{}; }
    const std::vector<Complex>& coeffs() const noexcept { return r_; }

    /// B as a series in z of the given order (coefficient k is r_{k+1}).
    TruncatedSeries as_series(std::size_t order) const;
    Complex eval(Complex z) const noexcept;

  private:
    std::vector<Complex> r_;
};

/// r_1 = i gamma - tau(T), r_{n+1} = -2 sum_k w_k e^{-i n theta_k}.
FieldSeries field_series(const HerglotzField& f, std::size_t order);

/// Throws Errc::domain for |z| >= 1.
Complex field_eval(const HerglotzField& f, Complex z);

/// max Re B over a polar grid of the closed disc (radii up to 1).
double max_real_part(const FieldSeries& b, int angles = 256);

/// Recovers (gamma, tau) from a coefficient sequence.
///
/// gamma = Im r_1; tau is sampled at `grid_points` equispaced angles from the
/// Abel-smoothed density -Re B(r0 e^{i theta}) / (2 pi), then renormalized to
/// total mass -Re r_1.  The n-th moment of the result is r0^n times the true
/// one.  Throws Errc::not_herglotz when Re B exceeds 1e-9 on the validation
/// grid, Errc::usage for fewer than two coefficients.
HerglotzField field_from_series(const FieldSeries& r, int grid_points, double r0 = 0.99);

/// eta-coefficient trajectories of a pair semigroup started at (delta_1, delta_1).
struct SemigroupEvolution {
    std::vector<double> times;
    std::vector<EtaCoefficients> mu;  // a_n(t_j)
    std::vector<EtaCoefficients> nu;  // b_n(t_j)

    PairDistribution slice(std::size_t j) const { return {mu[j], nu[j]}; }
    PairDistribution final_slice() const { return slice(times.size() - 1); }
};

/// Fixed-step RK4 on d eta_mu/dt = eta_mu B1(eta_nu), d eta_nu/dt = eta_nu B2(eta_nu),
/// taken coefficientwise through z^N.  Every step is saved.  Throws
/// Errc::instability if a slice violates |eta(z)| <= |z| by more than 1e-6 on
/// |z| = 1/2.
SemigroupEvolution evolve_coefficients(const FieldSeries& b1, const FieldSeries& b2, double t_end, int steps,
                                       std::size_t order);

/// Pointwise trajectories, indexed [point][time step].
struct GridTrajectories {
    std::vector<double> times;
    std::vector<Complex> z;
    std::vector<std::vector<Complex>> mu;
    std::vector<std::vector<Complex>> nu;
};

/// Fixed-step RK4 of the same system at each starting point (|z| < 1).
/// Throws Errc::instability if a trajectory leaves the closed disc or its
/// modulus increases by more than 1e-9 over a step.
GridTrajectories evolve_grid(const HerglotzField& b1, const HerglotzField& b2, double t_end,
                             const std::vector<Complex>& z_points, int steps);

/// z exp(int_0^t B1(eta_nu_s(z)) ds) by composite Simpson over a uniform time
/// grid; `t` must be one of the grid times.
Complex kappa_quadrature(const HerglotzField& b1, const std::vector<double>& times,
                         const std::vector<Complex>& nu_trajectory, Complex z, double t);

/// z exp(t log(eta(z)/z)), the principal branch taken with Im in [0, 2pi).
/// Throws Errc::not_boolean_id when a_1 = 0.
EtaCoefficients boolean_power(const EtaCoefficients& mu, double t);

/// Zero-free test for eta(z)/z on |z| < radius by the argument principle.
bool check_boolean_id(const EtaCoefficients& mu, double radius = 0.9, int points = 512);

/// Vector fields whose semigroup reaches `target` at t = 1.
///
/// Principal logarithms give r_1, s_1; each later (r_n, s_n) enters the
/// order-n coefficients affinely, so two trial evolutions per order fix it.
/// Throws Errc::embedding_unsupported unless 0 < |b_1| < 1 and a_1 != 0, and
/// Errc::degenerate when an affine slope falls below 1e-12.
std::pair<FieldSeries, FieldSeries> fields_from_time_one(const PairDistribution& target, std::size_t order,
                                                         int steps = 1000);

enum class RightComponent { generic, delta };

struct TransformedFields {
    FieldSeries b1;
    FieldSeries b2;
    bool b1_valid = false;  // Re <= 0 on the grid
    bool b2_valid = false;
};

/// Fields with the same time-one distribution:
///   B2' = (1 + 2 pi i n / s_1) B2   (generic)  or  B2 + 2 pi i n  (delta),
///   B1' = 2 pi i m - 2 pi i n r_1 / s_1 + (1 + 2 pi i n / s_1) B1.
/// With s_1 = 0 only n = 0 is meaningful (B1' = B1 + 2 pi i m).  Validity is
/// checked on a grid and reported, not assumed.  Throws
/// Errc::undefined_transform for s_1 = 0 and n != 0.
TransformedFields nonuniqueness_transform(const FieldSeries& b1, const FieldSeries& b2, int n, int m,
                                          RightComponent kind = RightComponent::generic);

}  // namespace cmconv
