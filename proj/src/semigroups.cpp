#include "cmconv/semigroups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cmconv/error.hpp"

namespace cmconv {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double herglotz_tolerance = 1e-9;

Complex unit(double angle) { return std::polar(1.0, angle); }

// Sum of w (z + zeta)/(z - zeta) without the domain check; RK stages may
// probe points a rounding error outside the disc.
Complex field_eval_unchecked(const HerglotzField& f, Complex z) {
    Complex acc{0.0, f.gamma};
    for (const auto& atom : f.tau) {
        const auto zeta = unit(atom.angle);
        acc += atom.weight * (z + zeta) / (z - zeta);
    }
    return acc;
}

struct State {
    TruncatedSeries mu;
    TruncatedSeries nu;
};

State rhs(const TruncatedSeries& b1, const TruncatedSeries& b2, const State& s) {
    return {s.mu * ps_compose(b1, s.nu), s.nu * ps_compose(b2, s.nu)};
}

State axpy(const State& s, double h, const State& k) { return {s.mu + k.mu * h, s.nu + k.nu * h}; }

State rk4_step(const TruncatedSeries& b1, const TruncatedSeries& b2, const State& s, double h) {
    const auto k1 = rhs(b1, b2, s);
    const auto k2 = rhs(b1, b2, axpy(s, h / 2, k1));
    const auto k3 = rhs(b1, b2, axpy(s, h / 2, k2));
    const auto k4 = rhs(b1, b2, axpy(s, h, k3));
    State out = s;
    out.mu += (k1.mu + k2.mu * 2.0 + k3.mu * 2.0 + k4.mu) * (h / 6);
    out.nu += (k1.nu + k2.nu * 2.0 + k3.nu * 2.0 + k4.nu) * (h / 6);
    out.mu[0] = 0.0;
    out.nu[0] = 0.0;
    return out;
}

void check_evolution_args(double t_end, int steps) {
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(Errc::usage, "evolution time must be finite and >= 0");
    if (steps < 1) throw Error(Errc::usage, "step count must be at least 1");
}

// Final state only, no Schur assertion (trial fields need not be Herglotz).
State integrate(const FieldSeries& b1, const FieldSeries& b2, double t_end, int steps, std::size_t order) {
    const auto s1 = b1.as_series(order);
    const auto s2 = b2.as_series(order);
    State s{TruncatedSeries::identity(order), TruncatedSeries::identity(order)};
    const double h = t_end / steps;
    for (int k = 0; k < steps; ++k) s = rk4_step(s1, s2, s, h);
    return s;
}

}  // namespace

double HerglotzField::total_mass() const noexcept {
    double m = 0.0;
    for (const auto& a : tau) m += a.weight;
    return m;
}

FieldSeries::FieldSeries(std::vector<Complex> r) : r_(std::move(r)) {
    for (const auto& c : r_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw Error(Errc::domain, "field coefficients must be finite");
        }
    }
}

TruncatedSeries FieldSeries::as_series(std::size_t order) const {
    return TruncatedSeries::from_span(r_, order);
}

Complex FieldSeries::eval(Complex z) const noexcept {
    Complex acc{};
    for (auto it = r_.rbegin(); it != r_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

FieldSeries field_series(const HerglotzField& f, std::size_t order) {
    std::vector<Complex> r(order);
    if (order == 0) return FieldSeries(std::move(r));
    r[0] = Complex{-f.total_mass(), f.gamma};
    for (std::size_t n = 1; n < order; ++n) {
        Complex acc{};
        for (const auto& atom : f.tau) acc += atom.weight * unit(-static_cast<double>(n) * atom.angle);
        r[n] = -2.0 * acc;
    }
    return FieldSeries(std::move(r));
}

Complex field_eval(const HerglotzField& f, Complex z) {
    if (!(std::abs(z) < 1.0)) throw Error(Errc::domain, "vector fields are evaluated inside the unit disc");
    return field_eval_unchecked(f, z);
}

double max_real_part(const FieldSeries& b, int angles) {
    static constexpr double radii[] = {0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0};
    double worst = -std::numeric_limits<double>::infinity();
    for (double rad : radii) {
        for (int j = 0; j < angles; ++j) {
            worst = std::max(worst, b.eval(std::polar(rad, two_pi * j / angles)).real());
        }
    }
    return worst;
}

HerglotzField field_from_series(const FieldSeries& r, int grid_points, double r0) {
    if (r.order() < 2) throw Error(Errc::usage, "field series needs at least two coefficients");
    if (grid_points < 8) throw Error(Errc::usage, "field reconstruction needs at least 8 grid points");
    if (!(r0 > 0.0 && r0 < 1.0)) throw Error(Errc::usage, "smoothing radius must lie in (0, 1)");
    const double mass = -r.r(1).real();
    if (mass < -herglotz_tolerance) throw Error(Errc::not_herglotz, "Re B(0) is positive");

    for (double rad : {0.25, 0.5, 0.75, r0}) {
        for (int j = 0; j < grid_points; ++j) {
            const double re = r.eval(std::polar(rad, two_pi * j / grid_points)).real();
            if (re > herglotz_tolerance) {
                throw Error(Errc::not_herglotz, "Re B > 0 at |z| = " + std::to_string(rad));
            }
        }
    }

    HerglotzField out;
    out.gamma = r.r(1).imag();
    std::vector<double> w(grid_points);
    double sum = 0.0;
    for (int j = 0; j < grid_points; ++j) {
        const double theta = two_pi * j / grid_points;
        w[j] = std::max(0.0, -r.eval(std::polar(r0, theta)).real());
        sum += w[j];
    }
    for (int j = 0; j < grid_points; ++j) {
        const double weight = sum > 0.0 ? w[j] * std::max(mass, 0.0) / sum : 0.0;
        if (weight > 0.0) out.tau.push_back({two_pi * j / grid_points, weight});
    }
    return out;
}

SemigroupEvolution evolve_coefficients(const FieldSeries& b1, const FieldSeries& b2, double t_end, int steps,
                                       std::size_t order) {
    check_evolution_args(t_end, steps);
    if (order < 1) throw Error(Errc::usage, "order must be at least 1");
    const auto s1 = b1.as_series(order);
    const auto s2 = b2.as_series(order);
    const double h = t_end / steps;

    SemigroupEvolution ev;
    ev.times.reserve(steps + 1);
    ev.mu.reserve(steps + 1);
    ev.nu.reserve(steps + 1);
    State s{TruncatedSeries::identity(order), TruncatedSeries::identity(order)};
    for (int k = 0; k <= steps; ++k) {
        if (k > 0) s = rk4_step(s1, s2, s, h);
        EtaCoefficients mu(s.mu), nu(s.nu);
        const double margin = std::max(schur_margin(mu, 0.5, 64), schur_margin(nu, 0.5, 64));
        if (margin > 1e-6) {
            throw Error(Errc::instability, "slice at t = " + std::to_string(k * h) +
                                               " leaves the Schur class; increase the step count");
        }
        ev.times.push_back(k == steps ? t_end : k * h);
        ev.mu.push_back(std::move(mu));
        ev.nu.push_back(std::move(nu));
    }
    return ev;
}

GridTrajectories evolve_grid(const HerglotzField& b1, const HerglotzField& b2, double t_end,
                             const std::vector<Complex>& z_points, int steps) {
    check_evolution_args(t_end, steps);
    for (const auto& z : z_points) {
        if (!(std::abs(z) < 1.0)) throw Error(Errc::domain, "grid points must lie inside the unit disc");
    }
    const double h = t_end / steps;
    GridTrajectories out;
    out.z = z_points;
    out.times.resize(steps + 1);
    for (int k = 0; k <= steps; ++k) out.times[k] = k == steps ? t_end : k * h;
    out.mu.assign(z_points.size(), {});
    out.nu.assign(z_points.size(), {});

    auto f = [&](Complex m, Complex n) {
        return std::pair{m * field_eval_unchecked(b1, n), n * field_eval_unchecked(b2, n)};
    };
    for (std::size_t p = 0; p < z_points.size(); ++p) {
        auto& mu = out.mu[p];
        auto& nu = out.nu[p];
        mu.reserve(steps + 1);
        nu.reserve(steps + 1);
        Complex m = z_points[p], n = z_points[p];
        mu.push_back(m);
        nu.push_back(n);
        for (int k = 0; k < steps; ++k) {
            const auto [km1, kn1] = f(m, n);
            const auto [km2, kn2] = f(m + h / 2 * km1, n + h / 2 * kn1);
            const auto [km3, kn3] = f(m + h / 2 * km2, n + h / 2 * kn2);
            const auto [km4, kn4] = f(m + h * km3, n + h * kn3);
            const Complex m_next = m + h / 6 * (km1 + 2.0 * km2 + 2.0 * km3 + km4);
            const Complex n_next = n + h / 6 * (kn1 + 2.0 * kn2 + 2.0 * kn3 + kn4);
            if (std::abs(m_next) > 1.0 + 1e-9 || std::abs(n_next) > 1.0 + 1e-9) {
                throw Error(Errc::instability, "trajectory left the closed unit disc");
            }
            if (std::abs(m_next) > std::abs(m) + 1e-9 || std::abs(n_next) > std::abs(n) + 1e-9) {
                throw Error(Errc::instability, "trajectory modulus increased; increase the step count");
            }
            m = m_next;
            n = n_next;
            mu.push_back(m);
            nu.push_back(n);
        }
    }
    return out;
}

Complex kappa_quadrature(const HerglotzField& b1, const std::vector<double>& times,
                         const std::vector<Complex>& nu_trajectory, Complex z, double t) {
    if (times.size() != nu_trajectory.size() || times.empty()) {
        throw Error(Errc::usage, "trajectory and time grid have different lengths");
    }
    std::size_t k = 0;
    while (k < times.size() && std::abs(times[k] - t) > 1e-12 * std::max(1.0, std::abs(t))) ++k;
    if (k == times.size()) throw Error(Errc::usage, "quadrature time must be a grid time");
    if (k == 0) return z;

    std::vector<Complex> f(k + 1);
    for (std::size_t j = 0; j <= k; ++j) f[j] = field_eval_unchecked(b1, nu_trajectory[j]);
    const double h = (times[k] - times[0]) / static_cast<double>(k);

    Complex integral{};
    std::size_t simpson_end = k;
    if (k == 1) {
        integral = h / 2 * (f[0] + f[1]);
        simpson_end = 0;
    } else if (k % 2 == 1) {
        // 3/8 rule on the last three panels.
        simpson_end = k - 3;
        integral += 3.0 * h / 8 * (f[k - 3] + 3.0 * f[k - 2] + 3.0 * f[k - 1] + f[k]);
    }
    for (std::size_t j = 0; j + 2 <= simpson_end; j += 2) {
        integral += h / 3 * (f[j] + 4.0 * f[j + 1] + f[j + 2]);
    }
    return z * std::exp(integral);
}

EtaCoefficients boolean_power(const EtaCoefficients& mu, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::usage, "Boolean power needs t >= 0");
    if (mu.order() < 1 || std::abs(mu.a(1)) <= mean_zero_tolerance) {
        throw Error(Errc::not_boolean_id, "eta(z)/z vanishes at 0");
    }
    const auto u = ps_log(ps_shifted_quotient(mu.series()));
    auto eta = ps_shift_up(ps_exp(u * t));
    eta[0] = 0.0;
    return EtaCoefficients(std::move(eta));
}

bool check_boolean_id(const EtaCoefficients& mu, double radius, int points) {
    if (!(radius > 0.0 && radius < 1.0) || points < 8) return false;
    if (mu.order() < 1 || std::abs(mu.a(1)) <= mean_zero_tolerance) return false;
    auto q = [&](Complex z) {
        Complex acc{};
        for (std::size_t n = mu.order(); n >= 1; --n) acc = acc * z + mu.a(n);
        return acc;
    };
    double total = 0.0;
    Complex prev = q(radius);
    if (std::abs(prev) <= 1e-9) return false;
    for (int j = 1; j <= points; ++j) {
        const Complex cur = q(std::polar(radius, two_pi * j / points));
        if (std::abs(cur) <= 1e-9) return false;
        total += std::arg(cur / prev);
        prev = cur;
    }
    return std::lround(total / two_pi) == 0;
}

std::pair<FieldSeries, FieldSeries> fields_from_time_one(const PairDistribution& target, std::size_t order,
                                                         int steps) {
    if (order < 1 || order > target.order()) throw Error(Errc::usage, "embedding order exceeds the target order");
    if (steps < 1) throw Error(Errc::usage, "step count must be at least 1");
    const Complex a1 = target.mu.a(1);
    const Complex b1 = target.nu.a(1);
    if (!(std::abs(b1) > 0.0 && std::abs(b1) < 1.0)) {
        throw Error(Errc::embedding_unsupported, "embedding needs 0 < |b_1| < 1");
    }
    if (std::abs(a1) <= mean_zero_tolerance) throw Error(Errc::embedding_unsupported, "embedding needs a_1 != 0");

    std::vector<Complex> r(order), s(order);
    r[0] = std::log(a1);
    s[0] = std::log(b1);
    for (std::size_t n = 2; n <= order; ++n) {
        r[n - 1] = 0.0;
        s[n - 1] = 0.0;
        const auto base = integrate(FieldSeries(r), FieldSeries(s), 1.0, steps, n);
        r[n - 1] = 1.0;
        s[n - 1] = 1.0;
        const auto unit_trial = integrate(FieldSeries(r), FieldSeries(s), 1.0, steps, n);
        const Complex slope_a = unit_trial.mu[n] - base.mu[n];
        const Complex slope_b = unit_trial.nu[n] - base.nu[n];
        if (std::abs(slope_a) < 1e-12 || std::abs(slope_b) < 1e-12) {
            throw Error(Errc::degenerate, "affine coefficient at order " + std::to_string(n) + " vanishes");
        }
        r[n - 1] = (target.mu.a(n) - base.mu[n]) / slope_a;
        s[n - 1] = (target.nu.a(n) - base.nu[n]) / slope_b;
    }
    return {FieldSeries(std::move(r)), FieldSeries(std::move(s))};
}

TransformedFields nonuniqueness_transform(const FieldSeries& b1, const FieldSeries& b2, int n, int m,
                                          RightComponent kind) {
    const Complex s1 = b2.r(1);
    const Complex r1 = b1.r(1);
    const Complex two_pi_i{0.0, two_pi};
    std::vector<Complex> nb1 = b1.coeffs(), nb2 = b2.coeffs();
    if (nb1.empty()) nb1.resize(1);
    if (nb2.empty()) nb2.resize(1);

    if (s1 == Complex{}) {
        if (n != 0) throw Error(Errc::undefined_transform, "s_1 = 0 admits only n = 0");
        nb1[0] += two_pi_i * static_cast<double>(m);
    } else {
        const Complex factor = 1.0 + two_pi_i * static_cast<double>(n) / s1;
        for (auto& c : nb1) c *= factor;
        nb1[0] += two_pi_i * static_cast<double>(m) - two_pi_i * static_cast<double>(n) * r1 / s1;
        if (kind == RightComponent::generic) {
            for (auto& c : nb2) c *= factor;
        }
    }
    if (kind == RightComponent::delta) nb2[0] += two_pi_i * static_cast<double>(n);

    TransformedFields out{FieldSeries(std::move(nb1)), FieldSeries(std::move(nb2))};
    out.b1_valid = max_real_part(out.b1) <= herglotz_tolerance;
    out.b2_valid = max_real_part(out.b2) <= herglotz_tolerance;
    return out;
}

}  // namespace cmconv
