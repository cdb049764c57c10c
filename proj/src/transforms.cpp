#include "cmconv/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cmconv/error.hpp"

namespace cmconv {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_mean(const EtaCoefficients& e, const char* what) {
    if (e.order() < 1 || std::abs(e.mean()) <= mean_zero_tolerance) {
        throw Error(Errc::mean_zero, std::string(what) + ": first moment vanishes");
    }
}

// u(z) = z / (1 - eta(z)); its linear coefficient is always 1.
TruncatedSeries resolvent_argument(const EtaCoefficients& e) {
    const auto order = e.order();
    const auto one = TruncatedSeries::constant(1.0, order);
    return ps_shift_up(ps_reciprocal(one - e.series()));
}

}  // namespace

MomentSequence MomentSequence::delta(Complex c, std::size_t order) {
    std::vector<Complex> v(order);
    Complex p = 1.0;
    for (auto& m : v) m = (p *= c);
    return MomentSequence(std::move(v));
}

TruncatedSeries MomentSequence::psi() const {
    TruncatedSeries s(values_.size());
    for (std::size_t n = 0; n < values_.size(); ++n) s[n + 1] = values_[n];
    return s;
}

EtaCoefficients::EtaCoefficients(TruncatedSeries eta) : eta_(std::move(eta)) {
    if (eta_[0] != Complex{}) throw Error(Errc::domain, "eta must vanish at the origin");
}

EtaCoefficients EtaCoefficients::from_coeffs(const std::vector<Complex>& a) {
    std::vector<Complex> c(a.size() + 1);
    std::copy(a.begin(), a.end(), c.begin() + 1);
    return EtaCoefficients(TruncatedSeries(std::move(c)));
}

EtaCoefficients EtaCoefficients::rotation(Complex c, std::size_t order) {
    TruncatedSeries s(order);
    if (order >= 1) s[1] = c;
    return EtaCoefficients(std::move(s));
}

EtaCoefficients EtaCoefficients::haar(std::size_t order) { return EtaCoefficients(TruncatedSeries(order)); }

PairDistribution::PairDistribution(EtaCoefficients mu_, EtaCoefficients nu_)
    : mu(std::move(mu_)), nu(std::move(nu_)) {
    if (mu.order() != nu.order()) throw Error(Errc::usage, "pair components have different orders");
}

void validate(const CircleMeasureSpec& spec) {
    if (const auto* atomic = std::get_if<AtomicMeasure>(&spec)) {
        if (atomic->atoms.empty()) throw Error(Errc::invalid_measure, "atomic measure has no atoms");
        double total = 0.0;
        for (const auto& atom : atomic->atoms) {
            if (!(atom.weight >= 0.0) || !std::isfinite(atom.weight)) {
                throw Error(Errc::invalid_measure, "atom weight must be finite and nonnegative");
            }
            if (!(atom.angle >= 0.0 && atom.angle < two_pi)) {
                throw Error(Errc::invalid_measure, "atom angle must lie in [0, 2pi)");
            }
            total += atom.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw Error(Errc::invalid_measure, "atom weights sum to " + std::to_string(total) + ", not 1");
        }
    } else if (const auto* raw = std::get_if<RawMoments>(&spec)) {
        for (std::size_t n = 0; n < raw->values.size(); ++n) {
            const auto m = raw->values[n];
            if (!std::isfinite(m.real()) || !std::isfinite(m.imag()) || std::abs(m) > 1.0 + 1e-9) {
                throw Error(Errc::invalid_measure, "moment m_" + std::to_string(n + 1) + " exceeds 1 in modulus");
            }
        }
    }
}

MomentSequence moments_from_spec(const CircleMeasureSpec& spec, std::size_t order) {
    validate(spec);
    std::vector<Complex> m(order);
    if (const auto* atomic = std::get_if<AtomicMeasure>(&spec)) {
        for (const auto& atom : atomic->atoms) {
            const Complex zeta = std::polar(1.0, atom.angle);
            Complex p = 1.0;
            for (auto& mn : m) {
                p *= zeta;
                mn += atom.weight * p;
            }
        }
    } else if (const auto* raw = std::get_if<RawMoments>(&spec)) {
        if (raw->values.size() < order) {
            throw Error(Errc::invalid_measure, "moment specification has " + std::to_string(raw->values.size()) +
                                                   " values, order " + std::to_string(order) + " requested");
        }
        std::copy_n(raw->values.begin(), order, m.begin());
    }
    return MomentSequence(std::move(m));
}

EtaCoefficients eta_from_moments(const MomentSequence& m) {
    const auto psi = m.psi();
    const auto one = TruncatedSeries::constant(1.0, psi.order());
    auto eta = psi * ps_reciprocal(one + psi);
    eta[0] = 0.0;
    return EtaCoefficients(std::move(eta));
}

MomentSequence moments_from_eta(const EtaCoefficients& a) {
    const auto& eta = a.series();
    const auto one = TruncatedSeries::constant(1.0, eta.order());
    const auto psi = eta * ps_reciprocal(one - eta);
    return MomentSequence(std::vector<Complex>(psi.coeffs().begin() + 1, psi.coeffs().end()));
}

TruncatedSeries rtilde_from_eta(const EtaCoefficients& nu) {
    return cfree_rtilde(PairDistribution(nu, nu));
}

TruncatedSeries cfree_rtilde(const PairDistribution& p) {
    require_mean(p.nu, "R-transform");
    const auto order = p.order();
    const auto one = TruncatedSeries::constant(1.0, order);
    const auto rhs = p.mu.series() * ps_reciprocal(one - p.nu.series());
    return ps_compose(rhs, ps_reversion(resolvent_argument(p.nu)));
}

TTransforms t_transforms(const PairDistribution& p) {
    require_mean(p.nu, "T-transform");
    require_mean(p.mu, "T-transform");
    const auto order = p.order();
    const auto one = TruncatedSeries::constant(1.0, order);
    // T_nu(psi_nu) = eta_nu / z and T_(mu,nu)(psi_nu) = eta_mu / z.
    const auto psi_inv = ps_reversion(p.nu.series() * ps_reciprocal(one - p.nu.series()));

    TTransforms t;
    t.nu = ps_compose(ps_shifted_quotient(p.nu.series()), psi_inv);
    t.pair = ps_compose(ps_shifted_quotient(p.mu.series()), psi_inv);
    if (order >= 1) {
        t.nu[order] = 0.0;
        t.pair[order] = 0.0;
    }
    return t;
}

PairDistribution pair_from_t_transforms(const TTransforms& t) {
    const auto order = t.nu.order();
    if (t.pair.order() != order) throw Error(Errc::usage, "T-transforms have different orders");
    if (std::abs(t.nu[0]) <= mean_zero_tolerance || std::abs(t.pair[0]) <= mean_zero_tolerance) {
        throw Error(Errc::mean_zero, "T-transform has zero constant term");
    }
    const auto one = TruncatedSeries::constant(1.0, order);
    const auto w = TruncatedSeries::identity(order);

    // psi = z (1 + psi) T_nu(psi), so psi inverts w / ((1 + w) T_nu(w)).
    const auto psi = ps_reversion(ps_shift_up(ps_reciprocal((one + w) * t.nu)));
    auto eta_nu = psi * ps_reciprocal(one + psi);
    auto eta_mu = ps_shift_up(ps_compose(t.pair, psi));
    eta_nu[0] = 0.0;
    eta_mu[0] = 0.0;
    return {EtaCoefficients(std::move(eta_mu)), EtaCoefficients(std::move(eta_nu))};
}

double schur_margin(const EtaCoefficients& a, double radius, int points) {
    if (!(radius > 0.0 && radius < 1.0)) throw Error(Errc::usage, "schur check radius must lie in (0, 1)");
    if (points < 8) throw Error(Errc::usage, "schur check needs at least 8 points");
    double worst = -radius;
    for (int j = 0; j < points; ++j) {
        const auto z = std::polar(radius, two_pi * j / points);
        worst = std::max(worst, std::abs(a.series().eval(z)) - radius);
    }
    return worst;
}

bool schur_check(const EtaCoefficients& a, double radius, int points) {
    return schur_margin(a, radius, points) <= 1e-9;
}

}  // namespace cmconv
