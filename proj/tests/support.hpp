#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cmconv/oracle.hpp"
#include "cmconv/semigroups.hpp"
#include "cmconv/transforms.hpp"

namespace testing {

using namespace cmconv;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline AtomicMeasure random_atoms(std::mt19937_64& rng, int min_atoms = 2, int max_atoms = 3) {
    std::uniform_int_distribution<int> count(min_atoms, max_atoms);
    std::uniform_real_distribution<double> angle(0.0, two_pi), weight(0.1, 1.0);
    AtomicMeasure m;
    const int k = count(rng);
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
        m.atoms.push_back({angle(rng), weight(rng)});
        total += m.atoms.back().weight;
    }
    for (auto& a : m.atoms) a.weight /= total;
    return m;
}

inline MomentSequence random_moments(std::mt19937_64& rng, std::size_t order) {
    return moments_from_spec(random_atoms(rng), order);
}

inline EtaCoefficients random_eta(std::mt19937_64& rng, std::size_t order) {
    return eta_from_moments(random_moments(rng, order));
}

/// Atomic measure whose mean has modulus at least `min_mean`.
inline MomentSequence random_moments_with_mean(std::mt19937_64& rng, std::size_t order, double min_mean) {
    for (;;) {
        auto m = random_moments(rng, order);
        if (std::abs(m.m(1)) >= min_mean) return m;
    }
}

inline FunctionalPair as_functionals(const PairDistribution& p) { return {moments_from_eta(p.mu), moments_from_eta(p.nu)}; }

inline double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

inline double max_diff(const MomentSequence& a, const MomentSequence& b) { return max_diff(a.values(), b.values()); }

inline double max_diff(const EtaCoefficients& a, const EtaCoefficients& b) {
    return max_coeff_diff(a.series(), b.series());
}

/// gamma in (-pi, pi), 1-4 atoms of total mass in [mass_lo, mass_hi].
inline HerglotzField random_field(std::mt19937_64& rng, double mass_lo, double mass_hi) {
    std::uniform_real_distribution<double> gamma(-3.0, 3.0), angle(0.0, two_pi), weight(0.1, 1.0),
        mass(mass_lo, mass_hi);
    std::uniform_int_distribution<int> count(1, 4);
    HerglotzField f;
    f.gamma = gamma(rng);
    const int k = count(rng);
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
        f.tau.push_back({angle(rng), weight(rng)});
        total += f.tau.back().weight;
    }
    const double target = mass(rng);
    for (auto& a : f.tau) a.weight *= target / total;
    return f;
}

}  // namespace testing
