#include "cmconv/convolutions.hpp"

#include <cmath>
#include <string>

#include "cmconv/error.hpp"

namespace cmconv {

namespace {

void require_same_order(const EtaCoefficients& a, const EtaCoefficients& b) {
    if (a.order() != b.order()) throw Error(Errc::usage, "convolution inputs have different orders");
}

Complex require_mean(const EtaCoefficients& e, const char* what) {
    if (e.order() < 1 || std::abs(e.mean()) <= mean_zero_tolerance) {
        throw Error(Errc::mean_zero, std::string(what) + ": first moment vanishes");
    }
    return e.mean();
}

EtaCoefficients from_series(TruncatedSeries s) {
    s[0] = 0.0;
    return EtaCoefficients(std::move(s));
}

TruncatedSeries derivative(const TruncatedSeries& f) {
    TruncatedSeries d(f.order());
    for (std::size_t k = 1; k <= f.order(); ++k) d[k - 1] = static_cast<double>(k) * f[k];
    return d;
}

}  // namespace

EtaCoefficients conv_monotone(const EtaCoefficients& mu, const EtaCoefficients& nu) {
    require_same_order(mu, nu);
    return from_series(ps_compose(mu.series(), nu.series()));
}

EtaCoefficients conv_boolean(const EtaCoefficients& mu, const EtaCoefficients& nu) {
    require_same_order(mu, nu);
    return from_series(ps_shifted_quotient(mu.series()) * nu.series());
}

EtaCoefficients conv_orthogonal(const EtaCoefficients& mu, const EtaCoefficients& nu) {
    require_same_order(mu, nu);
    return from_series(ps_shift_up(ps_compose(ps_shifted_quotient(mu.series()), nu.series())));
}

PairDistribution conv_cmonotone(const PairDistribution& p1, const PairDistribution& p2) {
    if (p1.order() != p2.order()) throw Error(Errc::usage, "convolution inputs have different orders");
    const auto quotient = ps_compose(ps_shifted_quotient(p1.mu.series()), p2.nu.series());
    return {from_series(quotient * p2.mu.series()), from_series(ps_compose(p1.nu.series(), p2.nu.series()))};
}

PairDistribution conv_cfree(const PairDistribution& p1, const PairDistribution& p2) {
    if (p1.order() != p2.order()) throw Error(Errc::usage, "convolution inputs have different orders");
    for (const auto* e : {&p1.mu, &p1.nu, &p2.mu, &p2.nu}) require_mean(*e, "c-free convolution");
    const auto order = p1.order();
    const auto f1 = ps_shifted_quotient(p1.nu.series()), f2 = ps_shifted_quotient(p2.nu.series());

    // Subordination: w1 = z f2(w2), w2 = z f1(w1).  Newton on w1 = z f2(z f1(w1));
    // the correction has a factor z^2, so correct orders double per step.
    const auto df1 = derivative(f1), df2 = derivative(f2);
    const auto one = TruncatedSeries::constant(1.0, order);
    TruncatedSeries w1(order), w2(order);
    for (std::size_t correct = 1; correct <= order; correct = 2 * correct + 1) {
        w2 = ps_shift_up(ps_compose(f1, w1));
        const auto residual = w1 - ps_shift_up(ps_compose(f2, w2));
        const auto slope = ps_shift_up(ps_shift_up(ps_compose(df2, w2) * ps_compose(df1, w1)));
        w1 = w1 - ps_divide(residual, one - slope);
    }
    w2 = ps_shift_up(ps_compose(f1, w1));
    const auto left = ps_compose(ps_shifted_quotient(p1.mu.series()), w1) *
                      ps_compose(ps_shifted_quotient(p2.mu.series()), w2);
    const auto right = ps_compose(f1, w1) * ps_compose(f2, w2);
    return {from_series(ps_shift_up(left)), from_series(ps_shift_up(right))};
}

EtaCoefficients conv_monotone0(const EtaCoefficients& mu, const EtaCoefficients& nu) {
    require_same_order(mu, nu);
    const auto m = require_mean(mu, "monotone0");
    return conv_monotone(mu, scale_S(m, nu));
}

EtaCoefficients conv_boolean0(const EtaCoefficients& mu, const EtaCoefficients& nu) {
    require_same_order(mu, nu);
    const auto m_mu = require_mean(mu, "boolean0");
    const auto m_nu = require_mean(nu, "boolean0");
    return conv_boolean(scale_S(m_nu, mu), scale_S(m_mu, nu));
}

EtaCoefficients scale_T(Complex c, const EtaCoefficients& mu) { return from_series(mu.series() * c); }

EtaCoefficients scale_S(Complex c, const EtaCoefficients& mu) {
    if (c == Complex{}) throw Error(Errc::usage, "S-scaling needs a nonzero parameter");
    return from_series(ps_scale_argument(mu.series(), c) * (1.0 / c));
}

PairDistribution cmonotone_power(const PairDistribution& p, int n) {
    if (n < 1) throw Error(Errc::usage, "power must be at least 1");
    auto acc = p;
    for (int k = 1; k < n; ++k) acc = conv_cmonotone(acc, p);
    return acc;
}

bool is_pair_kind(ConvolutionKind kind) noexcept {
    return kind == ConvolutionKind::cmonotone || kind == ConvolutionKind::cfree;
}

ConvolutionKind parse_convolution_kind(std::string_view name) {
    for (auto kind : {ConvolutionKind::monotone, ConvolutionKind::boolean, ConvolutionKind::orthogonal,
                      ConvolutionKind::cmonotone, ConvolutionKind::cfree, ConvolutionKind::monotone0,
                      ConvolutionKind::boolean0}) {
        if (to_string(kind) == name) return kind;
    }
    throw Error(Errc::usage, "unknown convolution kind '" + std::string(name) + "'");
}

std::string_view to_string(ConvolutionKind kind) noexcept {
    switch (kind) {
        case ConvolutionKind::monotone: return "monotone";
        case ConvolutionKind::boolean: return "boolean";
        case ConvolutionKind::orthogonal: return "orthogonal";
        case ConvolutionKind::cmonotone: return "cmonotone";
        case ConvolutionKind::cfree: return "cfree";
        case ConvolutionKind::monotone0: return "monotone0";
        case ConvolutionKind::boolean0: return "boolean0";
    }
    return "?";
}

EtaCoefficients convolve_single(ConvolutionKind kind, const EtaCoefficients& mu, const EtaCoefficients& nu) {
    switch (kind) {
        case ConvolutionKind::monotone: return conv_monotone(mu, nu);
        case ConvolutionKind::boolean: return conv_boolean(mu, nu);
        case ConvolutionKind::orthogonal: return conv_orthogonal(mu, nu);
        case ConvolutionKind::monotone0: return conv_monotone0(mu, nu);
        case ConvolutionKind::boolean0: return conv_boolean0(mu, nu);
        default: break;
    }
    throw Error(Errc::usage, std::string(to_string(kind)) + " acts on pairs, not single measures");
}

PairDistribution convolve_pair(ConvolutionKind kind, const PairDistribution& p1, const PairDistribution& p2) {
    switch (kind) {
        case ConvolutionKind::cmonotone: return conv_cmonotone(p1, p2);
        case ConvolutionKind::cfree: return conv_cfree(p1, p2);
        default: break;
    }
    throw Error(Errc::usage, std::string(to_string(kind)) + " acts on single measures, not pairs");
}

}  // namespace cmconv
