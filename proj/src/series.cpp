#include "cmconv/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cmconv/error.hpp"

namespace cmconv {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
    if (a.order() != b.order()) {
        throw Error(Errc::usage, std::string(op) + ": order mismatch (" +
                                     std::to_string(a.order()) + " vs " +
                                     std::to_string(b.order()) + ")");
    }
}

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(Errc::domain, "series needs at least one coefficient");
    for (auto c : coeffs_) {
        if (!is_finite(c)) throw Error(Errc::domain, "series coefficient is not finite");
    }
}

TruncatedSeries TruncatedSeries::constant(Complex c, std::size_t order) {
    TruncatedSeries s(order);
    s[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::identity(std::size_t order) {
    TruncatedSeries s(order);
    if (order >= 1) s[1] = 1.0;
    return s;
}

TruncatedSeries TruncatedSeries::from_span(std::span<const Complex> src, std::size_t order) {
    TruncatedSeries s(order);
    const auto n = std::min(src.size(), order + 1);
    std::copy_n(src.begin(), n, s.coeffs_.begin());
    return s;
}

std::size_t TruncatedSeries::degree() const noexcept {
    for (std::size_t n = coeffs_.size(); n-- > 0;) {
        if (coeffs_[n] != Complex{}) return n;
    }
    return 0;
}

bool TruncatedSeries::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

Complex TruncatedSeries::eval(Complex z) const noexcept {
    Complex acc{};
    for (std::size_t n = coeffs_.size(); n-- > 0;) acc = acc * z + coeffs_[n];
    return acc;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    require_same_order(*this, rhs, "add");
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += rhs.coeffs_[n];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
    require_same_order(*this, rhs, "sub");
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= rhs.coeffs_[n];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(Complex s) noexcept {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator-(TruncatedSeries a) { return a *= -1.0; }
TruncatedSeries operator*(TruncatedSeries a, Complex s) { return a *= s; }
TruncatedSeries operator*(Complex s, TruncatedSeries a) { return a *= s; }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b, "mul");
    const auto order = a.order();
    TruncatedSeries out(order);
    const auto da = a.degree();
    for (std::size_t i = 0; i <= da; ++i) {
        if (a[i] == Complex{}) continue;
        for (std::size_t j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

TruncatedSeries ps_arith(const TruncatedSeries& a, const TruncatedSeries& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
    }
    throw Error(Errc::usage, "unknown arithmetic kind");
}

TruncatedSeries ps_compose(const TruncatedSeries& f, const TruncatedSeries& g) {
    require_same_order(f, g, "compose");
    if (g[0] != Complex{}) throw Error(Errc::domain, "compose: inner series must vanish at 0");
    const auto order = f.order();
    // Horner over the effective degree of f.
    const auto deg = f.degree();
    auto acc = TruncatedSeries::constant(f[deg], order);
    for (std::size_t k = deg; k-- > 0;) {
        acc = acc * g;
        acc[0] += f[k];
    }
    return acc;
}

TruncatedSeries ps_reversion(const TruncatedSeries& f) {
    if (f[0] != Complex{}) throw Error(Errc::domain, "reversion: series must vanish at 0");
    const auto order = f.order();
    if (order == 0) return TruncatedSeries(0);
    const Complex lead = f[1];
    if (lead == Complex{}) throw Error(Errc::reversion_undefined, "reversion: zero linear coefficient");

    // Coefficient n of f(g) is lead * g_n plus terms in g_1..g_{n-1}, so each
    // g_n follows from the residual of the previous partial inverse.
    TruncatedSeries g(order);
    g[1] = 1.0 / lead;
    for (std::size_t n = 2; n <= order; ++n) {
        const auto head = TruncatedSeries::from_span(f.coeffs(), n);
        const auto inner = TruncatedSeries::from_span(g.coeffs(), n);
        const auto residual = ps_compose(head, inner)[n];
        g[n] = -residual / lead;
    }
    return g;
}

TruncatedSeries ps_reciprocal(const TruncatedSeries& f) {
    if (f[0] == Complex{}) throw Error(Errc::domain, "reciprocal: zero constant term");
    const auto order = f.order();
    TruncatedSeries h(order);
    h[0] = 1.0 / f[0];
    for (std::size_t n = 1; n <= order; ++n) {
        Complex acc{};
        for (std::size_t k = 1; k <= n; ++k) acc += f[k] * h[n - k];
        h[n] = -acc * h[0];
    }
    return h;
}

TruncatedSeries ps_divide(const TruncatedSeries& f, const TruncatedSeries& g) {
    require_same_order(f, g, "divide");
    return f * ps_reciprocal(g);
}

TruncatedSeries ps_exp(const TruncatedSeries& f) {
    const auto order = f.order();
    TruncatedSeries h(order);
    h[0] = std::exp(f[0]);
    // h' = f' h
    for (std::size_t n = 1; n <= order; ++n) {
        Complex acc{};
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * f[k] * h[n - k];
        h[n] = acc / static_cast<double>(n);
    }
    return h;
}

TruncatedSeries ps_log(const TruncatedSeries& f) {
    if (f[0] == Complex{}) throw Error(Errc::domain, "log: zero constant term");
    const auto order = f.order();
    TruncatedSeries h(order);
    h[0] = std::log(f[0]);
    if (h[0].imag() < 0.0) h[0] += Complex(0.0, 2.0 * std::numbers::pi);
    // f h' = f'
    for (std::size_t n = 1; n <= order; ++n) {
        Complex acc = static_cast<double>(n) * f[n];
        for (std::size_t k = 1; k < n; ++k) acc -= static_cast<double>(k) * h[k] * f[n - k];
        h[n] = acc / (static_cast<double>(n) * f[0]);
    }
    return h;
}

TruncatedSeries ps_exp_log(const TruncatedSeries& f, ExpLogKind kind) {
    return kind == ExpLogKind::exp ? ps_exp(f) : ps_log(f);
}

TruncatedSeries ps_shifted_quotient(const TruncatedSeries& f) {
    if (f[0] != Complex{}) throw Error(Errc::alignment, "shifted quotient: f(0) must be 0");
    const auto order = f.order();
    TruncatedSeries h(order);
    for (std::size_t n = 0; n < order; ++n) h[n] = f[n + 1];
    return h;
}

TruncatedSeries ps_shift_up(const TruncatedSeries& f) {
    const auto order = f.order();
    TruncatedSeries h(order);
    for (std::size_t n = 1; n <= order; ++n) h[n] = f[n - 1];
    return h;
}

TruncatedSeries ps_scale_argument(const TruncatedSeries& f, Complex c) {
    auto h = f;
    Complex p = 1.0;
    for (std::size_t n = 0; n <= h.order(); ++n) {
        h[n] *= p;
        p *= c;
    }
    return h;
}

double max_coeff_diff(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t limit) {
    const auto top = std::min({a.order(), b.order(), limit});
    double worst = 0.0;
    for (std::size_t n = 0; n <= top; ++n) worst = std::max(worst, std::abs(a[n] - b[n]));
    return worst;
}

}  // namespace cmconv
