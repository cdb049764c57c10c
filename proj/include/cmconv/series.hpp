#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cmconv {

using Complex = std::complex<double>;

inline constexpr std::size_t default_order = 16;

/// Complex power series c_0 + c_1 z + ... + c_N z^N, exact modulo z^{N+1}.
///
/// Every generating function in the library (eta, psi, R-tilde, T, vector
/// fields) is carried by this type.  Binary operations require equal orders.
class TruncatedSeries {
  public:
    TruncatedSeries() = default;

    /// Zero series of the given order.
    explicit TruncatedSeries(std::size_t order);

    /// Takes c_0..c_N; throws Errc::domain on an empty vector or non-finite
    /// entries.
    explicit TruncatedSeries(std::vector<Complex> coeffs);

    static TruncatedSeries constant(Complex c, std::size_t order);
    /// The series z.
    static TruncatedSeries identity(std::size_t order);
    /// Copies coefficients from `src`, zero-padding or truncating to `order`.
    static TruncatedSeries from_span(std::span<const Complex> src, std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    Complex operator[](std::size_t n) const { return coeffs_[n]; }
    Complex& operator[](std::size_t n) { return coeffs_[n]; }

    std::span<const Complex> coeffs() const noexcept { return coeffs_; }

    /// Index of the last nonzero coefficient (0 for the zero series).
    std::size_t degree() const noexcept;
    bool is_zero() const noexcept;

    /// Horner evaluation of the truncated polynomial.
    Complex eval(Complex z) const noexcept;

    TruncatedSeries& operator+=(const TruncatedSeries& rhs);
    TruncatedSeries& operator-=(const TruncatedSeries& rhs);
    TruncatedSeries& operator*=(Complex s) noexcept;

  private:
    std::vector<Complex> coeffs_{Complex{}};
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a);
TruncatedSeries operator*(TruncatedSeries a, Complex s);
TruncatedSeries operator*(Complex s, TruncatedSeries a);
/// Cauchy product truncated at the common order.
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

enum class ArithKind { add, sub, mul };
TruncatedSeries ps_arith(const TruncatedSeries& a, const TruncatedSeries& b, ArithKind kind);

/// f(g(z)); requires g(0) == 0.
TruncatedSeries ps_compose(const TruncatedSeries& f, const TruncatedSeries& g);

/// Compositional inverse; requires f(0) == 0 and f'(0) != 0.
TruncatedSeries ps_reversion(const TruncatedSeries& f);

/// 1/f; requires f(0) != 0.
TruncatedSeries ps_reciprocal(const TruncatedSeries& f);

/// f/g; requires g(0) != 0.
TruncatedSeries ps_divide(const TruncatedSeries& f, const TruncatedSeries& g);

TruncatedSeries ps_exp(const TruncatedSeries& f);

/// Logarithm with Im log f(0) normalized to [0, 2pi).
TruncatedSeries ps_log(const TruncatedSeries& f);

enum class ExpLogKind { exp, log };
TruncatedSeries ps_exp_log(const TruncatedSeries& f, ExpLogKind kind);

/// f(w)/w for f(0) == 0: every coefficient moves down one index and the top
/// coefficient (undetermined at this order) is set to zero.
TruncatedSeries ps_shifted_quotient(const TruncatedSeries& f);

/// z * f(z), dropping the z^{N+1} term.
TruncatedSeries ps_shift_up(const TruncatedSeries& f);

/// f(c z).
TruncatedSeries ps_scale_argument(const TruncatedSeries& f, Complex c);

/// Largest |a_n - b_n| over n = 0..limit (inclusive, clamped to the order).
double max_coeff_diff(const TruncatedSeries& a, const TruncatedSeries& b,
                      std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace cmconv
