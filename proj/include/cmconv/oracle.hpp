#pragma once

#include <cstddef>
#include <vector>

#include "cmconv/convolutions.hpp"
#include "cmconv/transforms.hpp"

namespace cmconv {

/// Moments of one generator under the two functionals (phi, psi) of a factor.
struct FunctionalPair {
    MomentSequence phi;
    MomentSequence psi;
};

/// x_generator^exponent, generator in {1, 2}.
struct Letter {
    int generator = 1;
    int exponent = 1;
    friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// c_0 + c_1 x + ... in a single generator.
struct PolyLetter {
    int generator = 1;
    std::vector<Complex> coeffs;
};

struct MixedMoment {
    Complex phi;
    Complex psi;
};

/// Drops x^0 letters and merges neighbours on the same generator.
Word normalize(Word w);

/// (phi(w), psi(w)) in the conditionally free product of (f1) and (f2).
///
/// psi is the free product of the psi's; phi factorizes over alternating
/// words of psi-centered letters.  Evaluated by centering letters one at a
/// time, left to right, with memoization on (centered prefix, raw suffix).
/// Throws Errc::resource when the word needs moments beyond the factors'
/// orders or has more than 64 letters.
MixedMoment oracle_cfree_mixed_moment(const FunctionalPair& f1, const FunctionalPair& f2, const Word& w);

/// Same, for a product of polynomials, expanded by multilinearity.
MixedMoment oracle_evaluate(const FunctionalPair& f1, const FunctionalPair& f2,
                            const std::vector<PolyLetter>& letters);

struct OracleMoments {
    MomentSequence left;
    MomentSequence right;
};

/// Moments of x_1 x_2 for the requested convolution, computed purely from the
/// conditionally free product with the substitutions that realize each kind:
///
///   monotone    (mu, delta_1)    * (nu, nu)
///   boolean     (mu, delta_1)    * (nu, delta_1)
///   orthogonal  (mu, delta_1)    * (delta_1, nu)
///   monotone0   (mu, delta_m(mu)) * (nu, nu)
///   boolean0    (mu, delta_m(mu)) * (nu, delta_m(nu))
///   cfree       (mu1, nu1)       * (mu2, nu2)
///   cmonotone   left: (mu1, delta_1) * (mu2, nu2); right: (nu1, delta_1) * (nu2, nu2)
///
/// Single-measure kinds read only the phi moments of p1 and p2 and report the
/// psi-moments of the same product as `right`.
OracleMoments oracle_product_moments(ConvolutionKind kind, const FunctionalPair& p1, const FunctionalPair& p2,
                                     std::size_t order);

}  // namespace cmconv
