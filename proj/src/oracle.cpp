#include "cmconv/oracle.hpp"

#include <string>
#include <utility>
#include <unordered_map>

#include "cmconv/error.hpp"

namespace cmconv {

namespace {

constexpr std::size_t max_letters = 64;

class CfreeEngine {
  public:
    CfreeEngine(FunctionalPair f1, FunctionalPair f2) : factors_{std::move(f1), std::move(f2)} {}

    MixedMoment evaluate(const Word& w) {
        const auto word = normalize(w);
        if (word.size() > max_letters) throw Error(Errc::resource, "oracle word longer than 64 letters");
        int totals[2] = {0, 0};
        for (const auto& l : word) totals[l.generator - 1] += l.exponent;
        for (int g = 0; g < 2; ++g) {
            const auto avail = std::min(factors_[g].phi.order(), factors_[g].psi.order());
            if (static_cast<std::size_t>(totals[g]) > avail) {
                throw Error(Errc::resource, "oracle word needs moments of order " + std::to_string(totals[g]) +
                                                " but generator " + std::to_string(g + 1) + " has " +
                                                std::to_string(avail));
            }
        }
        return eval({}, word);
    }

  private:
    Complex phi(const Letter& l) const { return factors_[l.generator - 1].phi.m(l.exponent); }
    Complex psi(const Letter& l) const { return factors_[l.generator - 1].psi.m(l.exponent); }

    static std::string key(const Word& prefix, const Word& suffix) {
        std::string k;
        k.reserve(2 * (prefix.size() + suffix.size()) + 1);
        for (const auto& l : prefix) {
            k.push_back(static_cast<char>(l.generator));
            k.push_back(static_cast<char>(l.exponent));
        }
        k.push_back('|');
        for (const auto& l : suffix) {
            k.push_back(static_cast<char>(l.generator));
            k.push_back(static_cast<char>(l.exponent));
        }
        return k;
    }

    // (phi, psi) of c_1 ... c_k y_1 ... y_m where c_i = x^e - psi(x^e) are the
    // centered prefix letters and y_j the raw suffix letters; the word is
    // alternating across the junction.
    MixedMoment eval(const Word& prefix, const Word& suffix) {
        if (suffix.empty()) {
            if (prefix.empty()) return {1.0, 1.0};
            Complex prod = 1.0;
            for (const auto& l : prefix) prod *= phi(l) - psi(l);
            return {prod, 0.0};
        }
        const auto k = key(prefix, suffix);
        if (auto it = memo_.find(k); it != memo_.end()) return it->second;

        const Letter head = suffix.front();
        const Word rest(suffix.begin() + 1, suffix.end());
        const Complex s = psi(head);

        Word longer = prefix;
        longer.push_back(head);
        auto result = eval(longer, rest);

        MixedMoment scalar_part;
        if (prefix.empty() || rest.empty()) {
            scalar_part = eval(prefix, rest);
        } else {
            // c_p y = x^{e_p + e_y} - psi(x^{e_p}) x^{e_y}: both terms start the raw part.
            const Letter last = prefix.back();
            const Word shorter(prefix.begin(), prefix.end() - 1);
            Word merged = rest;
            merged.front().exponent += last.exponent;
            const auto a = eval(shorter, merged);
            const auto b = eval(shorter, rest);
            const Complex sp = psi(last);
            scalar_part = {a.phi - sp * b.phi, a.psi - sp * b.psi};
        }
        result.phi += s * scalar_part.phi;
        result.psi += s * scalar_part.psi;
        memo_.emplace(k, result);
        return result;
    }

    FunctionalPair factors_[2];
    std::unordered_map<std::string, MixedMoment> memo_;
};

FunctionalPair delta_pair(const MomentSequence& phi, Complex c) {
    return {phi, MomentSequence::delta(c, phi.order())};
}

FunctionalPair same_pair(const MomentSequence& m) { return {m, m}; }

OracleMoments run_product(const FunctionalPair& f1, const FunctionalPair& f2, std::size_t order) {
    CfreeEngine engine(f1, f2);
    std::vector<Complex> left(order), right(order);
    Word w;
    for (std::size_t k = 1; k <= order; ++k) {
        w.push_back({1, 1});
        w.push_back({2, 1});
        const auto mm = engine.evaluate(w);
        left[k - 1] = mm.phi;
        right[k - 1] = mm.psi;
    }
    return {MomentSequence(std::move(left)), MomentSequence(std::move(right))};
}

Complex require_mean(const MomentSequence& m, const char* what) {
    if (m.order() < 1 || std::abs(m.m(1)) <= mean_zero_tolerance) {
        throw Error(Errc::mean_zero, std::string(what) + ": first moment vanishes");
    }
    return m.m(1);
}

void expand(CfreeEngine& engine, const std::vector<PolyLetter>& letters, std::size_t index, Word& word,
            Complex weight, MixedMoment& acc) {
    if (weight == Complex{}) return;
    if (index == letters.size()) {
        const auto mm = engine.evaluate(word);
        acc.phi += weight * mm.phi;
        acc.psi += weight * mm.psi;
        return;
    }
    const auto& letter = letters[index];
    for (std::size_t k = 0; k < letter.coeffs.size(); ++k) {
        word.push_back({letter.generator, static_cast<int>(k)});
        expand(engine, letters, index + 1, word, weight * letter.coeffs[k], acc);
        word.pop_back();
    }
}

}  // namespace

Word normalize(Word w) {
    Word out;
    out.reserve(w.size());
    for (const auto& l : w) {
        if (l.generator != 1 && l.generator != 2) throw Error(Errc::usage, "oracle generators are 1 and 2");
        if (l.exponent < 0) throw Error(Errc::usage, "oracle exponents must be nonnegative");
        if (l.exponent == 0) continue;
        if (!out.empty() && out.back().generator == l.generator) {
            out.back().exponent += l.exponent;
        } else {
            out.push_back(l);
        }
    }
    return out;
}

MixedMoment oracle_cfree_mixed_moment(const FunctionalPair& f1, const FunctionalPair& f2, const Word& w) {
    CfreeEngine engine(f1, f2);
    return engine.evaluate(w);
}

MixedMoment oracle_evaluate(const FunctionalPair& f1, const FunctionalPair& f2,
                            const std::vector<PolyLetter>& letters) {
    CfreeEngine engine(f1, f2);
    MixedMoment acc{};
    Word word;
    expand(engine, letters, 0, word, 1.0, acc);
    return acc;
}

OracleMoments oracle_product_moments(ConvolutionKind kind, const FunctionalPair& p1, const FunctionalPair& p2,
                                     std::size_t order) {
    const auto& mu = p1.phi;
    const auto& nu = p2.phi;
    switch (kind) {
        case ConvolutionKind::monotone:
            return run_product(delta_pair(mu, 1.0), same_pair(nu), order);
        case ConvolutionKind::boolean:
            return run_product(delta_pair(mu, 1.0), delta_pair(nu, 1.0), order);
        case ConvolutionKind::orthogonal:
            return run_product(delta_pair(mu, 1.0), {MomentSequence::delta(1.0, nu.order()), nu}, order);
        case ConvolutionKind::monotone0:
            return run_product(delta_pair(mu, require_mean(mu, "monotone0")), same_pair(nu), order);
        case ConvolutionKind::boolean0:
            return run_product(delta_pair(mu, require_mean(mu, "boolean0")),
                               delta_pair(nu, require_mean(nu, "boolean0")), order);
        case ConvolutionKind::cfree:
            require_mean(p1.phi, "cfree");
            require_mean(p1.psi, "cfree");
            require_mean(p2.phi, "cfree");
            require_mean(p2.psi, "cfree");
            return run_product(p1, p2, order);
        case ConvolutionKind::cmonotone: {
            auto left = run_product(delta_pair(p1.phi, 1.0), p2, order).left;
            auto right = run_product(delta_pair(p1.psi, 1.0), same_pair(p2.psi), order).left;
            return {std::move(left), std::move(right)};
        }
    }
    throw Error(Errc::usage, "unknown convolution kind");
}

}  // namespace cmconv
