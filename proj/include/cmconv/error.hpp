#pragma once

#include <stdexcept>
#include <string>

namespace cmconv {

// Failure categories. The CLI maps usage/validation kinds to exit code 2 and
// numerical kinds to exit code 3.
enum class Errc {
    usage,                  // order mismatch, bad arguments
    domain,                 // series operation outside its domain
    reversion_undefined,    // zero linear coefficient
    alignment,              // f(w)/w requested with f(0) != 0
    invalid_measure,        // weights not normalized, |m_n| > 1, ...
    mean_zero,              // first moment vanishes where it must not
    not_boolean_id,         // eta(z)/z vanishes at the origin
    not_herglotz,           // Re B > 0 somewhere
    undefined_transform,    // s_1 = 0 in the non-uniqueness transforms
    instability,            // integrator left the Schur class
    embedding_unsupported,  // |b_1| outside (0, 1)
    degenerate,             // affine slope too small during embedding
    inconsistent_moments,   // smoothed density negative
    resource,               // oracle word too long
};

const char* errc_name(Errc code) noexcept;

// True for kinds reported by the CLI as validation failures (exit 2).
bool is_validation_error(Errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

}  // namespace cmconv
