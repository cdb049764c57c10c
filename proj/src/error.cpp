#include "cmconv/error.hpp"

namespace cmconv {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::usage: return "usage";
        case Errc::domain: return "domain";
        case Errc::reversion_undefined: return "reversion-undefined";
        case Errc::alignment: return "alignment";
        case Errc::invalid_measure: return "invalid-measure";
        case Errc::mean_zero: return "mean-zero";
        case Errc::not_boolean_id: return "not-boolean-id";
        case Errc::not_herglotz: return "not-herglotz";
        case Errc::undefined_transform: return "undefined-transform";
        case Errc::instability: return "instability";
        case Errc::embedding_unsupported: return "embedding-unsupported";
        case Errc::degenerate: return "degenerate";
        case Errc::inconsistent_moments: return "inconsistent-moments";
        case Errc::resource: return "resource";
    }
    return "unknown";
}

bool is_validation_error(Errc code) noexcept {
    switch (code) {
        case Errc::usage:
        case Errc::invalid_measure:
        case Errc::not_herglotz:
        case Errc::domain:
        case Errc::alignment:
            return true;
        default:
            return false;
    }
}

}  // namespace cmconv
