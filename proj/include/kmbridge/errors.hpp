#pragma once

#include <stdexcept>
#include <string>

namespace kmb {

// Error taxonomy. Mathematical verification failures are *not* exceptions:
// verifiers return reports. Exceptions signal misuse or invalid inputs.
enum class errc {
    division_by_zero,
    already_resolvable,
    zero_radicand,
    ambiguous_root,
    no_root,
    unsupported_color,
    not_in_I,
    context_mismatch,
    not_a_unit,
    branch_mismatch,
    non_nilpotent_substitution,
    insufficient_order,
    divisibility_failure,
    index_out_of_range,
    not_invertible_difference,
    token_color_error,
    degree_mismatch,
    symmetry_violation,
    unresolved_root,
    not_polynomial,
    config_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::division_by_zero: return "DivisionByZero";
        case errc::already_resolvable: return "AlreadyResolvable";
        case errc::zero_radicand: return "ZeroRadicand";
        case errc::ambiguous_root: return "AmbiguousRoot";
        case errc::no_root: return "NoRoot";
        case errc::unsupported_color: return "UnsupportedColor";
        case errc::not_in_I: return "NotInI";
        case errc::context_mismatch: return "ContextMismatch";
        case errc::not_a_unit: return "NotAUnit";
        case errc::branch_mismatch: return "BranchMismatch";
        case errc::non_nilpotent_substitution: return "NonNilpotentSubstitution";
        case errc::insufficient_order: return "InsufficientOrder";
        case errc::divisibility_failure: return "DivisibilityFailure";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::not_invertible_difference: return "NotInvertibleDifference";
        case errc::token_color_error: return "TokenColorError";
        case errc::degree_mismatch: return "DegreeMismatch";
        case errc::symmetry_violation: return "SymmetryViolation";
        case errc::unresolved_root: return "UnresolvedRoot";
        case errc::not_polynomial: return "NotPolynomial";
        case errc::config_error: return "ConfigError";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace kmb
