#pragma once

#include <stdexcept>
#include <string>

namespace tropdiff {

// Non-verdict failure states. Mathematically meaningful negative outcomes
// (no solution, residue obstruction, unsolvable, ...) are returned as values,
// not thrown; exceptions are reserved for contract violations and states the
// caller cannot interpret as a result.
enum class errc {
    rank_mismatch,
    context_mismatch,
    indeterminate_leading_term,
    indeterminate_at_precision,
    non_isometric,
    precision_required,
    zero_polynomial,
    zero_argument,
    non_unit_target,
    empty_input,
    invalid_argument,
    inconsistent_system,
    iteration_limit,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::rank_mismatch: return "rank_mismatch";
    case errc::context_mismatch: return "context_mismatch";
    case errc::indeterminate_leading_term: return "indeterminate_leading_term";
    case errc::indeterminate_at_precision: return "indeterminate_at_precision";
    case errc::non_isometric: return "non_isometric";
    case errc::precision_required: return "precision_required";
    case errc::zero_polynomial: return "zero_polynomial";
    case errc::zero_argument: return "zero_argument";
    case errc::non_unit_target: return "non_unit_target";
    case errc::empty_input: return "empty_input";
    case errc::invalid_argument: return "invalid_argument";
    case errc::inconsistent_system: return "inconsistent_system";
    case errc::iteration_limit: return "iteration_limit";
    case errc::parse_error: return "parse_error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace tropdiff
