#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sympair {

// Every failure the library can signal. Kinds are stable API: tests and the
// CLI switch on them, messages are for humans only.
enum class errc {
    not_prime,
    bad_degree,
    not_monic,
    reducible_modulus,
    field_too_large,
    bad_element,
    division_by_zero,
    dlog_of_zero,
    duplicate_points,
    bad_dimension,
    bad_length,
    shorten_out_of_range,
    enumeration_too_large,
    bad_window,
    length_mismatch,
    wrong_characteristic,
    formula_unavailable,
    parse_error,
};

inline std::string_view to_string(errc c) {
    switch (c) {
    case errc::not_prime: return "not_prime";
    case errc::bad_degree: return "bad_degree";
    case errc::not_monic: return "not_monic";
    case errc::reducible_modulus: return "reducible_modulus";
    case errc::field_too_large: return "field_too_large";
    case errc::bad_element: return "bad_element";
    case errc::division_by_zero: return "division_by_zero";
    case errc::dlog_of_zero: return "dlog_of_zero";
    case errc::duplicate_points: return "duplicate_points";
    case errc::bad_dimension: return "bad_dimension";
    case errc::bad_length: return "bad_length";
    case errc::shorten_out_of_range: return "shorten_out_of_range";
    case errc::enumeration_too_large: return "enumeration_too_large";
    case errc::bad_window: return "bad_window";
    case errc::length_mismatch: return "length_mismatch";
    case errc::wrong_characteristic: return "wrong_characteristic";
    case errc::formula_unavailable: return "formula_unavailable";
    case errc::parse_error: return "parse_error";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace sympair
