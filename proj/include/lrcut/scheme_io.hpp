#pragma once

#include <string>

#include "lrcut/scheme.hpp"

namespace lrcut {

inline constexpr const char* kToolVersion = "0.1.0";

/// Scheme file text: 2-space indented JSON with a trailing newline.
/// Field elements are lists of "p/q" coordinate strings in the power basis.
std::string serialize_scheme(const Scheme& s);

/// Throws ParseError on malformed JSON, InvalidDimensions on k <= d or a
/// wrong matrix shape, BadParams on a bad field description.
Scheme parse_scheme(const std::string& text);

/// 64-bit FNV-1a of the serialized scheme, as 16 hex digits.
std::string scheme_hash(const Scheme& s);

/// Exact decimal when the denominator is 2^a 5^b, otherwise 30 digits.
std::string decimal_string(const Rational& q);

}  // namespace lrcut
