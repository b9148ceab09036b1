#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ctscan {

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// days_from_civil). Exact over the whole certificate-relevant range.
std::int64_t days_from_civil(int year, int month, int day);

// Epoch seconds -> "YYYY-MM-DDTHH:MM:SSZ".
std::string iso8601_utc(std::int64_t epoch_seconds);

// Inverse of iso8601_utc. Throws ParseError on malformed input.
std::int64_t parse_iso8601_utc(std::string_view text);

// ASN.1 validity times. UTCTime is "YYMMDDHHMMSSZ" (two-digit years map to
// 1950..2049 per RFC 5280), GeneralizedTime is "YYYYMMDDHHMMSSZ". Both must
// end in Z and carry seconds; anything else is a ParseError.
std::int64_t parse_utc_time(std::string_view text);
std::int64_t parse_generalized_time(std::string_view text);

}  // namespace ctscan
