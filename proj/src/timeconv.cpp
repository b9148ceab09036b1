#include "ctscan/timeconv.hpp"

#include <cstdio>

#include "ctscan/error.hpp"

namespace ctscan {

namespace {

bool all_digits(std::string_view s) {
  for (const char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  for (const char c : s) v = v * 10 + (c - '0');
  return v;
}

std::int64_t epoch_from_fields(int year, int month, int day, int hour,
                               int minute, int second,
                               std::string_view original) {
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
      minute > 59 || second > 60) {
    throw ParseError("invalid time fields in \"" + std::string(original) + "\"");
  }
  return days_from_civil(year, month, day) * 86400 + hour * 3600 +
         minute * 60 + second;
}

struct Civil {
  int year;
  unsigned month;
  unsigned day;
};

Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {static_cast<int>(y + (m <= 2)), m, d};
}

}  // namespace

std::int64_t days_from_civil(int year, int month, int day) {
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy =
      (153 * (month > 2 ? month - 3 : month + 9) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::string iso8601_utc(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const Civil c = civil_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ",
                c.year, c.month, c.day,
                static_cast<long long>(rem / 3600),
                static_cast<long long>(rem / 60 % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

std::int64_t parse_iso8601_utc(std::string_view t) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (t.size() != 20 || t[4] != '-' || t[7] != '-' || t[10] != 'T' ||
      t[13] != ':' || t[16] != ':' || t[19] != 'Z' ||
      !all_digits(t.substr(0, 4)) || !all_digits(t.substr(5, 2)) ||
      !all_digits(t.substr(8, 2)) || !all_digits(t.substr(11, 2)) ||
      !all_digits(t.substr(14, 2)) || !all_digits(t.substr(17, 2))) {
    throw ParseError("malformed ISO-8601 timestamp \"" + std::string(t) + "\"");
  }
  return epoch_from_fields(to_int(t.substr(0, 4)), to_int(t.substr(5, 2)),
                           to_int(t.substr(8, 2)), to_int(t.substr(11, 2)),
                           to_int(t.substr(14, 2)), to_int(t.substr(17, 2)), t);
}

std::int64_t parse_utc_time(std::string_view t) {
  if (t.size() != 13 || t.back() != 'Z' || !all_digits(t.substr(0, 12))) {
    throw ParseError("malformed UTCTime \"" + std::string(t) + "\"");
  }
  const int yy = to_int(t.substr(0, 2));
  const int year = yy < 50 ? 2000 + yy : 1900 + yy;
  return epoch_from_fields(year, to_int(t.substr(2, 2)), to_int(t.substr(4, 2)),
                           to_int(t.substr(6, 2)), to_int(t.substr(8, 2)),
                           to_int(t.substr(10, 2)), t);
}

std::int64_t parse_generalized_time(std::string_view t) {
  if (t.size() != 15 || t.back() != 'Z' || !all_digits(t.substr(0, 14))) {
    throw ParseError("malformed GeneralizedTime \"" + std::string(t) + "\"");
  }
  return epoch_from_fields(to_int(t.substr(0, 4)), to_int(t.substr(4, 2)),
                           to_int(t.substr(6, 2)), to_int(t.substr(8, 2)),
                           to_int(t.substr(10, 2)), to_int(t.substr(12, 2)), t);
}

}  // namespace ctscan
