#include "volquint/dates.hpp"

#include "volquint/errors.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace volquint {

namespace {

// Civil-from-days / days-from-civil after Howard Hinnant's public-domain
// calendar algorithms.
int32_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int>(doe) - 719468;
}

std::array<int, 3> civil_from_days(int32_t z) {
    z += 719468;
    const int era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {y + (m <= 2), static_cast<int>(m), static_cast<int>(d)};
}

int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw DataError("invalid date component '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

Date::Date(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1 || day > 31) {
        throw DataError("invalid calendar date");
    }
    serial_ = days_from_civil(year, month, day);
}

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        throw DataError("invalid date '" + std::string(iso) + "', expected YYYY-MM-DD");
    }
    return Date(parse_int(iso.substr(0, 4)), parse_int(iso.substr(5, 2)),
                parse_int(iso.substr(8, 2)));
}

int Date::year() const { return civil_from_days(serial_)[0]; }
int Date::month() const { return civil_from_days(serial_)[1]; }
int Date::day() const { return civil_from_days(serial_)[2]; }

int Date::weekday() const {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    int w = (serial_ + 3) % 7;
    return w < 0 ? w + 7 : w;
}

Date Date::next_business_day() const {
    Date d = plus_days(1);
    while (d.is_weekend()) d = d.plus_days(1);
    return d;
}

std::string Date::to_string() const {
    auto [y, m, d] = civil_from_days(serial_);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

} // namespace volquint
