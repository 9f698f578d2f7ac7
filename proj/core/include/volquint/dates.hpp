#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace volquint {

// Calendar date backed by a serial day count (days since 1970-01-01,
// proleptic Gregorian). Cheap to copy, totally ordered, hashable by serial.
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    static Date from_serial(int32_t days) {
        Date d;
        d.serial_ = days;
        return d;
    }

    // Parses strict ISO-8601 "YYYY-MM-DD". Throws DataError on anything else.
    static Date parse(std::string_view iso);

    int year() const;
    int month() const;
    int day() const;
    int32_t serial() const { return serial_; }

    // 0 = Monday ... 6 = Sunday.
    int weekday() const;
    bool is_weekend() const { return weekday() >= 5; }

    Date plus_days(int n) const { return from_serial(serial_ + n); }
    // Next date skipping Saturday/Sunday.
    Date next_business_day() const;

    std::string to_string() const; // "YYYY-MM-DD"

    auto operator<=>(const Date&) const = default;

private:
    int32_t serial_ = 0;
};

} // namespace volquint
