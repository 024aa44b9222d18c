#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace novikov {

/**
 * Exact rational number.
 *
 * Values whose numerator and denominator fit in a signed 64-bit word are kept
 * inline; anything larger is promoted to a GMP rational and demoted again as
 * soon as it fits. The representation is canonical (lowest terms, positive
 * denominator, small iff it fits), so equality is structural.
 */
class Rational {
public:
    Rational() noexcept = default;
    Rational(long long n) noexcept; // NOLINT(google-explicit-constructor): integers embed in Q
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q);

    Rational(const Rational& other);
    Rational(Rational&& other) noexcept = default;
    Rational& operator=(const Rational& other);
    Rational& operator=(Rational&& other) noexcept = default;
    ~Rational() = default;

    /// Parses "p/q", "p" or "-p/q". Throws Error{ParseError} on malformed input
    /// or a zero denominator.
    static Rational parse(std::string_view text);

    bool is_zero() const noexcept { return !big_ && num_ == 0; }
    bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
    int sign() const noexcept;
    bool is_small() const noexcept { return !big_; }

    mpz_class numerator() const;
    mpz_class denominator() const;
    mpq_class to_mpq() const;

    /// Canonical "p/q" text; the denominator is always written.
    std::string to_fraction_string() const;
    /// "p" for integers, "p/q" otherwise.
    std::string to_string() const;

    Rational inverse() const;
    Rational pow(long long exponent) const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational from_i128(__int128 num, __int128 den);
    static Rational from_mpq(mpq_class q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

} // namespace novikov
