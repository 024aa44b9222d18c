#include "novikov/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

#include "novikov/error.hpp"

namespace novikov {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 abs128(i128 x) { return x < 0 ? u128(0) - u128(x) : u128(x); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t uabs(std::int64_t x) { return x < 0 ? std::uint64_t(0) - std::uint64_t(x) : std::uint64_t(x); }

mpz_class mpz_from_u128(u128 x) {
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(x)));
    return (hi << 64) + lo;
}

mpz_class mpz_from_i128(i128 x) {
    mpz_class m = mpz_from_u128(abs128(x));
    return x < 0 ? mpz_class(-m) : m;
}

bool fits_small(const mpz_class& z) {
    return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z != mpz_class(std::numeric_limits<long>::min());
}

} // namespace

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::PathNotInComplex: return "PathNotInComplex";
    case ErrorCode::NonpositiveGauge: return "NonpositiveGauge";
    case ErrorCode::NotFaceClosed: return "NotFaceClosed";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::SystemNotPulledBack: return "SystemNotPulledBack";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::ExactnessFailure: return "ExactnessFailure";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::NotEnoughIndependentLoops: return "NotEnoughIndependentLoops";
    case ErrorCode::IncoherentInstance: return "IncoherentInstance";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    }
    return "Error";
}

Rational::Rational(long long n) noexcept {
    if (n == std::numeric_limits<long long>::min()) {
        big_ = std::make_unique<mpq_class>(mpz_class(static_cast<long>(n)));
    } else {
        num_ = n;
    }
}

Rational::Rational(long long n, long long d) {
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    *this = from_i128(n, d);
}

Rational::Rational(const mpq_class& q) { *this = from_mpq(q); }

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
    if (this != &other) {
        num_ = other.num_;
        den_ = other.den_;
        big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
}

Rational Rational::from_i128(i128 num, i128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    u128 g = gcd128(abs128(num), u128(den));
    if (g > 1) {
        num /= i128(g);
        den /= i128(g);
    }
    Rational r;
    if (num <= kMax && num >= -kMax && den <= kMax) {
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
    } else {
        r.big_ = std::make_unique<mpq_class>(mpz_from_i128(num), mpz_from_i128(den));
    }
    return r;
}

Rational Rational::from_mpq(mpq_class q) {
    q.canonicalize();
    Rational r;
    if (fits_small(q.get_num()) && fits_small(q.get_den())) {
        r.num_ = q.get_num().get_si();
        r.den_ = q.get_den().get_si();
    } else {
        r.big_ = std::make_unique<mpq_class>(std::move(q));
    }
    return r;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&] { return Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'"); };
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw fail();
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw fail();
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw fail();
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return mpz_class(digits, 10);
    };
    auto slash = text.find('/');
    mpz_class num = parse_int(text.substr(0, slash));
    mpz_class den = slash == std::string_view::npos ? mpz_class(1) : parse_int(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return from_mpq(mpq_class(num, den));
}

int Rational::sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_)); }

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::to_fraction_string() const {
    return numerator().get_str() + "/" + denominator().get_str();
}

std::string Rational::to_string() const {
    if (!big_ && den_ == 1) return std::to_string(num_);
    if (big_ && big_->get_den() == 1) return big_->get_num().get_str();
    return to_fraction_string();
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (big_) return from_mpq(mpq_class(big_->get_den(), big_->get_num()));
    Rational r;
    if (num_ < 0) {
        r.num_ = -den_;
        r.den_ = -num_;
    } else {
        r.num_ = den_;
        r.den_ = num_;
    }
    return r;
}

Rational Rational::pow(long long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Rational result(1);
    Rational base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent) base *= base;
    }
    return result;
}

Rational Rational::operator-() const {
    if (big_) return from_mpq(-*big_);
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (den_ == 1 && rhs.den_ == 1) {
            std::int64_t s;
            if (!__builtin_add_overflow(num_, rhs.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
                num_ = s;
                return *this;
            }
            *this = from_i128(i128(num_) + rhs.num_, 1);
            return *this;
        }
        // Knuth's reduced addition keeps intermediates small.
        std::uint64_t g = gcd64(std::uint64_t(den_), std::uint64_t(rhs.den_));
        i128 t = i128(num_) * i128(rhs.den_ / std::int64_t(g)) + i128(rhs.num_) * i128(den_ / std::int64_t(g));
        i128 den = i128(den_ / std::int64_t(g)) * i128(rhs.den_);
        *this = from_i128(t, den);
        return *this;
    }
    *this = from_mpq(to_mpq() + rhs.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (den_ == 1 && rhs.den_ == 1) {
            std::int64_t p;
            if (!__builtin_mul_overflow(num_, rhs.num_, &p) && p != std::numeric_limits<std::int64_t>::min()) {
                num_ = p;
                return *this;
            }
        }
        std::uint64_t g1 = gcd64(uabs(num_), std::uint64_t(rhs.den_));
        std::uint64_t g2 = gcd64(uabs(rhs.num_), std::uint64_t(den_));
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        i128 num = i128(num_ / std::int64_t(g1)) * i128(rhs.num_ / std::int64_t(g2));
        i128 den = i128(den_ / std::int64_t(g2)) * i128(rhs.den_ / std::int64_t(g1));
        if (num == 0) den = 1;
        *this = from_i128(num, den);
        return *this;
    }
    *this = from_mpq(to_mpq() * rhs.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Rational& a, const Rational& b) noexcept {
    if (a.big_ || b.big_) {
        if (!a.big_ || !b.big_) return false; // canonical: sizes differ
        return *a.big_ == *b.big_;
    }
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = i128(a.num_) * b.den_;
        i128 r = i128(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

} // namespace novikov
