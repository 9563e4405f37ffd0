#include "cocert/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cocert {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

std::size_t hash_mpz(mpz_srcptr z, std::size_t seed) {
    std::size_t n = mpz_size(z);
    seed ^= static_cast<std::size_t>(mpz_sgn(z) + 2) * 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < n; ++i) {
        seed ^= static_cast<std::size_t>(mpz_getlimbn(z, i)) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    Rational r;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        r.v_ = mpq_class(mpz_class(std::string(num), 10), d);
    } else if (dot != std::string_view::npos) {
        auto ip = s.substr(0, dot);
        auto fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
        std::string digits = std::string(ip) + std::string(fp);
        mpz_class den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        r.v_ = mpq_class(mpz_class(digits.empty() ? std::string("0") : digits, 10), den);
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        r.v_ = mpq_class(mpz_class(std::string(s), 10));
    }
    r.v_.canonicalize();
    if (neg) r.v_ = -r.v_;
    return r;
}

std::string Rational::str() const { return v_.get_str(); }

bool Rational::is_integer() const { return v_.get_den() == 1; }

std::size_t Rational::hash() const {
    return hash_mpz(v_.get_den_mpz_t(), hash_mpz(v_.get_num_mpz_t(), 0x51ed27));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

}  // namespace cocert
