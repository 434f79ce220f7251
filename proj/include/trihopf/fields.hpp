#ifndef TRIHOPF_FIELDS_HPP
#define TRIHOPF_FIELDS_HPP

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace trihopf {

// Thrown on malformed scalar literals and structure files.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact rational scalar backed by GMP. Always stored in lowest terms with
// positive denominator (GMP keeps mpq_class canonical through arithmetic).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw parse_error("rational with zero denominator");
        v_.canonicalize();
    }

    static Rational one_like(const Rational&) { return Rational(1); }

    static Rational parse(std::string_view text) {
        std::string s(text);
        if (s.empty()) throw parse_error("empty rational literal");
        std::size_t slash = s.find('/');
        std::string num = slash == std::string::npos ? s : s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        auto digits_ok = [](const std::string& t, bool sign_ok) {
            if (t.empty()) return false;
            std::size_t i = 0;
            if (sign_ok && (t[0] == '-' || t[0] == '+')) i = 1;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (!digits_ok(num, true) || !digits_ok(den, false))
            throw parse_error("malformed rational literal '" + s + "'");
        mpz_class n(num), d(den);
        if (d == 0) throw parse_error("rational with zero denominator '" + s + "'");
        Rational r;
        r.v_ = mpq_class(n) / mpq_class(d);
        return r;
    }

    bool is_zero() const { return v_ == 0; }

    Rational inv() const {
        if (is_zero()) throw std::domain_error("division by zero in Q");
        Rational r;
        r.v_ = 1 / v_;
        return r;
    }

    Rational operator-() const {
        Rational r;
        r.v_ = -v_;
        return r;
    }
    Rational operator+(const Rational& o) const { Rational r; r.v_ = v_ + o.v_; return r; }
    Rational operator-(const Rational& o) const { Rational r; r.v_ = v_ - o.v_; return r; }
    Rational operator*(const Rational& o) const { Rational r; r.v_ = v_ * o.v_; return r; }
    Rational operator/(const Rational& o) const { return *this * o.inv(); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

// Prime-field scalar: canonical representative in [0, p). A default-constructed
// value has p == 0 and stands for the zero of any modulus, so zero-filled
// matrices need no modulus threading; every nonzero value carries its p.
class Fp {
public:
    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {
        if (v_ == 0) p_ = 0;
    }

    static Fp one_like(const Fp& sample) {
        if (sample.p_ == 0) throw std::logic_error("Fp::one_like on modulus-free zero");
        return Fp(1, sample.p_);
    }

    static Fp from_int(long long n, std::uint64_t p) {
        long long r = n % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    static Fp parse(std::string_view text, std::uint64_t p) {
        std::string s(text);
        if (s.empty()) throw parse_error("empty prime-field literal");
        if (s.find('/') != std::string::npos)
            throw parse_error("rational literal '" + s + "' in a prime-field file");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw parse_error("malformed integer literal '" + s + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw parse_error("malformed integer literal '" + s + "'");
        mpz_class n(s);
        mpz_class r = n % mpz_class(static_cast<unsigned long>(p));
        if (r < 0) r += mpz_class(static_cast<unsigned long>(p));
        return Fp(r.get_ui(), p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const {
        if (v_ == 0) return Fp();
        return Fp(p_ - v_, p_);
    }

    Fp operator+(const Fp& o) const {
        if (v_ == 0) return o;
        if (o.v_ == 0) return *this;
        check_same(o);
        std::uint64_t s = v_ + o.v_;
        if (s >= p_) s -= p_;
        return Fp(s, p_);
    }

    Fp operator-(const Fp& o) const { return *this + (-o); }

    Fp operator*(const Fp& o) const {
        if (v_ == 0 || o.v_ == 0) return Fp();
        check_same(o);
        unsigned __int128 prod = static_cast<unsigned __int128>(v_) * o.v_;
        return Fp(static_cast<std::uint64_t>(prod % p_), p_);
    }

    Fp inv() const {
        if (v_ == 0) throw std::domain_error("division by zero in F_p");
        // extended Euclid on (v, p); p prime so gcd is 1
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(v_);
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt;
            t = newt; newt = tmp;
            tmp = r - q * newr;
            r = newr; newr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return Fp(static_cast<std::uint64_t>(t), p_);
    }

    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    bool operator==(const Fp& o) const {
        if (v_ == 0 && o.v_ == 0) return true;
        return v_ == o.v_ && p_ == o.p_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    void check_same(const Fp& o) const {
        if (p_ != o.p_) throw std::logic_error("mixed moduli in F_p arithmetic");
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

template <class F>
concept Field = requires(const F a, const F b, F c) {
    { F() } -> std::convertible_to<F>;
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a.inv() } -> std::convertible_to<F>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
    { a.str() } -> std::convertible_to<std::string>;
    { F::one_like(a) } -> std::convertible_to<F>;
    { c += a };
    { c -= a };
};

// k·1 in any field, by repeated addition of a supplied one.
template <class F>
F small_scalar(long long k, const F& one) {
    F acc{};
    long long m = k < 0 ? -k : k;
    for (long long t = 0; t < m; ++t) acc += one;
    if (k < 0) {
        F z{};
        z -= acc;
        return z;
    }
    return acc;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace trihopf

#endif
