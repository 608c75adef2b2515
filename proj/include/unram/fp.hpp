#pragma once

#include <cstdint>
#include <string>

#include "unram/errors.hpp"

namespace unram {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Reduce an arbitrary integer into [0, mod).
inline std::uint32_t mod_reduce(std::int64_t v, std::uint32_t mod) {
    std::int64_t r = v % static_cast<std::int64_t>(mod);
    if (r < 0) r += mod;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t mod) {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<std::uint32_t>(s >= mod ? s - mod : s);
}

inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t mod) {
    return a >= b ? a - b : a + mod - b;
}

inline std::uint32_t mod_neg(std::uint32_t a, std::uint32_t mod) {
    return a == 0 ? 0 : mod - a;
}

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t mod) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % mod);
}

inline std::uint32_t mod_pow(std::uint32_t base, std::uint64_t exp, std::uint32_t mod) {
    std::uint32_t r = 1 % mod;
    std::uint32_t b = base % mod;
    while (exp) {
        if (exp & 1) r = mod_mul(r, b, mod);
        b = mod_mul(b, b, mod);
        exp >>= 1;
    }
    return r;
}

// Inverse mod a prime; a must be nonzero mod p.
inline std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
    a %= p;
    if (a == 0) throw input_error("mod_inv: zero has no inverse mod " + std::to_string(p));
    return mod_pow(a, p - 2, p);
}

/// A residue mod a prime ell. Arithmetic between mismatched moduli is an input error.
class Fp {
public:
    Fp() : value_(0), mod_(2) {}

    Fp(std::int64_t value, std::uint32_t mod) : value_(0), mod_(mod) {
        if (!is_prime(mod)) throw input_error("Fp: modulus " + std::to_string(mod) + " is not prime");
        value_ = mod_reduce(value, mod);
    }

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return mod_; }
    bool is_zero() const { return value_ == 0; }

    Fp operator+(const Fp& o) const { return raw(mod_add(value_, check(o).value_, mod_), mod_); }
    Fp operator-(const Fp& o) const { return raw(mod_sub(value_, check(o).value_, mod_), mod_); }
    Fp operator*(const Fp& o) const { return raw(mod_mul(value_, check(o).value_, mod_), mod_); }
    Fp operator-() const { return raw(mod_neg(value_, mod_), mod_); }

    Fp inverse() const { return raw(mod_inv(value_, mod_), mod_); }

    bool operator==(const Fp& o) const { return value_ == o.value_ && mod_ == o.mod_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::string to_string() const { return std::to_string(value_); }

private:
    static Fp raw(std::uint32_t v, std::uint32_t m) {
        Fp f;
        f.value_ = v;
        f.mod_ = m;
        return f;
    }

    const Fp& check(const Fp& o) const {
        if (o.mod_ != mod_) throw input_error("Fp: modulus mismatch");
        return o;
    }

    std::uint32_t value_;
    std::uint32_t mod_;
};

}  // namespace unram
