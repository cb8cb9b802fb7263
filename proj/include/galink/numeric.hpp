#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galink {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Invalid input: bad algebra label, out-of-range level, malformed weight, ...
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Consistency tripwire: something the construction guarantees failed to hold
/// (non-integral exponent, S^2 not a permutation, a Galois identity violated).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// Floor of a rational.
inline Int rational_floor(const Rational& q) {
    Int n = numerator(q), d = denominator(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

inline long to_long(const Int& n) {
    if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
        throw InternalError("integer out of long range: " + n.str());
    return n.convert_to<long>();
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

inline long lcm_long(long a, long b) {
    Int l = Int(a) / std::gcd(a, b) * Int(b);
    return to_long(l);
}

inline long mod_pow(long base, long exp, long mod) {
    Int acc = 1, b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return to_long(acc);
}

/// Legendre symbol (a/p) for odd prime p.
inline int legendre_symbol(long a, long p) {
    long r = mod_pow(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

inline std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline long euler_phi(long n) {
    long phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        ds.push_back(d);
        if (d != n / d) ds.push_back(n / d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// Inverse of a modulo n; requires gcd(a, n) = 1.
inline long mod_inverse(long a, long n) {
    long r0 = n, r1 = ((a % n) + n) % n, s0 = 0, s1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        r0 -= q * r1; std::swap(r0, r1);
        s0 -= q * s1; std::swap(s0, s1);
    }
    if (r0 != 1) throw UsageError("mod_inverse: arguments not coprime");
    return ((s0 % n) + n) % n;
}

}  // namespace galink

#include <exception>
#include <functional>
#include <thread>

namespace galink::detail {

/// Chunked parallel loop over [0, n); exceptions from workers are rethrown.
inline void parallel_for(long n, unsigned threads, const std::function<void(long)>& body) {
    if (threads <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    unsigned nt = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (long i = t; i < n; i += nt) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace galink::detail
