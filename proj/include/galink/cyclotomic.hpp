#pragma once

#include <galink/numeric.hpp>

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

namespace galink {

namespace detail {

/// Exact long division of integer polynomials; divisor must be monic and the
/// division must be exact (used only for x^n - 1 over cyclotomic factors).
inline std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    const long dn = static_cast<long>(num.size()) - 1;
    const long dd = static_cast<long>(den.size()) - 1;
    std::vector<Int> quot(dn - dd + 1);
    for (long i = dn; i >= dd; --i) {
        Int c = num[i];
        if (c == 0) continue;
        quot[i - dd] = c;
        for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw InternalError("poly_divide_exact: nonzero remainder");
    return quot;
}

struct CycBasis {
    long order;              // N
    long degree;             // phi(N), dimension of the power basis
    std::vector<Int> phi;    // coefficients of Phi_N, ascending, monic
};

/// Phi_N by stripping all proper cyclotomic factors off x^N - 1.
inline std::vector<Int> cyclotomic_poly(long n);

inline std::shared_ptr<const CycBasis> cyc_basis(long n) {
    if (n < 1) throw UsageError("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const CycBasis>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // Build outside the lock; insertion is idempotent so a racing duplicate
    // build yields the same value.
    auto basis = std::make_shared<CycBasis>();
    basis->order = n;
    basis->phi = cyclotomic_poly(n);
    basis->degree = static_cast<long>(basis->phi.size()) - 1;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(n, basis);
    return it->second;
}

inline std::vector<Int> cyclotomic_poly(long n) {
    std::vector<Int> f(n + 1);
    f[0] = -1;
    f[n] = 1;
    for (long d : divisors(n)) {
        if (d == n) continue;
        f = poly_divide_exact(std::move(f), cyc_basis(d)->phi);
    }
    return f;
}

/// Extended Euclid over F_p[x]: the inverse of a modulo the (monic) modulus,
/// or empty when they share a factor mod p (p divides the resultant).
inline std::optional<std::vector<uint64_t>> poly_inverse_mod_p(std::vector<uint64_t> a,
                                                               std::vector<uint64_t> modulus,
                                                               uint64_t p) {
    auto trim = [](std::vector<uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto inv_p = [p](uint64_t x) {
        // Fermat; p is prime and x != 0
        uint64_t acc = 1, b = x, e = p - 2;
        while (e) {
            if (e & 1) acc = acc * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return acc;
    };
    std::vector<uint64_t> r0 = std::move(modulus), r1 = std::move(a);
    std::vector<uint64_t> s0{}, s1{1};
    trim(r0);
    trim(r1);
    if (r1.empty()) return std::nullopt;
    while (r1.size() > 1) {
        // divide r0 by r1; the remainder replaces r0
        std::vector<uint64_t> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        uint64_t lead_inv = inv_p(r1.back());
        while (r0.size() >= r1.size()) {
            uint64_t c = r0.back() * lead_inv % p;
            size_t shift = r0.size() - r1.size();
            q[shift] = c;
            if (c != 0)
                for (size_t j = 0; j + 1 < r1.size(); ++j) {
                    uint64_t sub = c * r1[j] % p;
                    r0[shift + j] = (r0[shift + j] + p - sub) % p;
                }
            r0.pop_back();  // the leading term cancels exactly
            trim(r0);
        }
        // s2 = s0 - q * s1
        std::vector<uint64_t> s2 = s0;
        s2.resize(std::max(s2.size(), q.size() + s1.size()), 0);
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) {
                uint64_t sub = q[i] * s1[j] % p;
                s2[i + j] = (s2[i + j] + p - sub) % p;
            }
        }
        trim(s2);
        std::swap(r0, r1);  // r0 <- divisor, r1 <- remainder
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) return std::nullopt;  // nontrivial gcd mod p
    uint64_t scale = inv_p(r1[0]);
    for (auto& c : s1) c = c * scale % p;
    return s1;
}

inline bool is_prime_u32(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull}) {  // deterministic below 3.2e9
        uint64_t x = 1, b = a % n, e = d;
        while (e) {
            if (e & 1) x = x * b % n;
            b = b * b % n;
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r && witness; ++i) {
            x = x * x % n;
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

inline uint64_t prev_prime_u32(uint64_t n) {
    if ((n & 1) == 0) --n;
    while (!is_prime_u32(n)) n -= 2;
    return n;
}

/// Recover n/d from its residue modulo m (half-extended Euclid with the
/// standard sqrt(m/2) bounds); verification stays with the caller.
inline std::optional<Rational> rational_reconstruct(Int c, const Int& m) {
    c %= m;
    if (c < 0) c += m;
    Int r0 = m, r1 = c, s0 = 0, s1 = 1;
    Int half = m / 2;
    Int bound = boost::multiprecision::sqrt(half);
    while (r1 > bound) {
        Int q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (s1 == 0) return std::nullopt;
    if (s1 < 0) {
        s1 = -s1;
        r1 = -r1;
    }
    if (s1 > bound) return std::nullopt;
    return Rational(r1, s1);
}

/// In-place reduction of an integer polynomial modulo Phi_N (monic).
inline void reduce_mod_phi(std::vector<Int>& poly, const CycBasis& basis) {
    const long deg = basis.degree;
    for (long i = static_cast<long>(poly.size()) - 1; i >= deg; --i) {
        if (poly[i] == 0) continue;
        Int c = std::move(poly[i]);
        poly[i] = 0;
        for (long j = 0; j < deg; ++j)
            if (basis.phi[j] != 0) poly[i - deg + j] -= c * basis.phi[j];
    }
    poly.resize(deg);
}

}  // namespace detail

/// An exact element of the cyclotomic field Q(zeta_N), stored as rational
/// coordinates over the power basis 1, zeta, ..., zeta^{phi(N)-1} reduced
/// modulo Phi_N. Internally the coordinates share one positive denominator
/// with content gcd 1, so equal values always have identical representations
/// at a common order.
class CycNumber {
public:
    CycNumber() : CycNumber(1) {}

    explicit CycNumber(long order)
        : basis_(detail::cyc_basis(order)), num_(basis_->degree), den_(1) {}

    static CycNumber zero(long order = 1) { return CycNumber(order); }

    static CycNumber one(long order = 1) {
        CycNumber x(order);
        x.num_[0] = 1;
        return x;
    }

    static CycNumber from_integer(Int v, long order = 1) {
        CycNumber x(order);
        x.num_[0] = std::move(v);
        return x;
    }

    static CycNumber from_rational(const Rational& q, long order = 1) {
        CycNumber x(order);
        x.num_[0] = numerator(q);
        x.den_ = denominator(q);
        return x;
    }

    /// zeta_N^j (j taken mod N).
    static CycNumber root_of_unity(long order, long j) {
        CycNumber x(order);
        j %= order;
        if (j < 0) j += order;
        std::vector<Int> poly(order);
        poly[j] = 1;
        detail::reduce_mod_phi(poly, *x.basis_);
        x.num_ = std::move(poly);
        return x;
    }

    /// sum of c * zeta_N^e over (e, c) terms, in one reduction pass.
    static CycNumber from_power_sum(long order, const std::vector<std::pair<long, long>>& terms) {
        CycNumber x(order);
        std::vector<Int> poly(order);
        for (auto [e, c] : terms) {
            long j = ((e % order) + order) % order;
            poly[j] += c;
        }
        detail::reduce_mod_phi(poly, *x.basis_);
        x.num_ = std::move(poly);
        x.normalize();
        return x;
    }

    long order() const { return basis_->order; }
    long degree() const { return basis_->degree; }

    bool is_zero() const {
        for (const Int& c : num_)
            if (c != 0) return false;
        return true;
    }

    /// Coordinate of zeta^i as a reduced rational.
    Rational coeff(long i) const {
        if (i < 0 || i >= degree()) throw UsageError("coefficient index out of range");
        return Rational(num_[i], den_);
    }

    /// The common-denominator view (numerators, denominator). Canonical.
    const std::vector<Int>& numerators() const { return num_; }
    const Int& common_denominator() const { return den_; }

    /// Re-express at a larger order (new_order must be a multiple).
    CycNumber promoted(long new_order) const {
        if (new_order == order()) return *this;
        if (new_order % order() != 0)
            throw UsageError("promotion target must be a multiple of the current order");
        long stride = new_order / order();
        CycNumber out(new_order);
        std::vector<Int> poly(static_cast<size_t>((degree() - 1) * stride + 1));
        for (long i = 0; i < degree(); ++i) poly[i * stride] = num_[i];
        detail::reduce_mod_phi(poly, *out.basis_);
        out.num_ = std::move(poly);
        out.den_ = den_;
        out.normalize();
        return out;
    }

    CycNumber operator-() const {
        CycNumber out = *this;
        for (Int& c : out.num_) c = -c;
        return out;
    }

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
        auto [x, y] = to_common_order(a, b);
        CycNumber out(x.order());
        // num/den combined over lcm of denominators.
        Int g = boost::multiprecision::gcd(x.den_, y.den_);
        Int fx = y.den_ / g, fy = x.den_ / g;
        out.den_ = x.den_ * fx;
        for (long i = 0; i < x.degree(); ++i) out.num_[i] = x.num_[i] * fx + y.num_[i] * fy;
        out.normalize();
        return out;
    }

    friend CycNumber operator-(const CycNumber& a, const CycNumber& b) { return a + (-b); }

    friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
        auto [x, y] = to_common_order(a, b);
        CycNumber out(x.order());
        std::vector<Int> poly(2 * x.degree() - 1);
        for (long i = 0; i < x.degree(); ++i) {
            if (x.num_[i] == 0) continue;
            for (long j = 0; j < y.degree(); ++j) {
                if (y.num_[j] == 0) continue;
                poly[i + j] += x.num_[i] * y.num_[j];
            }
        }
        detail::reduce_mod_phi(poly, *out.basis_);
        out.num_ = std::move(poly);
        out.den_ = x.den_ * y.den_;
        out.normalize();
        return out;
    }

    friend CycNumber operator*(const CycNumber& a, const Rational& q) {
        CycNumber out = a;
        Int n = numerator(q);
        for (Int& c : out.num_) c *= n;
        out.den_ *= denominator(q);
        out.normalize();
        return out;
    }

    friend CycNumber operator*(const Rational& q, const CycNumber& a) { return a * q; }

    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

    CycNumber& operator+=(const CycNumber& o) { return *this = *this + o; }
    CycNumber& operator-=(const CycNumber& o) { return *this = *this - o; }
    CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }
    CycNumber& operator/=(const CycNumber& o) { return *this = *this / o; }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.order() == b.order()) return a.den_ == b.den_ && a.num_ == b.num_;
        auto [x, y] = to_common_order(a, b);
        return x.den_ == y.den_ && x.num_ == y.num_;
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    /// Multiplicative inverse. Solved modulo a stream of word-size primes
    /// with CRT and rational reconstruction, then certified by an exact
    /// multiplication; the direct Euclid over Q[x] remains as a fallback.
    CycNumber inverse() const {
        if (is_zero()) throw UsageError("division by zero in Q(zeta_N)");
        if (auto q = as_rational()) return from_rational(Rational(1) / *q, order());
        const long deg = degree();
        std::vector<Int> residues(deg, 0);
        Int big_m = 1;
        uint64_t p = uint64_t(1) << 31;
        for (int round = 0; round < 1024; ++round) {
            p = detail::prev_prime_u32(p - 1);
            if (den_ % p == 0) continue;
            std::vector<uint64_t> a_p(deg), phi_p(basis_->phi.size());
            for (long i = 0; i < deg; ++i) {
                Int r = num_[i] % p;
                if (r < 0) r += p;
                a_p[i] = r.convert_to<uint64_t>();
            }
            for (size_t i = 0; i < phi_p.size(); ++i) {
                Int r = basis_->phi[i] % p;
                if (r < 0) r += p;
                phi_p[i] = r.convert_to<uint64_t>();
            }
            auto inv_poly = detail::poly_inverse_mod_p(a_p, phi_p, p);
            if (!inv_poly) continue;  // p divides the resultant
            inv_poly->resize(deg, 0);
            // the denominator rides along: inverse of (num/den) = den * inverse(num)
            uint64_t den_p = (den_ % p).convert_to<uint64_t>();
            for (auto& c : *inv_poly) c = c * den_p % p;
            // CRT merge coefficient-wise
            uint64_t m_p = (big_m % p).convert_to<uint64_t>();
            uint64_t m_inv = 1;
            {
                uint64_t acc = 1, b = m_p, e = p - 2;
                while (e) {
                    if (e & 1) acc = acc * b % p;
                    b = b * b % p;
                    e >>= 1;
                }
                m_inv = acc;
            }
            for (long i = 0; i < deg; ++i) {
                uint64_t cur = (residues[i] % p).convert_to<uint64_t>();
                uint64_t t = ((*inv_poly)[i] + p - cur) % p * m_inv % p;
                residues[i] += big_m * t;
            }
            big_m *= p;
            if (round < 1) continue;
            // attempt reconstruction and certify
            CycNumber cand(order());
            Int den_lcm = 1;
            std::vector<Rational> coeffs(deg);
            bool ok = true;
            for (long i = 0; i < deg && ok; ++i) {
                auto q = detail::rational_reconstruct(residues[i], big_m);
                if (!q) ok = false;
                else {
                    coeffs[i] = *q;
                    den_lcm = boost::multiprecision::lcm(den_lcm, denominator(*q));
                }
            }
            if (!ok) continue;
            for (long i = 0; i < deg; ++i)
                cand.num_[i] = numerator(coeffs[i]) * (den_lcm / denominator(coeffs[i]));
            cand.den_ = den_lcm;
            cand.normalize();
            if (*this * cand == one(order())) return cand;
        }
        return inverse_euclid();
    }

    /// Extended Euclid over Q[x] modulo the (irreducible) cyclotomic
    /// polynomial. Exact but slow at large orders; kept as the fallback path.
    CycNumber inverse_euclid() const {
        if (is_zero()) throw UsageError("division by zero in Q(zeta_N)");
        using Poly = std::vector<Rational>;
        const long deg = degree();
        Poly r0(basis_->phi.size()), r1(deg), s0, s1{Rational(1)};
        for (size_t i = 0; i < basis_->phi.size(); ++i) r0[i] = Rational(basis_->phi[i]);
        for (long i = 0; i < deg; ++i) r1[i] = Rational(num_[i], den_);
        auto trim = [](Poly& p) {
            while (!p.empty() && p.back() == 0) p.pop_back();
        };
        trim(r1);
        auto poly_deg = [](const Poly& p) { return static_cast<long>(p.size()) - 1; };
        while (poly_deg(r1) > 0) {
            // divide r0 by r1: r0 = q*r1 + r2, and s2 = s0 - q*s1
            Poly q(poly_deg(r0) - poly_deg(r1) + 1);
            Poly r2 = r0;
            for (long i = poly_deg(r2); i >= poly_deg(r1); --i) {
                if (r2[i] == 0) continue;
                Rational c = r2[i] / r1.back();
                q[i - poly_deg(r1)] = c;
                for (long j = 0; j <= poly_deg(r1); ++j) r2[i - poly_deg(r1) + j] -= c * r1[j];
            }
            trim(r2);
            Poly s2 = s0;
            s2.resize(std::max(s2.size(), q.size() + s1.size()));
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
            }
            trim(s2);
            r0 = std::move(r1); r1 = std::move(r2);
            s0 = std::move(s1); s1 = std::move(s2);
        }
        if (r1.empty()) throw InternalError("inverse: zero gcd against irreducible modulus");
        // now s1 * this == r1[0] (a nonzero rational)
        CycNumber out(order());
        Int den_lcm = 1;
        for (const Rational& c : s1) den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
        for (size_t i = 0; i < s1.size(); ++i) out.num_[i] = numerator(s1[i]) * (den_lcm / denominator(s1[i]));
        out.den_ = den_lcm;
        out.normalize();
        return out * (Rational(1) / r1[0]);
    }

    /// Field automorphism zeta_N -> zeta_N^ell; requires gcd(ell, N) = 1.
    CycNumber galois(long ell) const {
        const long n = order();
        long e = ((ell % n) + n) % n;
        if (std::gcd(e, n) != 1)
            throw UsageError("not a Galois element at order " + std::to_string(n) +
                             ": ell = " + std::to_string(ell));
        if (e == 1) return *this;
        CycNumber out(n);
        std::vector<Int> poly(n);
        for (long i = 0; i < degree(); ++i) {
            if (num_[i] == 0) continue;
            poly[(i * e) % n] += num_[i];
        }
        detail::reduce_mod_phi(poly, *basis_);
        out.num_ = std::move(poly);
        out.den_ = den_;
        out.normalize();
        return out;
    }

    /// Complex conjugate (zeta -> zeta^{-1}).
    CycNumber conj() const { return galois(order() - 1 == 0 ? 1 : order() - 1); }

    /// Numeric embedding at zeta_N = exp(2*pi*i/N). Evaluated in extended
    /// precision; min_bits beyond the long double mantissa is rejected.
    std::complex<double> embed(unsigned min_bits = 50) const {
        if (min_bits > static_cast<unsigned>(std::numeric_limits<long double>::digits))
            throw UsageError("requested embedding precision exceeds backend mantissa");
        const long double two_pi = 6.283185307179586476925286766559L;
        long double re = 0, im = 0;
        long double d = den_.convert_to<long double>();
        for (long i = 0; i < degree(); ++i) {
            if (num_[i] == 0) continue;
            long double c = num_[i].convert_to<long double>() / d;
            long double ang = two_pi * static_cast<long double>(i) / static_cast<long double>(order());
            re += c * std::cos(ang);
            im += c * std::sin(ang);
        }
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    /// The value as a rational integer, if it is one.
    std::optional<Int> as_integer() const {
        auto q = as_rational();
        if (!q || !is_integer(*q)) return std::nullopt;
        return numerator(*q);
    }

    /// The value as a rational number, if it lies in Q.
    std::optional<Rational> as_rational() const {
        for (long i = 1; i < degree(); ++i)
            if (num_[i] != 0) return std::nullopt;
        return Rational(num_[0], den_);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = 0; i < degree(); ++i) {
            if (num_[i] == 0) continue;
            Rational c(num_[i], den_);
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            Rational a = boost::multiprecision::abs(c);
            if (i == 0) os << a;
            else {
                if (a != 1) os << a << "*";
                os << "z" << order();
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    static std::pair<CycNumber, CycNumber> to_common_order(const CycNumber& a, const CycNumber& b) {
        if (a.order() == b.order()) return {a, b};
        long l = lcm_long(a.order(), b.order());
        return {a.promoted(l), b.promoted(l)};
    }

    void normalize() {
        Int g = den_;
        for (const Int& c : num_) {
            if (c == 0) continue;
            g = boost::multiprecision::gcd(g, c);
            if (g == 1) break;
        }
        if (g > 1) {
            den_ /= g;
            for (Int& c : num_) c /= g;
        }
        if (is_zero()) den_ = 1;
    }

    std::shared_ptr<const detail::CycBasis> basis_;
    std::vector<Int> num_;
    Int den_;  // > 0
};

/// Exact positive square root of a positive integer, as an element of a
/// cyclotomic field: the square part comes out as an integer and each odd
/// prime p in the squarefree part contributes the quadratic Gauss sum
/// sum_a (a/p) zeta_p^a, which equals sqrt(p) for p = 1 mod 4 and
/// i*sqrt(p) for p = 3 mod 4 (where the extra i is divided off); sqrt(2)
/// enters as zeta_8 + zeta_8^{-1}.
inline CycNumber sqrt_integer(long d) {
    if (d < 1) throw UsageError("sqrt_integer requires a positive integer");
    Int square_part = 1;
    std::vector<long> squarefree;
    for (auto [p, e] : factorize(d)) {
        for (int i = 0; i < e / 2; ++i) square_part *= p;
        if (e % 2) squarefree.push_back(p);
    }
    CycNumber out = CycNumber::from_integer(square_part);
    for (long p : squarefree) {
        if (p == 2) {
            out = out * (CycNumber::root_of_unity(8, 1) + CycNumber::root_of_unity(8, 7));
            continue;
        }
        CycNumber sum = CycNumber::zero(p);
        for (long a = 1; a < p; ++a) {
            int chi = legendre_symbol(a, p);
            if (chi == 1) sum += CycNumber::root_of_unity(p, a);
            else sum -= CycNumber::root_of_unity(p, a);
        }
        if (p % 4 == 1) out = out * sum;
        else out = out * sum * CycNumber::root_of_unity(4, 3);  // divide off the i
    }
    return out;
}

}  // namespace galink
