#pragma once

#include <galink/cyclotomic.hpp>
#include <galink/rootsys.hpp>

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace galink {

/// An integrable highest weight of the affine algebra at a fixed level,
/// identified by its finite Dynkin labels.
struct AffineWeight {
    long level;
    FiniteWeight labels;
};

/// Largest Weyl group enumerated on the exact path (rank <= 4 and F4).
inline constexpr long kExactWeylBound = 1152;

/// The level-k dominant weights, vacuum first, then ordered by reading the
/// label strings from the last label backwards (a fixed reproducible order).
inline std::vector<FiniteWeight> enumerate_weights(const SimpleAlgebra& alg, long k) {
    if (k < 0) throw UsageError("level must be non-negative");
    std::vector<FiniteWeight> out;
    FiniteWeight cur(alg.rank(), 0);
    const auto& cm = alg.comarks();
    std::function<void(int, long)> rec = [&](int pos, long budget) {
        if (pos == alg.rank()) {
            out.push_back(cur);
            return;
        }
        for (long v = 0; v * cm[pos] <= budget; ++v) {
            cur[pos] = v;
            rec(pos + 1, budget - v * cm[pos]);
        }
        cur[pos] = 0;
    };
    rec(0, k);
    std::sort(out.begin(), out.end(), [](const FiniteWeight& a, const FiniteWeight& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

/// Cyclotomic order N = lcm(24, 4*D*m, 4*P*m): every S and T entry at level k
/// lives in Q(zeta_N). D is the common denominator of the quadratic form, P
/// the lattice index |P/Q^vee|, m = k + h^vee.
inline long cyclotomic_order(const SimpleAlgebra& alg, long k) {
    if (k < 0) throw UsageError("level must be non-negative");
    long m = k + alg.dual_coxeter();
    long n = lcm_long(24, 4 * alg.form_denominator() * m);
    return lcm_long(n, 4 * alg.center_index() * m);
}

/// Exact modular data of the level-k affine algebra: the S and T matrices
/// over Q(zeta_N), indexed by the canonical weight list, plus the charge
/// conjugation permutation C = S^2.
class ModularData {
public:
    static ModularData build(const SimpleAlgebra& alg, long k, unsigned threads = 1) {
        ModularData md;
        md.alg_ = alg;
        md.k_ = k;
        md.m_ = k + alg.dual_coxeter();
        md.N_ = cyclotomic_order(alg, k);
        md.weights_ = enumerate_weights(alg, k);
        for (size_t i = 0; i < md.weights_.size(); ++i) md.index_[md.weights_[i]] = static_cast<int>(i);
        md.build_smatrix(threads);
        md.build_tmatrix();
        md.build_conjugation(threads);
        md.check_quantum_dimensions();
        return md;
    }

    const SimpleAlgebra& algebra() const { return alg_; }
    long level() const { return k_; }
    long shifted_level() const { return m_; }  // m = k + h^vee
    long order() const { return N_; }          // N with S, T in Q(zeta_N)

    const std::vector<FiniteWeight>& weights() const { return weights_; }
    long size() const { return static_cast<long>(weights_.size()); }

    int weight_index(const FiniteWeight& w) const {
        auto it = index_.find(w);
        if (it == index_.end())
            throw UsageError("weight is not in P_+^" + std::to_string(k_) + " of " + alg_.name());
        return it->second;
    }
    bool contains(const FiniteWeight& w) const { return index_.count(w) != 0; }

    const CycNumber& s(int i, int j) const { return S_[i][j]; }
    const CycNumber& t(int i) const { return T_[i]; }
    int conj(int i) const { return conj_[i]; }
    const std::vector<int>& conjugation() const { return conj_; }
    const CycNumber& normalization() const { return kappa_; }

    /// Exact check S = S^T.
    bool verify_symmetric(std::string* why = nullptr) const {
        for (long i = 0; i < size(); ++i)
            for (long j = i + 1; j < size(); ++j)
                if (!(S_[i][j] == S_[j][i])) {
                    if (why) *why = "S not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                    return false;
                }
        return true;
    }

    /// Exact check S * conj(S)^T = 1.
    bool verify_unitary(unsigned threads = 1, std::string* why = nullptr) const {
        const long n = size();
        std::vector<std::vector<CycNumber>> sc(n, std::vector<CycNumber>(n));
        detail::parallel_for(n, threads, [&](long i) {
            for (long j = 0; j < n; ++j) sc[i][j] = S_[i][j].galois(N_ - 1);
        });
        std::string fail;
        std::mutex mu;
        detail::parallel_for(n, threads, [&](long i) {
            for (long j = i; j < n; ++j) {
                CycNumber acc = CycNumber::zero(N_);
                for (long g = 0; g < n; ++g) acc += S_[i][g] * sc[j][g];
                CycNumber expect = (i == j) ? CycNumber::one() : CycNumber::zero();
                if (!(acc == expect)) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (fail.empty())
                        fail = "unitarity fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
        });
        if (!fail.empty() && why) *why = fail;
        return fail.empty();
    }

    /// Exact check (S T)^3 = S^2, with S^2 = C as a permutation matrix.
    bool verify_st_cube(unsigned threads = 1, std::string* why = nullptr) const {
        const long n = size();
        std::vector<std::vector<CycNumber>> u(n, std::vector<CycNumber>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) u[i][j] = S_[i][j] * T_[j];
        auto mul = [&](const std::vector<std::vector<CycNumber>>& a,
                       const std::vector<std::vector<CycNumber>>& b) {
            std::vector<std::vector<CycNumber>> c(n, std::vector<CycNumber>(n));
            detail::parallel_for(n, threads, [&](long i) {
                for (long j = 0; j < n; ++j) {
                    CycNumber acc = CycNumber::zero(N_);
                    for (long g = 0; g < n; ++g) acc += a[i][g] * b[g][j];
                    c[i][j] = acc;
                }
            });
            return c;
        };
        auto u3 = mul(mul(u, u), u);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                CycNumber expect = (conj_[i] == j) ? CycNumber::one() : CycNumber::zero();
                if (!(u3[i][j] == expect)) {
                    if (why) *why = "(ST)^3 != S^2 at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                    return false;
                }
            }
        return true;
    }

    /// Assemble from previously serialized parts (cache load). Light checks
    /// only; the full modular relations can be re-verified on demand.
    static ModularData from_parts(const SimpleAlgebra& alg, long k, long n,
                                  std::vector<FiniteWeight> weights,
                                  std::vector<std::vector<CycNumber>> s,
                                  std::vector<CycNumber> t, std::vector<int> conj) {
        ModularData md;
        md.alg_ = alg;
        md.k_ = k;
        md.m_ = k + alg.dual_coxeter();
        md.N_ = cyclotomic_order(alg, k);
        if (md.N_ != n) throw UsageError("cyclotomic order mismatch in cached modular data");
        if (weights != enumerate_weights(alg, k))
            throw UsageError("cached weight list does not match the canonical enumeration");
        md.weights_ = std::move(weights);
        for (size_t i = 0; i < md.weights_.size(); ++i) md.index_[md.weights_[i]] = static_cast<int>(i);
        const size_t nn = md.weights_.size();
        if (s.size() != nn || t.size() != nn || conj.size() != nn)
            throw UsageError("cached matrices have inconsistent dimensions");
        md.S_ = std::move(s);
        md.T_ = std::move(t);
        md.conj_ = std::move(conj);
        for (size_t i = 0; i < nn; ++i) {
            if (md.conj_[i] < 0 || md.conj_[i] >= static_cast<int>(nn) ||
                md.conj_[md.conj_[i]] != static_cast<int>(i))
                throw UsageError("cached conjugation is not an involutive permutation");
        }
        if (md.conj_[0] != 0) throw UsageError("cached conjugation does not fix the vacuum");
        md.kappa_ = md.compute_kappa();
        return md;
    }

private:
    ModularData() = default;

    CycNumber compute_kappa() const {
        Int norm = Int(alg_.center_index());
        for (int i = 0; i < alg_.rank(); ++i) norm *= m_;
        long norm_l = to_long(norm);
        // i^{|D+|} / sqrt(P m^r), with 1/sqrt(x) = sqrt(x)/x; the order of the
        // radical always divides N, which promoted() re-checks
        CycNumber kappa = CycNumber::root_of_unity(4, alg_.n_positive_roots() % 4);
        kappa = kappa * sqrt_integer(norm_l) * Rational(1, norm_l);
        return kappa.promoted(N_);
    }

    void build_smatrix(unsigned threads) {
        const long n = size();
        auto weyl = alg_.weyl_elements(kExactWeylBound);
        kappa_ = compute_kappa();

        // shifted weights and their images under the full Weyl group
        std::vector<FiniteWeight> shifted(n);
        for (long i = 0; i < n; ++i) {
            shifted[i] = weights_[i];
            for (int t = 0; t < alg_.rank(); ++t) shifted[i][t] += 1;
        }
        std::vector<std::vector<FiniteWeight>> wimg(weyl.size(), std::vector<FiniteWeight>(n));
        for (size_t w = 0; w < weyl.size(); ++w)
            for (long i = 0; i < n; ++i) wimg[w][i] = SimpleAlgebra::apply(weyl[w], shifted[i]);

        // form-contracted right factors: f[j] = F * (mu + rho)
        const auto& quad = alg_.quadratic_form();
        std::vector<std::vector<Rational>> f(n, std::vector<Rational>(alg_.rank()));
        for (long j = 0; j < n; ++j)
            for (int a = 0; a < alg_.rank(); ++a) {
                Rational acc = 0;
                for (int b = 0; b < alg_.rank(); ++b) acc += quad[a][b] * shifted[j][b];
                f[j][a] = acc;
            }

        detail::cyc_basis(N_);  // warm the shared basis before going parallel
        S_.assign(n, std::vector<CycNumber>(n));
        const Rational scale(-N_, m_);
        detail::parallel_for(n, threads, [&](long i) {
            std::vector<std::pair<long, long>> terms(weyl.size());
            for (long j = i; j < n; ++j) {
                for (size_t w = 0; w < weyl.size(); ++w) {
                    Rational acc = 0;
                    for (int a = 0; a < alg_.rank(); ++a)
                        if (wimg[w][i][a] != 0) acc += Rational(wimg[w][i][a]) * f[j][a];
                    Rational e = scale * acc;
                    if (!is_integer(e))
                        throw InternalError("non-integral S exponent at order N = " + std::to_string(N_) +
                                            " for " + alg_.name() + " level " + std::to_string(k_));
                    terms[w] = {to_long(numerator(e) % N_), weyl[w].det};
                }
                S_[i][j] = kappa_ * CycNumber::from_power_sum(N_, terms);
            }
        });
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < i; ++j) S_[i][j] = S_[j][i];
    }

    void build_tmatrix() {
        const long n = size();
        Rational c = Rational(k_ * alg_.dim(), m_);  // central charge
        T_.assign(n, CycNumber());
        for (long i = 0; i < n; ++i) {
            FiniteWeight lam2rho = weights_[i];
            for (int t = 0; t < alg_.rank(); ++t) lam2rho[t] += 2;
            Rational h = alg_.inner(weights_[i], lam2rho) / (2 * m_);
            Rational e = Rational(N_) * (h - c / 24);
            if (!is_integer(e))
                throw InternalError("non-integral T exponent at order N = " + std::to_string(N_) +
                                    " for " + alg_.name() + " level " + std::to_string(k_));
            T_[i] = CycNumber::root_of_unity(N_, to_long(numerator(e) % N_));
        }
    }

    void build_conjugation(unsigned threads) {
        const long n = size();
        conj_.assign(n, -1);
        const CycNumber one = CycNumber::one(), zero = CycNumber::zero();
        std::mutex mu;
        std::string fail;
        detail::parallel_for(n, threads, [&](long i) {
            for (long j = 0; j < n; ++j) {
                CycNumber acc = CycNumber::zero(N_);
                for (long g = 0; g < n; ++g) acc += S_[i][g] * S_[g][j];
                if (acc == one) {
                    if (conj_[i] != -1) {
                        std::lock_guard<std::mutex> lock(mu);
                        fail = "S^2 row " + std::to_string(i) + " has two unit entries";
                    }
                    conj_[i] = static_cast<int>(j);
                } else if (!(acc == zero)) {
                    std::lock_guard<std::mutex> lock(mu);
                    fail = "S^2 entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is neither 0 nor 1";
                }
            }
        });
        if (!fail.empty()) throw InternalError("charge conjugation: " + fail);
        for (long i = 0; i < n; ++i) {
            if (conj_[i] < 0) throw InternalError("S^2 row without unit entry");
            if (conj_[conj_[i]] != static_cast<int>(i)) throw InternalError("S^2 is not an involution");
        }
        if (conj_[0] != 0) throw InternalError("charge conjugation moves the vacuum");
    }

    void check_quantum_dimensions() const {
        for (long i = 0; i < size(); ++i) {
            auto e = S_[0][i].embed();
            if (!(e.real() > 0) || std::abs(e.imag()) > 1e-9)
                throw InternalError("S_{0,lambda} is not a positive real for weight index " +
                                    std::to_string(i));
        }
    }

    SimpleAlgebra alg_;
    long k_ = 0, m_ = 0, N_ = 1;
    std::vector<FiniteWeight> weights_;
    std::map<FiniteWeight, int> index_;
    std::vector<std::vector<CycNumber>> S_;
    std::vector<CycNumber> T_;
    std::vector<int> conj_;
    CycNumber kappa_;
};

/// Floating-point backend: the same Weyl sums evaluated in double precision.
/// Used for embedding cross-checks and for algebras beyond the exact bound;
/// never used for relation verdicts.
struct FloatModularData {
    SimpleAlgebra alg;
    long k = 0, m = 0;
    std::vector<FiniteWeight> weights;
    std::vector<std::vector<std::complex<double>>> S;
    std::vector<std::complex<double>> T;

    static FloatModularData build(const SimpleAlgebra& alg, long k, long weyl_cap = 60000) {
        FloatModularData fd;
        fd.alg = alg;
        fd.k = k;
        fd.m = k + alg.dual_coxeter();
        fd.weights = enumerate_weights(alg, k);
        const long n = static_cast<long>(fd.weights.size());
        auto weyl = alg.weyl_elements(weyl_cap);

        double norm = alg.center_index();
        for (int i = 0; i < alg.rank(); ++i) norm *= fd.m;
        std::complex<double> kappa = std::pow(std::complex<double>(0, 1), alg.n_positive_roots());
        kappa /= std::sqrt(norm);

        std::vector<FiniteWeight> shifted(n);
        for (long i = 0; i < n; ++i) {
            shifted[i] = fd.weights[i];
            for (int t = 0; t < alg.rank(); ++t) shifted[i][t] += 1;
        }
        const double two_pi = 6.283185307179586;
        fd.S.assign(n, std::vector<std::complex<double>>(n));
        for (long i = 0; i < n; ++i)
            for (long j = i; j < n; ++j) {
                std::complex<double> acc = 0;
                for (const auto& w : weyl) {
                    FiniteWeight wi = SimpleAlgebra::apply(w, shifted[i]);
                    Rational ip = alg.inner(wi, shifted[j]);
                    double ang = -two_pi * ip.convert_to<double>() / static_cast<double>(fd.m);
                    acc += static_cast<double>(w.det) * std::polar(1.0, ang);
                }
                fd.S[i][j] = fd.S[j][i] = kappa * acc;
            }
        fd.T.assign(n, 0);
        double c = static_cast<double>(k * alg.dim()) / static_cast<double>(fd.m);
        for (long i = 0; i < n; ++i) {
            FiniteWeight lam2rho = fd.weights[i];
            for (int t = 0; t < alg.rank(); ++t) lam2rho[t] += 2;
            double h = alg.inner(fd.weights[i], lam2rho).convert_to<double>() / (2.0 * fd.m);
            fd.T[i] = std::polar(1.0, two_pi * (h - c / 24.0));
        }
        return fd;
    }

    /// Verlinde sums in floating point, rounded to the nearest integer; the
    /// rounding residual must stay below tol.
    long fusion_coefficient(int a, int b, int c, double tol = 1e-6) const {
        std::complex<double> acc = 0;
        const long n = static_cast<long>(weights.size());
        for (long g = 0; g < n; ++g)
            acc += S[a][g] * S[b][g] * std::conj(S[c][g]) / S[0][g];
        double rounded = std::round(acc.real());
        if (std::abs(acc.real() - rounded) > tol || std::abs(acc.imag()) > tol)
            throw InternalError("float Verlinde sum too far from an integer");
        return static_cast<long>(rounded);
    }
};

}  // namespace galink
