#pragma once

#include <galink/modular_data.hpp>

#include <numeric>
#include <string>
#include <vector>

namespace galink {

/// The permutation and parity signs induced on the weight set by the field
/// automorphism zeta_N -> zeta_N^ell, verified against the S matrix.
struct GaloisAction {
    long ell = 1;
    std::vector<int> perm;    // index of sigma(lambda)
    std::vector<int> sign;    // epsilon_sigma(lambda) in {+1, -1}
    int kappa_sign = 1;       // sigma(kappa)/kappa

    int apply(int i) const { return perm[i]; }
};

/// sigma(lambda) and the folding parity: scale the shifted weight by ell and
/// fold it back into the alcove interior. Coprimality of ell with N keeps the
/// scaled weight off the walls.
inline std::pair<FiniteWeight, int> act_on_weight(const ModularData& md, long ell,
                                                  const FiniteWeight& lambda) {
    const long n = md.order();
    long e = ((ell % n) + n) % n;
    if (std::gcd(e, n) != 1)
        throw UsageError("ell = " + std::to_string(ell) + " is not coprime to N = " + std::to_string(n));
    const auto& alg = md.algebra();
    FiniteWeight shifted = lambda;
    for (int i = 0; i < alg.rank(); ++i) shifted[i] = e * (lambda[i] + 1);
    AlcoveResult r = alg.alcove_reduce(md.shifted_level(), std::move(shifted));
    if (r.sign == 0)
        throw InternalError("Galois image of a shifted weight landed on an alcove wall");
    FiniteWeight out = r.weight;
    for (int i = 0; i < alg.rank(); ++i) out[i] -= 1;
    return {out, r.sign};
}

/// The action table alone, without the S-matrix verification: the folding
/// permutation, the raw parities times sigma(kappa)/kappa. Callers that need
/// the verified table use build_action_table instead.
inline GaloisAction make_galois_action(const ModularData& md, long ell) {
    const long n = md.order();
    GaloisAction act;
    act.ell = ((ell % n) + n) % n;
    if (std::gcd(act.ell, n) != 1)
        throw UsageError("ell = " + std::to_string(ell) + " is not coprime to N = " + std::to_string(n));
    CycNumber sk = md.normalization().galois(act.ell);
    if (sk == md.normalization()) act.kappa_sign = 1;
    else if (sk == -md.normalization()) act.kappa_sign = -1;
    else throw InternalError("sigma(kappa)/kappa is not a sign");
    act.perm.resize(md.size());
    act.sign.resize(md.size());
    for (long i = 0; i < md.size(); ++i) {
        auto [w, s] = act_on_weight(md, act.ell, md.weights()[i]);
        act.perm[i] = md.weight_index(w);
        act.sign[i] = s * act.kappa_sign;
    }
    return act;
}

namespace detail {

/// Scan the identity sigma(S_{l,m}) = eps(l) S_{sl,m} = eps(m) S_{l,sm}
/// over the whole matrix; returns witnesses of any failures.
inline std::vector<std::string> scan_galois_identity(const ModularData& md, const GaloisAction& act,
                                                     unsigned threads = 1) {
    const long n = md.size();
    std::vector<std::string> failures;
    std::mutex mu;
    parallel_for(n, threads, [&](long i) {
        for (long j = i; j < n; ++j) {
            CycNumber lhs = md.s(i, j).galois(act.ell);
            bool row_ok = lhs == (act.sign[i] == 1 ? md.s(act.perm[i], j) : -md.s(act.perm[i], j));
            bool col_ok = lhs == (act.sign[j] == 1 ? md.s(i, act.perm[j]) : -md.s(i, act.perm[j]));
            if (!row_ok || !col_ok) {
                std::lock_guard<std::mutex> lock(mu);
                failures.push_back("ell=" + std::to_string(act.ell) + " (lambda,mu)=(" +
                                   std::to_string(i) + "," + std::to_string(j) + ") " +
                                   (row_ok ? "" : "row form fails ") + (col_ok ? "" : "column form fails"));
            }
        }
    });
    std::sort(failures.begin(), failures.end());
    return failures;
}

}  // namespace detail

/// Build the action table for one Galois element and verify the S-matrix
/// identity exactly for every pair before returning. Any violation is a hard
/// error: it would invalidate every relation downstream.
inline GaloisAction build_action_table(const ModularData& md, long ell, unsigned threads = 1) {
    GaloisAction act = make_galois_action(md, ell);
    auto failures = detail::scan_galois_identity(md, act, threads);
    if (!failures.empty())
        throw InternalError("Galois identity violated: " + failures.front() + " (and " +
                            std::to_string(failures.size() - 1) + " more)");
    return act;
}

/// Representatives of Gal(Q(zeta_N)/Q): all ell in [1, N) coprime to N.
/// With dedupe set, elements inducing the same permutation, signs, and field
/// action on every S entry are collapsed to their smallest representative.
inline std::vector<long> galois_group_elements(const ModularData& md, bool dedupe = false) {
    const long n = md.order();
    std::vector<long> ells;
    for (long e = 1; e < n; ++e)
        if (std::gcd(e, n) == 1) ells.push_back(e);
    if (!dedupe) return ells;
    std::map<std::string, long> seen;
    std::vector<long> out;
    for (long e : ells) {
        GaloisAction act = build_action_table(md, e);
        std::string key;
        for (size_t i = 0; i < act.perm.size(); ++i)
            key += std::to_string(act.perm[i]) + ":" + std::to_string(act.sign[i]) + ";";
        key += "|";
        for (long i = 0; i < md.size(); ++i)
            for (long j = i; j < md.size(); ++j) key += md.s(i, j).galois(e).to_string() + ";";
        if (seen.emplace(std::move(key), e).second) out.push_back(e);
    }
    return out;
}

}  // namespace galink
