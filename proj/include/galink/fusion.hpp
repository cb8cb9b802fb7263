#pragma once

#include <galink/modular_data.hpp>

#include <map>
#include <string>
#include <vector>

namespace galink {

/// The integer tensor N_{lambda,mu}^nu over the level-k weight set.
struct FusionTable {
    std::string provenance;  // "verlinde" or "oracle"
    long dim = 0;
    std::vector<long> coeffs;  // flat [i*dim*dim + j*dim + k]

    long at(int i, int j, int k) const { return coeffs[(static_cast<size_t>(i) * dim + j) * dim + k]; }
    long& at(int i, int j, int k) { return coeffs[(static_cast<size_t>(i) * dim + j) * dim + k]; }
};

/// One fusion coefficient, as the exact S-matrix trace with exact division by
/// the quantum dimensions. The result must come out a non-negative integer.
inline Int verlinde_coefficient(const ModularData& md, int a, int b, int c) {
    const long n = md.size();
    CycNumber acc = CycNumber::zero(md.order());
    for (long g = 0; g < n; ++g)
        acc += md.s(a, g) * md.s(b, g) * md.s(c, g).galois(md.order() - 1) / md.s(0, g);
    auto v = acc.as_integer();
    if (!v || *v < 0)
        throw InternalError("Verlinde sum is not a non-negative integer at (" + std::to_string(a) +
                            "," + std::to_string(b) + "," + std::to_string(c) + "): " + acc.to_string());
    return *v;
}

/// Full fusion tensor via the exact Verlinde sums, sharing the per-column
/// inverses S_{0,gamma}^{-1} and conjugates across all triples.
inline FusionTable verlinde_table(const ModularData& md, unsigned threads = 1) {
    const long n = md.size();
    FusionTable tab;
    tab.provenance = "verlinde";
    tab.dim = n;
    tab.coeffs.assign(static_cast<size_t>(n) * n * n, 0);

    std::vector<CycNumber> inv0(n);
    std::vector<std::vector<CycNumber>> sc(n, std::vector<CycNumber>(n));
    detail::parallel_for(n, threads, [&](long g) {
        inv0[g] = md.s(0, g).inverse();
        for (long c = 0; c < n; ++c) sc[c][g] = md.s(c, g).galois(md.order() - 1);
    });

    std::vector<std::pair<long, long>> pairs;
    for (long a = 0; a < n; ++a)
        for (long b = a; b < n; ++b) pairs.emplace_back(a, b);
    detail::parallel_for(static_cast<long>(pairs.size()), threads, [&](long p) {
        auto [a, b] = pairs[p];
        std::vector<CycNumber> w(n);
        for (long g = 0; g < n; ++g) w[g] = md.s(a, g) * md.s(b, g) * inv0[g];
        for (long c = 0; c < n; ++c) {
            CycNumber acc = CycNumber::zero(md.order());
            for (long g = 0; g < n; ++g) acc += w[g] * sc[c][g];
            auto v = acc.as_integer();
            if (!v || *v < 0)
                throw InternalError("Verlinde sum is not a non-negative integer at (" +
                                    std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c) + ")");
            long vl = to_long(*v);
            tab.at(a, b, c) = vl;
            tab.at(b, a, c) = vl;
        }
    });
    return tab;
}

/// Finite tensor product multiplicities of L(lambda) (x) L(mu): each weight of
/// the smaller factor is added to the shifted highest weight of the other and
/// folded to the dominant chamber with its parity; wall terms cancel out.
inline std::map<FiniteWeight, long> tensor_oracle(const SimpleAlgebra& alg, FiniteWeight lambda,
                                                  FiniteWeight mu) {
    if (!alg.is_dominant(lambda) || !alg.is_dominant(mu))
        throw UsageError("tensor_oracle requires dominant weights");
    if (alg.weyl_dimension(mu) > alg.weyl_dimension(lambda)) std::swap(lambda, mu);
    std::map<FiniteWeight, long> acc;
    for (const auto& [dom, mult] : alg.dominant_multiplicities(mu)) {
        for (const FiniteWeight& pt : alg.weyl_orbit(dom)) {
            FiniteWeight x = lambda;
            for (int i = 0; i < alg.rank(); ++i) x[i] += 1 + pt[i];
            auto [y, sgn] = alg.dominant_reduce(std::move(x));
            if (sgn == 0) continue;
            for (int i = 0; i < alg.rank(); ++i) y[i] -= 1;
            acc[y] += sgn * mult;
        }
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second == 0) it = acc.erase(it);
        else if (it->second < 0) throw InternalError("negative tensor product multiplicity");
        else ++it;
    }
    return acc;
}

/// Level-k fusion by folding the finite tensor product into the alcove.
/// Independent of the S matrix, so it cross-validates the Verlinde route;
/// with crosscheck set the two are compared coefficient by coefficient.
inline std::map<FiniteWeight, long> kac_walton_fold(const ModularData& md, const FiniteWeight& lambda,
                                                    const FiniteWeight& mu, bool crosscheck = true) {
    const auto& alg = md.algebra();
    std::map<FiniteWeight, long> folded;
    for (const auto& [nu, mult] : tensor_oracle(alg, lambda, mu)) {
        FiniteWeight x = nu;
        for (int i = 0; i < alg.rank(); ++i) x[i] += 1;
        AlcoveResult r = alg.alcove_reduce(md.shifted_level(), std::move(x));
        if (r.sign == 0) continue;
        FiniteWeight y = r.weight;
        for (int i = 0; i < alg.rank(); ++i) y[i] -= 1;
        folded[y] += r.sign * mult;
    }
    for (auto it = folded.begin(); it != folded.end();) {
        if (it->second == 0) it = folded.erase(it);
        else if (it->second < 0) throw InternalError("negative folded fusion multiplicity");
        else ++it;
    }
    if (crosscheck) {
        int a = md.weight_index(lambda), b = md.weight_index(mu);
        for (long c = 0; c < md.size(); ++c) {
            auto it = folded.find(md.weights()[c]);
            long got = (it == folded.end()) ? 0 : it->second;
            Int want = verlinde_coefficient(md, a, b, c);
            if (want != got)
                throw InternalError("fusion mismatch: fold gives " + std::to_string(got) +
                                    ", Verlinde gives " + want.str() + " at nu index " +
                                    std::to_string(c));
        }
    }
    return folded;
}

/// Full fusion tensor by folding, without touching S.
inline FusionTable kac_walton_table(const ModularData& md, unsigned threads = 1) {
    const long n = md.size();
    FusionTable tab;
    tab.provenance = "oracle";
    tab.dim = n;
    tab.coeffs.assign(static_cast<size_t>(n) * n * n, 0);
    std::vector<std::pair<long, long>> pairs;
    for (long a = 0; a < n; ++a)
        for (long b = a; b < n; ++b) pairs.emplace_back(a, b);
    detail::parallel_for(static_cast<long>(pairs.size()), threads, [&](long p) {
        auto [a, b] = pairs[p];
        auto folded = kac_walton_fold(md, md.weights()[a], md.weights()[b], /*crosscheck=*/false);
        for (const auto& [nu, mult] : folded) {
            int c = md.weight_index(nu);
            tab.at(a, b, c) = mult;
            tab.at(b, a, c) = mult;
        }
    });
    return tab;
}

/// Dominant weight multiplicities arranged as a unitriangular matrix M over a
/// height-sorted weight list, together with its integer inverse L.
struct MultiplicityMatrices {
    std::vector<FiniteWeight> weights;          // sorted compatibly with dominance
    std::map<FiniteWeight, int> index;
    std::vector<std::vector<long>> m;           // m[i][j] = mult of weights[j] in L(weights[i])
    std::vector<std::vector<long>> l;           // inverse of m

    int find(const FiniteWeight& w) const {
        auto it = index.find(w);
        return it == index.end() ? -1 : it->second;
    }
};

/// Build M and L = M^{-1} over the given list, which must be closed downward
/// under the dominance order and sorted so dominated weights come first.
inline MultiplicityMatrices multiplicity_matrices(const SimpleAlgebra& alg,
                                                  std::vector<FiniteWeight> weights) {
    MultiplicityMatrices mm;
    const long n = static_cast<long>(weights.size());
    mm.weights = std::move(weights);
    for (long i = 0; i < n; ++i) {
        if (!alg.is_dominant(mm.weights[i])) throw UsageError("multiplicity list must be dominant");
        mm.index[mm.weights[i]] = static_cast<int>(i);
    }
    if (static_cast<long>(mm.index.size()) != n) throw UsageError("duplicate weight in multiplicity list");
    for (long i = 0; i < n; ++i)
        for (const FiniteWeight& below : alg.dominant_below(mm.weights[i])) {
            auto it = mm.index.find(below);
            if (it == mm.index.end() || it->second > i)
                throw UsageError("multiplicity list is not downward closed / compatibly sorted");
        }
    mm.m.assign(n, std::vector<long>(n, 0));
    for (long i = 0; i < n; ++i) {
        auto mult = alg.dominant_multiplicities(mm.weights[i]);
        for (const auto& [w, cnt] : mult) mm.m[i][mm.index.at(w)] = cnt;
        if (mm.m[i][i] != 1) throw InternalError("multiplicity matrix is not unitriangular");
    }
    // unitriangular inverse by forward substitution, exactly over Z
    mm.l.assign(n, std::vector<long>(n, 0));
    for (long i = 0; i < n; ++i) {
        mm.l[i][i] = 1;
        for (long j = i - 1; j >= 0; --j) {
            long acc = 0;
            for (long t = j; t < i; ++t) acc += mm.m[i][t] * mm.l[t][j];
            mm.l[i][j] = -acc;
        }
    }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= i; ++j) {
            long acc = 0;
            for (long t = 0; t < n; ++t) acc += mm.m[i][t] * mm.l[t][j];
            if (acc != (i == j ? 1 : 0)) throw InternalError("M * L != identity");
        }
    return mm;
}

}  // namespace galink
