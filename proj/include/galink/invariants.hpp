#pragma once

#include <galink/modular_data.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace galink {

/// An evaluated invariant together with a human-readable description of what
/// was computed.
struct InvariantValue {
    CycNumber exact;
    std::string context;
};

namespace detail {

inline std::string describe(const ModularData& md, const std::string& what,
                            const std::vector<int>& idx) {
    std::ostringstream os;
    os << what << "[" << md.algebra().name() << " k=" << md.level() << ";";
    for (size_t i = 0; i < idx.size(); ++i) {
        os << (i ? "," : " ") << "(";
        const auto& w = md.weights()[idx[i]];
        for (size_t t = 0; t < w.size(); ++t) os << (t ? "," : "") << w[t];
        os << ")";
    }
    os << "]";
    return os.str();
}

inline CycNumber cyc_pow(const CycNumber& base, long e) {
    if (e < 0) return cyc_pow(base.inverse(), -e);
    CycNumber acc = CycNumber::one();
    CycNumber b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

}  // namespace detail

/// t unlinked unknots in the 3-sphere: S_00 * prod_i S_{0,li}/S_00.
inline InvariantValue parallel_unknots(const ModularData& md, const std::vector<int>& idx) {
    CycNumber v = md.s(0, 0);
    CycNumber inv00 = md.s(0, 0).inverse();
    for (int i : idx) v *= md.s(0, i) * inv00;
    return {v, detail::describe(md, "D", idx)};
}

/// t parallel unknots in S^1 x (genus-h surface), before the integrality
/// assertion: sum_mu S_{0,mu}^{2(1-h)} * prod_i S_{li,mu}/S_{0,mu}.
inline CycNumber verlinde_dimension_value(const ModularData& md, long h, const std::vector<int>& idx) {
    if (h < 0) throw UsageError("genus must be non-negative");
    const long n = md.size();
    CycNumber acc = CycNumber::zero(md.order());
    for (long mu = 0; mu < n; ++mu) {
        CycNumber inv = md.s(0, mu).inverse();
        CycNumber term = detail::cyc_pow(md.s(0, mu), 2 - 2 * h);
        for (int i : idx) term *= md.s(i, mu) * inv;
        acc += term;
    }
    return acc;
}

/// The Verlinde dimension: the value above is always a non-negative integer.
inline Int verlinde_dimension(const ModularData& md, long h, const std::vector<int>& idx) {
    CycNumber v = verlinde_dimension_value(md, h, idx);
    auto z = v.as_integer();
    if (!z || *z < 0)
        throw InternalError("Verlinde dimension is not a non-negative integer: " + v.to_string());
    return *z;
}

/// A chain of t linked unknots in the 3-sphere (t >= 1):
/// S_{0,l1} * prod_{i<t} S_{li,l(i+1)}/S_{0,li}.
inline InvariantValue chain(const ModularData& md, const std::vector<int>& idx) {
    if (idx.empty()) throw UsageError("chain requires at least one component");
    CycNumber v = md.s(0, idx[0]);
    for (size_t i = 0; i + 1 < idx.size(); ++i) {
        const CycNumber& d = md.s(0, idx[i]);
        if (d.is_zero()) throw InternalError("vanishing quantum dimension in chain denominator");
        v *= md.s(idx[i], idx[i + 1]) * d.inverse();
    }
    return {v, detail::describe(md, "C", idx)};
}

/// t unknots threaded on a central unknot coloured by l0:
/// S_{0,l0} * prod_i S_{l0,li}/S_{l0,0}.
inline InvariantValue keychain(const ModularData& md, int i0, const std::vector<int>& idx) {
    const CycNumber& d = md.s(i0, 0);
    if (d.is_zero()) throw InternalError("vanishing quantum dimension in keychain denominator");
    CycNumber inv = d.inverse();
    CycNumber v = md.s(0, i0);
    for (int i : idx) v *= md.s(i0, i) * inv;
    std::vector<int> all;
    all.push_back(i0);
    all.insert(all.end(), idx.begin(), idx.end());
    return {v, detail::describe(md, "S", all)};
}

}  // namespace galink
