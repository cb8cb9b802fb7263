#pragma once

#include <galink/fusion.hpp>
#include <galink/galois_action.hpp>
#include <galink/modular_data.hpp>
#include <galink/relations.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace galink {

using Json = nlohmann::ordered_json;

inline constexpr int kCacheFormatVersion = 1;

/// {"order": N, "coeffs": ["a/b", ...]} with one reduced rational per basis
/// power.
inline Json cyc_to_json(const CycNumber& x) {
    Json j;
    j["order"] = x.order();
    Json coeffs = Json::array();
    for (long i = 0; i < x.degree(); ++i) {
        Rational c = x.coeff(i);
        std::ostringstream os;
        os << numerator(c);
        if (denominator(c) != 1) os << "/" << denominator(c);
        coeffs.push_back(os.str());
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw UsageError("cannot parse rational: " + s);
    }
}

inline CycNumber cyc_from_json(const Json& j) {
    long order = j.at("order").get<long>();
    const auto& coeffs = j.at("coeffs");
    CycNumber acc = CycNumber::zero(order);
    long i = 0;
    for (const auto& c : coeffs) {
        Rational q = parse_rational(c.get<std::string>());
        if (q != 0)
            acc += CycNumber::from_rational(q, order) * CycNumber::root_of_unity(order, i);
        ++i;
    }
    if (i != acc.degree())
        throw UsageError("cyclotomic element has wrong coefficient count for its order");
    return acc;
}

inline Json modular_data_to_json(const ModularData& md) {
    Json j;
    j["version"] = kCacheFormatVersion;
    j["algebra"] = {{"family", std::string(1, md.algebra().family())}, {"rank", md.algebra().rank()}};
    j["k"] = md.level();
    j["N"] = md.order();
    j["weights"] = md.weights();
    Json s = Json::array();
    for (long i = 0; i < md.size(); ++i) {
        Json row = Json::array();
        for (long jj = 0; jj < md.size(); ++jj) row.push_back(cyc_to_json(md.s(i, jj)));
        s.push_back(std::move(row));
    }
    j["S"] = std::move(s);
    Json t = Json::array();
    for (long i = 0; i < md.size(); ++i) t.push_back(cyc_to_json(md.t(i)));
    j["T"] = std::move(t);
    j["conj"] = md.conjugation();
    return j;
}

inline ModularData modular_data_from_json(const Json& j) {
    if (j.at("version").get<int>() != kCacheFormatVersion)
        throw UsageError("cache format version mismatch");
    auto alg = SimpleAlgebra::build(j.at("algebra").at("family").get<std::string>().at(0),
                                    j.at("algebra").at("rank").get<int>());
    long k = j.at("k").get<long>();
    long n = j.at("N").get<long>();
    std::vector<FiniteWeight> weights = j.at("weights").get<std::vector<FiniteWeight>>();
    std::vector<std::vector<CycNumber>> s;
    for (const auto& row : j.at("S")) {
        std::vector<CycNumber> r;
        for (const auto& e : row) r.push_back(cyc_from_json(e));
        s.push_back(std::move(r));
    }
    std::vector<CycNumber> t;
    for (const auto& e : j.at("T")) t.push_back(cyc_from_json(e));
    std::vector<int> conj = j.at("conj").get<std::vector<int>>();
    return ModularData::from_parts(alg, k, n, std::move(weights), std::move(s), std::move(t),
                                   std::move(conj));
}

inline Json relation_report_to_json(const RelationReport& r) {
    Json j;
    j["relation"] = r.relation;
    j["params"] = {{"algebra", r.algebra}, {"k", r.level}, {"ell", r.ell}};
    j["tested"] = r.tested;
    j["skipped_boundary"] = r.skipped;
    j["failures"] = r.failures;
    j["seconds"] = r.seconds;
    return j;
}

inline std::string weight_to_string(const FiniteWeight& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s;
}

/// Parse "1,0" (one weight) and "1,0;0,1" (weight lists).
inline FiniteWeight parse_weight(const std::string& s, int rank) {
    FiniteWeight w;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            w.push_back(std::stol(tok));
        } catch (...) {
            throw UsageError("cannot parse weight label: " + tok);
        }
    }
    if (static_cast<int>(w.size()) != rank)
        throw UsageError("weight '" + s + "' has " + std::to_string(w.size()) + " labels, expected " +
                         std::to_string(rank));
    return w;
}

inline std::vector<FiniteWeight> parse_weight_list(const std::string& s, int rank) {
    std::vector<FiniteWeight> out;
    if (s.empty()) return out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ';')) out.push_back(parse_weight(tok, rank));
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot open for writing: " + path);
    os << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw UsageError("cannot open for reading: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace galink
