// Command-line front end: weight tables, exact S/T matrices, fusion tables,
// Galois action tables, closed-form link invariants, and relation verifiers.
//
// Exit codes: 0 success, 1 a verified identity failed (witnesses emitted),
// 2 usage or configuration error.

#include <galink/galink.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace {

using namespace galink;

struct Config {
    std::string algebra = "A1";
    long level = 1;
    std::string backend = "exact";
    std::string format = "pretty";
    std::string cache_dir;
    unsigned threads = 1;
};

std::string cache_path(const Config& cfg, const SimpleAlgebra& alg, long k) {
    return (std::filesystem::path(cfg.cache_dir) /
            (alg.name() + "_k" + std::to_string(k) + "_v" + std::to_string(kCacheFormatVersion) + ".json"))
        .string();
}

ModularData load_or_build(const Config& cfg, const SimpleAlgebra& alg, long k) {
    if (cfg.cache_dir.empty()) return ModularData::build(alg, k, cfg.threads);
    std::string path = cache_path(cfg, alg, k);
    if (std::filesystem::exists(path)) {
        try {
            return modular_data_from_json(Json::parse(read_file(path)));
        } catch (const std::exception& e) {
            std::cerr << "warning: cache at " << path << " unusable (" << e.what()
                      << "); rebuilding\n";
        }
    }
    ModularData md = ModularData::build(alg, k, cfg.threads);
    std::filesystem::create_directories(cfg.cache_dir);
    write_file(path, modular_data_to_json(md).dump(2) + "\n");
    return md;
}

std::string fmt_complex(std::complex<double> z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

int cmd_weights(const Config& cfg) {
    auto alg = SimpleAlgebra::parse(cfg.algebra);
    auto weights = enumerate_weights(alg, cfg.level);
    if (cfg.format == "json") {
        Json j = {{"algebra", alg.name()}, {"k", cfg.level}, {"weights", weights}};
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "index,labels\n";
        for (size_t i = 0; i < weights.size(); ++i)
            std::cout << i << ",\"" << weight_to_string(weights[i]) << "\"\n";
    } else {
        std::cout << alg.name() << " level " << cfg.level << ": " << weights.size() << " weights\n";
        for (size_t i = 0; i < weights.size(); ++i)
            std::cout << "  [" << i << "] (" << weight_to_string(weights[i]) << ")\n";
    }
    return 0;
}

int cmd_smatrix(const Config& cfg) {
    auto alg = SimpleAlgebra::parse(cfg.algebra);
    if (cfg.backend == "float") {
        auto fd = FloatModularData::build(alg, cfg.level);
        const long n = static_cast<long>(fd.weights.size());
        if (cfg.format == "csv") {
            std::cout << "i,j,re,im\n";
            std::cout.precision(15);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j)
                    std::cout << i << "," << j << "," << fd.S[i][j].real() << "," << fd.S[i][j].imag() << "\n";
        } else {
            std::cout << "S (" << alg.name() << " level " << cfg.level << ", float backend)\n";
            for (long i = 0; i < n; ++i) {
                for (long j = 0; j < n; ++j) std::cout << (j ? "  " : "") << fmt_complex(fd.S[i][j]);
                std::cout << "\n";
            }
        }
        return 0;
    }
    auto md = load_or_build(cfg, alg, cfg.level);
    if (cfg.format == "json") {
        std::cout << modular_data_to_json(md).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "i,j,exact,re,im\n";
        std::cout.precision(15);
        for (long i = 0; i < md.size(); ++i)
            for (long j = 0; j < md.size(); ++j) {
                auto e = md.s(i, j).embed();
                std::cout << i << "," << j << ",\"" << md.s(i, j).to_string() << "\"," << e.real()
                          << "," << e.imag() << "\n";
            }
    } else {
        std::cout << "S (" << alg.name() << " level " << cfg.level << ", N = " << md.order() << ")\n";
        for (long i = 0; i < md.size(); ++i)
            for (long j = i; j < md.size(); ++j)
                std::cout << "  S[" << i << "][" << j << "] = " << md.s(i, j).to_string() << "  ~ "
                          << fmt_complex(md.s(i, j).embed()) << "\n";
    }
    return 0;
}

int cmd_tmatrix(const Config& cfg) {
    auto alg = SimpleAlgebra::parse(cfg.algebra);
    if (cfg.backend == "float") {
        auto fd = FloatModularData::build(alg, cfg.level);
        std::cout.precision(15);
        std::cout << "i,re,im\n";
        for (size_t i = 0; i < fd.T.size(); ++i)
            std::cout << i << "," << fd.T[i].real() << "," << fd.T[i].imag() << "\n";
        return 0;
    }
    auto md = load_or_build(cfg, alg, cfg.level);
    if (cfg.format == "json") {
        Json t = Json::array();
        for (long i = 0; i < md.size(); ++i) t.push_back(cyc_to_json(md.t(i)));
        Json j = {{"algebra", alg.name()}, {"k", cfg.level}, {"N", md.order()}, {"T", std::move(t)}};
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "i,exact,re,im\n";
        std::cout.precision(15);
        for (long i = 0; i < md.size(); ++i) {
            auto e = md.t(i).embed();
            std::cout << i << ",\"" << md.t(i).to_string() << "\"," << e.real() << "," << e.imag() << "\n";
        }
    } else {
        std::cout << "T (" << alg.name() << " level " << cfg.level << ", N = " << md.order() << ")\n";
        for (long i = 0; i < md.size(); ++i)
            std::cout << "  T[" << i << "] = " << md.t(i).to_string() << "  ~ "
                      << fmt_complex(md.t(i).embed()) << "\n";
    }
    return 0;
}

int cmd_fusion(const Config& cfg, const std::string& provenance) {
    auto alg = SimpleAlgebra::parse(cfg.algebra);
    if (cfg.backend == "float") {
        auto fd = FloatModularData::build(alg, cfg.level);
        const long n = static_cast<long>(fd.weights.size());
        std::cout << "lambda,mu,nu,N\n";
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                for (long c = 0; c < n; ++c)
                    std::cout << "\"" << weight_to_string(fd.weights[a]) << "\",\""
                              << weight_to_string(fd.weights[b]) << "\",\""
                              << weight_to_string(fd.weights[c]) << "\"," << fd.fusion_coefficient(a, b, c)
                              << "\n";
        return 0;
    }
    auto md = load_or_build(cfg, alg, cfg.level);
    FusionTable tab = provenance == "oracle" ? kac_walton_table(md, cfg.threads)
                                             : verlinde_table(md, cfg.threads);
    if (cfg.format == "json") {
        Json rows = Json::array();
        for (long a = 0; a < md.size(); ++a)
            for (long b = 0; b < md.size(); ++b)
                for (long c = 0; c < md.size(); ++c)
                    rows.push_back({{"lambda", md.weights()[a]},
                                    {"mu", md.weights()[b]},
                                    {"nu", md.weights()[c]},
                                    {"N", tab.at(a, b, c)}});
        Json j = {{"algebra", alg.name()},
                  {"k", cfg.level},
                  {"provenance", tab.provenance},
                  {"coefficients", std::move(rows)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "lambda,mu,nu,N\n";
        for (long a = 0; a < md.size(); ++a)
            for (long b = 0; b < md.size(); ++b)
                for (long c = 0; c < md.size(); ++c)
                    std::cout << "\"" << weight_to_string(md.weights()[a]) << "\",\""
                              << weight_to_string(md.weights()[b]) << "\",\""
                              << weight_to_string(md.weights()[c]) << "\"," << tab.at(a, b, c) << "\n";
    }
    return 0;
}

std::vector<long> select_ells(const ModularData& md, const std::string& spec) {
    if (spec == "all") return galois_group_elements(md);
    std::vector<long> ells;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            ells.push_back(std::stol(tok));
        } catch (...) {
            throw UsageError("cannot parse Galois element list: " + spec);
        }
    }
    return ells;
}

int cmd_galois(const Config& cfg, const std::string& ell_spec) {
    auto alg = SimpleAlgebra::parse(cfg.algebra);
    auto md = load_or_build(cfg, alg, cfg.level);
    auto ells = select_ells(md, ell_spec);
    if (cfg.format == "json") {
        Json rows = Json::array();
        for (long e : ells) {
            auto act = build_action_table(md, e, cfg.threads);
            for (long i = 0; i < md.size(); ++i)
                rows.push_back({{"ell", e},
                                {"lambda", md.weights()[i]},
                                {"sigma_lambda", md.weights()[act.perm[i]]},
                                {"epsilon", act.sign[i]}});
        }
        Json j = {{"algebra", alg.name()}, {"k", cfg.level}, {"N", md.order()}, {"table", std::move(rows)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "ell,lambda,sigma_lambda,epsilon\n";
        for (long e : ells) {
            auto act = build_action_table(md, e, cfg.threads);
            for (long i = 0; i < md.size(); ++i)
                std::cout << e << ",\"" << weight_to_string(md.weights()[i]) << "\",\""
                          << weight_to_string(md.weights()[act.perm[i]]) << "\"," << act.sign[i] << "\n";
        }
    }
    return 0;
}

int cmd_invariant(const Config& cfg, const std::string& type, const std::string& weight_spec,
                  long genus) {
    auto alg = SimpleAlgebra::parse(cfg.algebra);
    auto md = load_or_build(cfg, alg, cfg.level);
    auto weights = parse_weight_list(weight_spec, alg.rank());
    std::vector<int> idx;
    for (const auto& w : weights) idx.push_back(md.weight_index(w));

    CycNumber exact;
    std::string context;
    Json extra;
    if (type == "parallel") {
        auto v = parallel_unknots(md, idx);
        exact = v.exact;
        context = v.context;
    } else if (type == "vdim") {
        exact = verlinde_dimension_value(md, genus, idx);
        Int dim = verlinde_dimension(md, genus, idx);
        extra["integer"] = dim.str();
        context = "V[h=" + std::to_string(genus) + "]";
    } else if (type == "chain") {
        auto v = chain(md, idx);
        exact = v.exact;
        context = v.context;
    } else if (type == "keychain") {
        if (idx.empty()) throw UsageError("keychain requires a central weight first");
        auto v = keychain(md, idx.front(), {idx.begin() + 1, idx.end()});
        exact = v.exact;
        context = v.context;
    } else {
        throw UsageError("unknown invariant type: " + type);
    }
    auto e = exact.embed();
    if (cfg.format == "json") {
        Json j = {{"algebra", alg.name()}, {"k", cfg.level},      {"type", type},
                  {"context", context},    {"exact", cyc_to_json(exact)}, {"embed", {e.real(), e.imag()}}};
        for (auto& [key, val] : extra.items()) j[key] = val;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << context << "\n  exact: " << exact.to_string() << "\n  float: " << fmt_complex(e)
                  << "\n";
        if (extra.contains("integer")) std::cout << "  integer: " << extra["integer"].get<std::string>() << "\n";
    }
    return 0;
}

int cmd_verify(const Config& cfg, const std::string& relation, const std::string& ell_spec, long h_max,
               long t_max) {
    if (cfg.backend == "float")
        throw UsageError("verify requires the exact backend");
    auto alg = SimpleAlgebra::parse(cfg.algebra);
    auto md = load_or_build(cfg, alg, cfg.level);
    auto ells = select_ells(md, ell_spec);

    std::vector<std::string> wanted;
    if (relation == "all") wanted = {"5a", "5b", "5c", "5d", "5e", "6a", "6b"};
    else wanted = {relation};
    for (const auto& r : wanted)
        if (r != "5a" && r != "5b" && r != "5c" && r != "5d" && r != "5e" && r != "6a" && r != "6b")
            throw UsageError("unknown relation id: " + r);

    bool needs_ctx = false;
    for (const auto& r : wanted) needs_ctx |= (r != "5a");
    std::optional<RelationContext> ctx;
    if (needs_ctx) ctx.emplace(md, cfg.threads);

    std::vector<RelationReport> reports;
    for (long e : ells) {
        std::optional<GaloisAction> act, act_inv;
        auto action = [&]() -> const GaloisAction& {
            if (!act) act = make_galois_action(md, e);
            return *act;
        };
        for (const auto& r : wanted) {
            if (r == "5a") reports.push_back(verify_5a(md, e, cfg.threads));
            else if (r == "5b") reports.push_back(verify_5b(*ctx, action()));
            else if (r == "5c") reports.push_back(verify_5c(*ctx, action(), h_max, t_max));
            else if (r == "5d") reports.push_back(verify_5d(*ctx, action(), t_max));
            else if (r == "5e") reports.push_back(verify_5e(*ctx, action(), t_max));
            else if (r == "6a") reports.push_back(verify_6a(*ctx, action()));
            else if (r == "6b") {
                if (!act_inv) act_inv = make_galois_action(md, mod_inverse(e, md.order()));
                reports.push_back(verify_6b(*ctx, action(), *act_inv));
            }
        }
    }

    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass();
    if (cfg.format == "json") {
        Json j = Json::array();
        for (const auto& r : reports) j.push_back(relation_report_to_json(r));
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            std::cout << r.relation << " " << r.algebra << " k=" << r.level << " ell=" << r.ell << ": "
                      << (r.pass() ? "pass" : "FAIL") << " (" << r.tested << " tested, " << r.skipped
                      << " skipped)\n";
            for (const auto& f : r.failures) std::cout << "    witness: " << f << "\n";
        }
        std::cout << (all_pass ? "all relations hold" : "FAILURES FOUND") << "\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact affine modular data, Witten link invariants, and their Galois relations"};
    app.require_subcommand(1);

    Config cfg;
    if (const char* env = std::getenv("GALINK_CACHE_DIR")) cfg.cache_dir = env;
    app.add_option("--cache-dir", cfg.cache_dir, "modular-data cache directory")
        ->envname("GALINK_CACHE_DIR");
    app.add_option("--threads", cfg.threads, "worker threads for matrix construction");

    auto add_common = [&](CLI::App* sub, bool with_backend = true) {
        sub->fallthrough();  // allow the global --cache-dir/--threads after the subcommand
        sub->add_option("--algebra,-a", cfg.algebra, "simple algebra, e.g. A1, A2, G2")->required();
        sub->add_option("--level,-k", cfg.level, "level k >= 0")->required();
        sub->add_option("--format,-f", cfg.format, "pretty|json|csv")
            ->check(CLI::IsMember({"pretty", "json", "csv"}));
        if (with_backend)
            sub->add_option("--backend", cfg.backend, "exact|float")
                ->check(CLI::IsMember({"exact", "float"}));
    };

    auto* weights = app.add_subcommand("weights", "list the level-k weight set");
    add_common(weights, false);

    auto* smatrix = app.add_subcommand("smatrix", "the modular S matrix");
    add_common(smatrix);
    auto* tmatrix = app.add_subcommand("tmatrix", "the modular T matrix");
    add_common(tmatrix);

    auto* fusion = app.add_subcommand("fusion", "the fusion coefficient table");
    add_common(fusion);
    std::string provenance = "verlinde";
    fusion->add_option("--provenance", provenance, "verlinde|oracle")
        ->check(CLI::IsMember({"verlinde", "oracle"}));

    auto* galois = app.add_subcommand("galois", "Galois permutations and parity signs");
    add_common(galois, false);
    std::string ell_spec = "all";
    galois->add_option("--ell", ell_spec, "all or a comma-separated list");

    auto* invariant = app.add_subcommand("invariant", "closed-form link invariants");
    add_common(invariant, false);
    std::string inv_type = "parallel", weight_spec;
    long genus = 0;
    invariant->add_option("--type", inv_type, "parallel|vdim|chain|keychain")->required();
    invariant->add_option("--weights", weight_spec,
                          "semicolon-separated weights, e.g. \"1,0;0,1\" (keychain: central first)");
    invariant->add_option("--genus", genus, "genus h for vdim");

    auto* verify = app.add_subcommand("verify", "verify Galois relations exactly");
    add_common(verify);
    std::string relation = "all", verify_ells = "all";
    long h_max = 2, t_max = 3;
    verify->add_option("--relation", relation, "5a|5b|5c|5d|5e|6a|6b|all");
    verify->add_option("--ell", verify_ells, "all or a comma-separated list");
    verify->add_option("--hmax", h_max, "max genus for 5c");
    verify->add_option("--tmax", t_max, "max strand count for 5c/5d/5e");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*weights) return cmd_weights(cfg);
        if (*smatrix) return cmd_smatrix(cfg);
        if (*tmatrix) return cmd_tmatrix(cfg);
        if (*fusion) return cmd_fusion(cfg, provenance);
        if (*galois) return cmd_galois(cfg, ell_spec);
        if (*invariant) return cmd_invariant(cfg, inv_type, weight_spec, genus);
        if (*verify) return cmd_verify(cfg, relation, verify_ells, h_max, t_max);
    } catch (const galink::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const galink::InternalError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
