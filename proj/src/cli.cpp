#include "chowz/cli.hpp"

#include "chowz/registry.hpp"
#include "chowz/replay.hpp"
#include "chowz/serialize.hpp"
#include "chowz/zlinalg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace chowz::cli {

namespace {

inline constexpr const char* kResultSchema = "chowz.result/1";

struct Config {
    std::string format = "human";
    std::string cache = "";
    std::string cache_dir;
    std::vector<std::string> moduli;
    std::string out_file;
};

Moduli parse_moduli(const std::vector<std::string>& items) {
    Moduli w;
    for (const auto& s : items) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("moduli must look like name=value, got '" + s + "'", 0);
        try {
            w[s.substr(0, eq)] = std::stoi(s.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw ParseError("bad moduli value in '" + s + "'", eq + 1);
        }
    }
    return w;
}

// A ring is a chowz.ring/1 file or the name of a registered ring.
bool is_file(const std::string& arg) {
    std::error_code ec;
    return std::filesystem::is_regular_file(arg, ec);
}

PresentedRingPtr load_ring(const std::string& arg, const Moduli& w) {
    if (is_file(arg)) return presented_ring_from_json(load_json_file(arg));
    return RingRegistry::builtin().ring(arg, w);
}

// An ideal is a chowz.ideal/1 file or a comma separated list of generators.
Ideal load_ideal(const std::string& arg, const PresentedRingPtr& R) {
    if (is_file(arg)) return ideal_from_json(load_json_file(arg), R);
    std::vector<Polynomial> gens;
    std::stringstream ss(arg);
    for (std::string g; std::getline(ss, g, ',');)
        if (g.find_first_not_of(" \t") != std::string::npos) gens.push_back(R->parse(g));
    return Ideal(R, std::move(gens));
}

json poly_list(const std::vector<Polynomial>& ps) {
    json j = json::array();
    for (const auto& p : ps) j.push_back(p.to_string());
    return j;
}

void emit(const Config& cfg, std::ostream& out, const json& doc, const std::string& human) {
    if (!cfg.out_file.empty()) write_text_file(cfg.out_file, dump(doc) + "\n");
    if (cfg.format == "json")
        out << dump(doc) << "\n";
    else
        out << human;
}

json result(const std::string& command) { return {{"schema", kResultSchema}, {"command", command}}; }

std::string lines(const std::vector<Polynomial>& ps) {
    std::string s;
    for (const auto& p : ps) s += p.to_string() + "\n";
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Integral Chow ring computations and step replay", "chowz"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--cache", cfg.cache, "Groebner basis cache policy")->check(CLI::IsMember({"use", "verify", "off"}));
    app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $CHOWZ_CACHE_DIR)");
    app.add_option("--moduli", cfg.moduli, "Values for ring parameters, e.g. w32=1");
    app.add_option("-o,--output", cfg.out_file, "Also write the structured result to this file");

    std::string ring_arg, ideal_arg, ideal2_arg, map_arg;
    std::vector<std::string> elements;
    int degree = 0;

    auto* gb = app.add_subcommand("gb", "Strong Groebner basis of an ideal plus the ring relations");
    gb->add_option("ring", ring_arg, "Ring file or registered ring")->required();
    gb->add_option("ideal", ideal_arg, "Ideal file or comma separated generators")->required();

    auto* nf = app.add_subcommand("nf", "Normal forms modulo an ideal");
    nf->add_option("ring", ring_arg)->required();
    nf->add_option("ideal", ideal_arg)->required();
    nf->add_option("elements", elements)->required();

    auto* inter = app.add_subcommand("intersect", "Intersection of two ideals");
    inter->add_option("ring", ring_arg)->required();
    inter->add_option("ideal", ideal_arg)->required();
    inter->add_option("other", ideal2_arg)->required();

    auto* kernel = app.add_subcommand("kernel", "Kernel of a registered ring map");
    kernel->add_option("map", map_arg)->required();

    auto* piece = app.add_subcommand("graded-piece", "Degree-d part of an ideal as an abelian group");
    piece->add_option("ring", ring_arg)->required();
    piece->add_option("ideal", ideal_arg)->required();
    piece->add_option("degree", degree)->required();

    std::vector<std::string> steps;
    std::string claims_file, report_file;
    auto* verify = app.add_subcommand("verify", "Replay the recorded steps and check their claims");
    verify->add_option("--steps", steps, "Step ids, aliases or prefixes (default: all)")->delimiter(',');
    verify->add_option("--claims", claims_file, "Claims file (default: the built-in one)");
    verify->add_option("--report", report_file, "Write the structured report here");

    auto* catalog = app.add_subcommand("catalog", "List the recorded steps");
    auto* exp = app.add_subcommand("export-registry", "Print the ring registry");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "chowz: " << e.what() << "\n";
        return ParseFailure;
    }

    try {
        Moduli w = parse_moduli(cfg.moduli);
        CacheConfig cc = cache_config();
        if (!cfg.cache_dir.empty()) {
            cc.dir = cfg.cache_dir;
            if (cfg.cache.empty()) cc.policy = CachePolicy::Use;
        }
        if (!cfg.cache.empty()) cc.policy = cache_policy_from_string(cfg.cache);
        if (cc.policy != CachePolicy::Off && cc.dir.empty()) throw ParseError("cache policy needs a cache directory", 0);
        set_cache_config(cc);

        if (*gb) {
            auto R = load_ring(ring_arg, w);
            Ideal I = load_ideal(ideal_arg, R);
            GroebnerBasis G = strong_gb(I);
            const GbStats& s = G.stats();
            json doc = to_json(G);
            std::ostringstream h;
            h << "basis: " << G.basis().size() << " elements\n"
              << "pairs: " << s.pairs << "\nreductions to zero: " << s.reductions_to_zero
              << "\nmax coefficient bits: " << s.max_coeff_bits << "\ncache: " << (s.from_cache ? "hit" : "miss")
              << "\n";
            if (cfg.out_file.empty()) h << lines(G.basis());
            if (cfg.format == "json" || !cfg.out_file.empty()) {
                // summary alongside the basis document
                doc["summary"] = {{"pairs", std::to_string(s.pairs)},
                                  {"reductions_to_zero", std::to_string(s.reductions_to_zero)},
                                  {"max_coefficient_bits", std::to_string(s.max_coeff_bits)},
                                  {"cache", s.from_cache ? "hit" : "miss"}};
            }
            emit(cfg, out, doc, h.str());
        } else if (*nf) {
            auto R = load_ring(ring_arg, w);
            Ideal I = load_ideal(ideal_arg, R);
            std::vector<Polynomial> r;
            for (const auto& e : elements) r.push_back(normal_form(R->parse(e), I));
            json doc = result("nf");
            doc["normal_forms"] = poly_list(r);
            emit(cfg, out, doc, lines(r));
        } else if (*inter) {
            auto R = load_ring(ring_arg, w);
            auto gens = reduced_generators(ideal_intersect(load_ideal(ideal_arg, R), load_ideal(ideal2_arg, R)));
            json doc = to_json(Ideal(R, gens));
            emit(cfg, out, doc, lines(gens));
        } else if (*kernel) {
            auto gens = reduced_generators(ring_map_kernel(RingRegistry::builtin().map(map_arg, w)));
            json doc = result("kernel");
            doc["map"] = map_arg;
            doc["generators"] = poly_list(gens);
            emit(cfg, out, doc, lines(gens));
        } else if (*piece) {
            auto R = load_ring(ring_arg, w);
            GradedPiece g = graded_piece(load_ideal(ideal_arg, R), degree);
            json inv = json::array();
            for (const auto& i : g.invariants) inv.push_back(i.get_str());
            json doc = result("graded-piece");
            doc["degree"] = std::to_string(degree);
            doc["invariants"] = inv;
            doc["generators"] = poly_list(g.generators);
            emit(cfg, out, doc, g.describe() + "\n");
        } else if (*verify) {
            json claims = claims_file.empty() ? replay::Engine::builtin_claims() : load_json_file(claims_file);
            replay::Engine engine(claims);
            auto reports = engine.run_all(steps);
            json doc = replay::report_document(reports);
            if (!report_file.empty()) write_text_file(report_file, dump(doc) + "\n");
            emit(cfg, out, doc, replay::human_report(reports));
            for (const auto& r : reports)
                if (!r.passed()) return ClaimFailure;
        } else if (*catalog) {
            replay::Engine engine(replay::Engine::builtin_claims());
            json doc = result("catalog");
            doc["steps"] = json::array();
            std::string h;
            for (const auto& s : engine.catalog()) {
                doc["steps"].push_back({{"id", s.id},
                                        {"description", s.description},
                                        {"aliases", s.aliases},
                                        {"deps", s.deps},
                                        {"moduli", s.moduli},
                                        {"claims", std::to_string(s.claims.size())}});
                h += s.id + "  " + s.description + "\n";
            }
            emit(cfg, out, doc, h);
        } else if (*exp) {
            json doc = RingRegistry::builtin().export_json(w);
            out << dump(doc) << "\n";
            if (!cfg.out_file.empty()) write_text_file(cfg.out_file, dump(doc) + "\n");
        }
        return Ok;
    } catch (const ParseError& e) {
        err << "chowz: parse error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const json::exception& e) {
        err << "chowz: parse error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const replay::UnknownStep& e) {
        err << "chowz: " << e.what() << "\n";
        return ParseFailure;
    } catch (const std::invalid_argument& e) {
        err << "chowz: " << e.what() << "\n";
        return ParseFailure;
    } catch (const std::exception& e) {
        err << "chowz: internal error: " << e.what() << "\n";
        return InternalError;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace chowz::cli
