#include "chowz/groebner.hpp"
#include "chowz/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <unordered_map>

namespace chowz {
namespace {

std::mutex g_mutex;
std::optional<CacheConfig> g_config;
CacheCounters g_counters;
// In-process memo; keyed by the canonical input document.
std::unordered_map<std::string, GroebnerBasis> g_memo;

std::string fnv_hex(const std::string& s) {
    std::uint64_t h1 = 1469598103934665603ull, h2 = 1099511628211ull ^ 0x9e3779b97f4a7c15ull;
    for (unsigned char c : s) {
        h1 = (h1 ^ c) * 1099511628211ull;
        h2 = (h2 ^ c) * 0x100000001b3ull + 0x7f;
    }
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(h1),
                  static_cast<unsigned long long>(h2));
    return buf;
}

json input_document(const RingPtr& ring, const std::vector<Polynomial>& gens, Domain domain) {
    json g = json::array();
    for (const auto& p : gens) g.push_back(to_json(p));
    return {{"ring", to_json(*ring)}, {"domain", to_string(domain)}, {"generators", g}};
}

bool verify_hit(const GroebnerBasis& gb, const std::vector<Polynomial>& gens) {
    if (gb.certificate_failure()) return false;
    for (const auto& g : gens)
        if (!gb.contains(g)) return false;
    return true;
}

std::optional<GroebnerBasis> load_entry(const std::string& path, const json& input) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        json j = json::parse(in);
        if (j.at("input") != input) return std::nullopt;
        return basis_from_json(j.at("basis"));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void store_entry(const std::string& path, const json& input, const GroebnerBasis& gb) {
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << dump({{"schema", "chowz.gbcache/1"}, {"input", input}, {"basis", to_json(gb)}});
    }
    std::filesystem::rename(tmp, path, ec);
}

}  // namespace

std::string to_string(CachePolicy p) {
    switch (p) {
    case CachePolicy::Use: return "use";
    case CachePolicy::Verify: return "verify";
    default: return "off";
    }
}

CachePolicy cache_policy_from_string(std::string_view s) {
    if (s == "use") return CachePolicy::Use;
    if (s == "verify") return CachePolicy::Verify;
    if (s == "off") return CachePolicy::Off;
    throw ParseError("unknown cache policy '" + std::string(s) + "'", 1);
}

CacheConfig cache_config() {
    std::lock_guard lock(g_mutex);
    if (!g_config) {
        CacheConfig c;
        if (const char* d = std::getenv("CHOWZ_CACHE_DIR"); d && *d) {
            c.dir = d;
            c.policy = CachePolicy::Use;
        }
        g_config = c;
    }
    return *g_config;
}

void set_cache_config(CacheConfig c) {
    std::lock_guard lock(g_mutex);
    g_config = std::move(c);
    g_memo.clear();
}

CacheCounters cache_counters() {
    std::lock_guard lock(g_mutex);
    return g_counters;
}

void reset_cache_counters() {
    std::lock_guard lock(g_mutex);
    g_counters = {};
    g_memo.clear();
}

GroebnerBasis groebner_basis(const RingPtr& ring, std::vector<Polynomial> gens, Domain domain, const GbOptions& opts) {
    json input = input_document(ring, gens, domain);
    std::string key = input.dump();
    {
        std::lock_guard lock(g_mutex);
        if (auto it = g_memo.find(key); it != g_memo.end()) return it->second;
    }
    CacheConfig cfg = cache_config();
    std::string path;
    if (cfg.policy != CachePolicy::Off && !cfg.dir.empty())
        path = (std::filesystem::path(cfg.dir) / (fnv_hex(key) + ".json")).string();

    std::optional<GroebnerBasis> result;
    if (!path.empty() && cfg.policy == CachePolicy::Use) {
        if (auto hit = load_entry(path, input)) {
            if (verify_hit(*hit, gens)) {
                GbStats s = hit->stats();
                s.from_cache = true;
                result = GroebnerBasis(hit->ring(), hit->domain(), hit->basis(), s);
                std::lock_guard lock(g_mutex);
                ++g_counters.hits;
            } else {
                std::lock_guard lock(g_mutex);
                ++g_counters.rejected;
            }
        }
    }
    if (!result) {
        result = compute_gb(ring, gens, domain, opts);
        {
            std::lock_guard lock(g_mutex);
            ++g_counters.misses;
        }
        if (!path.empty()) {
            if (cfg.policy == CachePolicy::Verify) {
                if (auto old = load_entry(path, input); old && old->basis() != result->basis())
                    throw CacheMismatch("cached basis in " + path + " differs from a fresh computation");
            }
            store_entry(path, input, *result);
        }
    }
    std::lock_guard lock(g_mutex);
    g_memo.emplace(key, *result);
    return *result;
}

GroebnerBasis strong_gb(const Ideal& I, const GbOptions& opts) {
    return groebner_basis(I.ring()->ambient(), I.all_generators(), I.ring()->domain(), opts);
}

}  // namespace chowz
