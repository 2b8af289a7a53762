// Acceptance report: one PASS/FAIL line per criterion.
#include "chowz/cli.hpp"
#include "chowz/replay.hpp"

#include <cstdlib>
#include <iostream>
#include <regex>
#include <sstream>

using namespace chowz;
using namespace chowz::replay;

namespace {

const std::vector<StepReport>& run() {
    static const std::vector<StepReport> r = Engine(Engine::builtin_claims()).run_all();
    return r;
}

const StepReport& step(const std::string& id) {
    for (const auto& r : run())
        if (r.id == id) return r;
    throw std::out_of_range("no step " + id);
}

struct Outcome {
    bool ok = true;
    std::string note;
    void fail(const std::string& why) {
        if (ok) note = why;
        ok = false;
    }
};

// named claims of a step pass for every moduli value; empty list: all claims
void need(Outcome& v, const std::string& id, const std::vector<std::string>& claims = {}) {
    const StepReport& r = step(id);
    if (!r.dependency_failure.empty()) v.fail(id + " blocked by " + r.dependency_failure);
    if (claims.empty()) {
        if (r.claims.empty()) v.fail(id + " has no claims");
        for (const auto& c : r.claims)
            if (!c.pass) v.fail(id + ":" + c.id + c.moduli + " " + c.witness);
        return;
    }
    for (const auto& name : claims) {
        bool seen = false;
        for (const auto& c : r.claims) {
            if (c.id != name) continue;
            seen = true;
            if (!c.pass) v.fail(id + ":" + c.id + c.moduli + " " + c.witness);
        }
        if (!seen) v.fail(id + ":" + name + " missing");
    }
}

void need_moduli(Outcome& v, const std::string& id, const std::vector<std::string>& moduli) {
    const StepReport& r = step(id);
    if (r.verdict != replay::Verdict::PassWithModuli || r.moduli != moduli)
        v.fail(id + " verdict " + to_string(r.verdict));
}

// every integer literal that is a coefficient (not an exponent, not part of a name)
std::vector<std::pair<std::size_t, std::size_t>> coefficient_spans(const std::string& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < s.size();) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        bool attached = i > 0 && (std::isalnum(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == '_' || s[i - 1] == '^');
        if (!attached) out.emplace_back(i, j);
        i = j;
    }
    return out;
}

const char* kLiteralFields[] = {"lhs", "rhs", "elements", "generators", "images", "quotient_by", "element", "generator"};

struct Corruption {
    std::string step, claim, before, after;
};

// Calls f(corrupted claims document, description) for each single-coefficient change.
template <class F>
void for_each_corruption(const json& claims, F&& f) {
    for (std::size_t si = 0; si < claims["steps"].size(); ++si) {
        const json& s = claims["steps"][si];
        for (std::size_t ci = 0; ci < s["claims"].size(); ++ci) {
            const json& c = s["claims"][ci];
            auto visit = [&](const json::json_pointer& ptr, const std::string& text) {
                if (!text.empty() && text[0] == '$') return;
                for (auto [b, e] : coefficient_spans(text)) {
                    Integer n(text.substr(b, e - b));
                    std::string changed = text.substr(0, b) + Integer(n + 1).get_str() + text.substr(e);
                    json doc = claims;
                    doc[ptr] = changed;
                    f(doc, Corruption{s["id"], c["id"], text, changed});
                }
            };
            json::json_pointer base = json::json_pointer("/steps") / si / "claims" / ci;
            for (const char* field : kLiteralFields) {
                if (!c.contains(field)) continue;
                const json& v = c[field];
                if (v.is_string()) visit(base / field, v.get<std::string>());
                if (v.is_array())
                    for (std::size_t k = 0; k < v.size(); ++k)
                        if (v[k].is_string()) visit(base / field / k, v[k].get<std::string>());
            }
            if (c.contains("values") && c["values"].is_object())
                for (const auto& [name, val] : c["values"].items()) visit(base / "values" / name, val.template get<std::string>());
        }
    }
}

bool run_command(const char* path) {
    std::string cmd = std::string(path) + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, Outcome>> rows;
    auto add = [&](std::string title, Outcome v) { rows.emplace_back(std::move(title), std::move(v)); };

    {
        Outcome v;
        need(v, "S3.2-excise-D001");
        add("Euler class of W12 is 144 lambda2 and cuts out Delta1 minus Delta001", v);
    }
    {
        Outcome v;
        need(v, "S3.3-excise-D01", {"norm-generators", "simplified", "presentation"});
        add("norm of (12 t1) is (12 lambda1, 24 lambda2)", v);
    }
    {
        Outcome v;
        need(v, "S3.4a");
        need(v, "S3.4b");
        add("boundary pushes give (144 delta1 lambda2) and (12 delta1 lambda1, 24 delta1 lambda2)", v);
    }
    {
        Outcome v;
        need(v, "S4.4-biell-D000",
             {"norm-pushforwards", "last-three-vanish", "first-relation", "first-relation-listed"});
        add("four bielliptic pushforwards; last three vanish; first relation up to sign (see ledger)", v);
    }
    {
        Outcome v;
        need(v, "S4.6-biell-D00-part2", {"torus-coefficients", "gamma-coefficients", "final-class", "implied"});
        add("graph class coefficients and membership of the final class", v);
    }
    {
        Outcome v;
        need(v, "S4.4-biell-D000", {"presentation"});
        need(v, "S4.5-biell-D00-part1", {"presentation", "presentation-from-B"});
        need(v, "S4.7-biell-D0", {"presentation", "presentation-from-B"});
        add("three bielliptic presentations as ideal equalities", v);
    }
    {
        Outcome v;
        need(v, "S5.1-beta3");
        need_moduli(v, "S5.1-beta3", {"w32"});
        add("beta3: triple kernel (24 lambda2 delta1), pieces in degrees 4-6, x = 4", v);
    }
    {
        Outcome v;
        need(v, "S5.2-beta2");
        need_moduli(v, "S5.2-beta2", {"w21"});
        add("beta2: pair and triple intersections, y = -3, z = 1", v);
    }
    {
        Outcome v;
        need(v, "S5.3-beta11", {"b-nonmembership", "grr-consequence", "grr-in-m2ct"});
        add("beta11 non-membership and the GRR relation", v);
    }
    {
        Outcome v;
        need(v, "S5.5b-M2ct");
        add("compact-type presentation equals the headline presentation for all w", v);
    }
    {
        Outcome v;
        if (!run_command(CHOWZ_POLY_TESTS)) v.fail("unit property suite failed");
        if (!run_command(CHOWZ_PROPERTY_TESTS)) v.fail("boundary property suite failed");
        add("property suites", v);
    }
    {
        Outcome v;
        std::ostringstream out, err;
        int code = cli::run({"verify", "--claims", std::string(CHOWZ_SOURCE_DIR) + "/tests/fixtures/corrupted_euler.json"},
                            out, err);
        if (code == cli::Ok) v.fail("corrupted fixture verified");
        if (out.str().find("normal form") == std::string::npos) v.fail("no normal-form witness");
        std::size_t total = 0, caught = 0;
        std::vector<Corruption> missed;
        for_each_corruption(Engine::builtin_claims(), [&](const json& doc, const Corruption& c) {
            ++total;
            bool failed = false;
            try {
                Engine e(doc);
                StepReport r = e.run_step(c.step);
                for (const auto& cr : r.claims)
                    if (cr.id == c.claim && !cr.pass && !cr.witness.empty()) failed = true;
            } catch (const std::exception&) {
                failed = false;
            }
            if (failed)
                ++caught;
            else
                missed.push_back(c);
        });
        for (const auto& m : missed)
            std::cerr << "  corruption not detected: " << m.step << ":" << m.claim << " " << m.before << " -> "
                      << m.after << "\n";
        if (!missed.empty()) v.fail(std::to_string(missed.size()) + " of " + std::to_string(total) + " corruptions passed");
        v.note = v.ok ? std::to_string(caught) + "/" + std::to_string(total) + " single-coefficient corruptions caught"
                      : v.note;
        add("negative control", v);
    }

    int failures = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& [title, v] = rows[i];
        std::cout << (v.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << title;
        if (!v.note.empty()) std::cout << " [" << v.note << "]";
        std::cout << "\n";
        failures += !v.ok;
    }
    return failures == 0 ? 0 : 1;
}
