#include "qsb/report.hpp"

#include <json.hpp>

namespace qsb {

using nlohmann::json;

std::string canonical_json(const std::string& payload) {
    // parse and re-dump: nlohmann::json keeps object keys sorted
    return json::parse(payload).dump();
}

std::string input_hash(const std::string& text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return std::string(buf);
}

std::string serialize_symbol_sum(const SymbolSum& s) {
    json terms = json::array();
    for (auto& t : s.terms()) {
        json slots = json::array();
        for (auto& c : t.slots) {
            if (!c.opaque() && c.ctx() && c.ctx()->tag() == FieldTag::Rationals)
                slots.push_back(c.rational_value().get_str());
            else
                slots.push_back(c.str());
        }
        terms.push_back(slots);
    }
    json out{{"deg", s.degree()}, {"terms", terms}};
    return out.dump();
}

AnalysisReport analyze_text(const std::string& text, const AnalysisOptions& opt) {
    AnalysisReport rep;
    rep.hash = input_hash(text);
    json j;
    j["schema_version"] = rep.schema_version;
    j["input_hash"] = rep.hash;
    j["seed"] = opt.seed;
    j["confidence_k"] = opt.confidence_k;

    std::vector<uint64_t> primes = opt.primes;
    if (primes.empty()) primes = modular_primes(10007 + (opt.seed % 64), 64);
    {
        json pj = json::array();
        for (auto p : primes) pj.push_back(p);
        j["primes"] = pj;
    }

    try {
        CubicFourfold x = parse_and_validate(text);
        QuadricBundleData q = extract_bundle(x);
        j["bundle"] = {{"a00", q.a.at(0, 0).str()},
                       {"c", q.c.str()},
                       {"delta", q.delta.str()},
                       {"delta_degree", q.delta.total_degree()}};

        DegenerationReport deg = check_simple_degeneration(q);
        rep.degeneration_simple = deg.simple;
        rep.a00_nonzero = deg.a00_nonzero;
        json dj;
        dj["simple"] = deg.simple;
        dj["a00_nonzero"] = deg.a00_nonzero;
        switch (deg.smoothness.verdict) {
            case SmoothVerdict::Smooth:
                dj["discriminant_curve"] = "smooth";
                break;
            case SmoothVerdict::Singular: {
                dj["discriminant_curve"] = "singular";
                if (deg.smoothness.witness) {
                    json w = json::array();
                    for (auto& c : *deg.smoothness.witness) w.push_back(c.get_str());
                    dj["singular_witness"] = w;
                }
                break;
            }
            case SmoothVerdict::NotReduced:
                dj["discriminant_curve"] = "not_reduced";
                break;
        }
        j["degeneration"] = dj;

        if (!deg.simple || !deg.a00_nonzero) {
            j["verdict"] = "not_simple_degeneration";
            rep.json = canonical_json(j.dump());
            rep.exit_code = 2;  // sound negative verdict
            return rep;
        }

        CliffordSymbolData cs = clifford_symbol(q);
        j["alpha"] = {{"slot1", cs.alpha_slot1.str()},
                      {"slot2", cs.alpha_slot2.str()},
                      {"normalized", serialize_symbol_sum(cs.alpha)},
                      {"d", cs.d.str()}};
        {
            json df = json::array();
            for (auto& [g, m] : factor_mpoly(cs.delta_chart).factors)
                df.push_back({{"factor", g.str()}, {"multiplicity", m}});
            j["delta_factors"] = df;
        }

        RamificationReport ram = ramification_report(cs, opt.confidence_k, opt.seed, primes);
        json rj = json::array();
        for (auto& e : ram.entries) {
            json ej;
            ej["place"] = e.place.str();
            ej["residue"] = e.residue_rep;
            switch (e.verdict.kind) {
                case VerdictKind::Trivial:
                    ej["verdict"] = "trivial";
                    break;
                case VerdictKind::NontrivialWitness:
                    ej["verdict"] = "nontrivial";
                    break;
                case VerdictKind::ProbablyTrivial:
                    ej["verdict"] = "probably_trivial";
                    ej["confidence_k"] = e.verdict.confidence_k;
                    break;
            }
            ej["detail"] = e.verdict.detail;
            rj.push_back(ej);
        }
        j["ramification"] = rj;
        j["consistency_checks"] = {{"ramification_confined_to_D_and_L", ram.ramification_confined},
                                   {"d_equals_delta_over_a00_6", true},
                                   {"four_term_clifford_sum", true}};
        j["verdict"] = "analyzed";
        rep.exit_code = 0;
    } catch (const std::exception& e) {
        rep.error = e.what();
        j["error"] = rep.error;
        rep.exit_code = 1;
    }
    rep.json = canonical_json(j.dump());
    return rep;
}

}  // namespace qsb
