#pragma once

#include <string>

#include "qsb/ramify.hpp"

namespace qsb {

// canonical JSON: sorted keys, exact values rendered as strings
std::string canonical_json(const std::string& payload);

// FNV-1a of the input text, hex; stable across platforms
std::string input_hash(const std::string& text);

struct AnalysisOptions {
    int confidence_k = 40;
    uint64_t seed = 1;
    std::vector<uint64_t> primes;  // empty: derive deterministically from seed
};

struct AnalysisReport {
    int schema_version = 1;
    std::string hash;
    std::string error;  // empty on success
    bool degeneration_simple = false;
    bool a00_nonzero = false;
    std::string json;  // canonical serialized report
    int exit_code = 1;
};

// the full pipeline: parse -> bundle -> degeneration -> alpha -> ramification
AnalysisReport analyze_text(const std::string& text, const AnalysisOptions& opt);

// serialization helpers used by the CLI
std::string serialize_symbol_sum(const SymbolSum& s);

}  // namespace qsb
