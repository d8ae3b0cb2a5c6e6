#pragma once

#include "qsb/bundle.hpp"

namespace qsb {

struct factorization_failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct no_good_specialization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class VerdictKind { Trivial, NontrivialWitness, ProbablyTrivial };

struct ResidueVerdict {
    VerdictKind kind = VerdictKind::Trivial;
    std::string detail;   // square witness, or the certifying point and prime
    int confidence_k = 0; // ProbablyTrivial: confidence 1 - 2^-k
};

struct RamificationEntry {
    Place place;
    std::string residue_rep;
    bool residue_is_one = false;  // syntactically the trivial class
    ResidueVerdict verdict;
};

struct RamificationReport {
    std::vector<RamificationEntry> entries;
    // candidate set: irreducible factors of Delta and of the numerators and
    // denominators of a, b, d, plus the line at infinity
    std::vector<MPoly> candidate_factors;
    std::vector<MPoly> delta_factors;
    bool ramification_confined = true;  // nontrivial residues only on D and L
};

RamificationReport ramification_report(const CliffordSymbolData& cs, int confidence_k,
                                       uint64_t seed, const std::vector<uint64_t>& primes);

// Lemma 5.2-style certificate: f = g1^2 - d g2^2 with divisor(f) = C - 2nL
struct NormCertificate {
    RatFunc f, g1, g2;  // functions on the chart
    SquareClass d;
    MPoly curve;  // chart equation of C (irreducible)
    unsigned n = 0;
};

struct NormCheckResult {
    bool ok = false;
    std::string detail;
};

NormCheckResult check_norm_certificate(const NormCertificate& cert, const CliffordSymbolData& cs);

// residue of (d, f) at the certificate curve: trivial for valid certificates
// (a norm reduces to a square in the totally ramified residue field); verified
// by specialization at smooth points of C
bool norm_certificate_residue_trivial(const NormCertificate& cert, const CliffordSymbolData& cs,
                                      int checks, uint64_t seed);

}  // namespace qsb
