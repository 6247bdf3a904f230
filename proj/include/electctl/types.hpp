#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace electctl {

// Candidate handle: index into the universe name table of an Election.
using CandidateId = std::uint32_t;

// Solution counts explode combinatorially, so they are arbitrary precision.
using Count = mpz_class;

// Probabilities are exact rationals end to end; decimals only at output.
using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rule/ballot mismatches, wrong algorithm cell, malformed instances.
struct IncompatibleError : Error {
    using Error::Error;
};

// Exhaustive enumeration would exceed the configured subset cap.
struct CapExceededError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    ParseError(int line_no, const std::string& what)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

inline Count binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return Count(0);
    Count r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Number of subsets of an n-element pool with size at most k.
inline Count subsets_up_to(long long n, long long k) {
    Count total = 0;
    for (long long i = 0; i <= k && i <= n; ++i) total += binomial(n, i);
    return total;
}

std::string decimal_string(const Rational& value, int digits = 6);

}  // namespace electctl
