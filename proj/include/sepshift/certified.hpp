#pragma once

// Exact rationals and outward-rounded interval enclosures. Every comparison
// involving the constant e goes through here: expressions are enclosed at
// increasing precision until the enclosure lies strictly on one side of the
// threshold, or a precision cap is hit and the answer is Unknown.

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <string>

namespace sepshift {

using BigInt = mpz_class;
using Rational = mpq_class;

/// "num/den" (or "num" when den = 1).
std::string to_string(const Rational & q);
/// Accepts "n", "n/d", or a finite decimal like "0.125". Throws Usage otherwise.
Rational parse_rational(const std::string & text);

BigInt pow(const BigInt & base, unsigned long exponent);

/// Closed interval [lo, hi] with MPFR endpoints, always rounded outward.
class Enclosure {
public:
    explicit Enclosure(long precision_bits);
    Enclosure(const Enclosure & other);
    Enclosure & operator=(const Enclosure & other);
    ~Enclosure();

    static Enclosure exact(const Rational & q, long precision_bits);
    static Enclosure euler(long precision_bits);

    long precision() const noexcept { return prec_; }

    /// Products and powers assume both operands are nonnegative.
    Enclosure & operator*=(const Enclosure & other);
    Enclosure & operator*=(const Rational & q);
    Enclosure pow(unsigned long exponent) const;
    /// 1/x for x > 0.
    Enclosure reciprocal() const;

    /// Rational endpoints (exact conversions of the MPFR bounds).
    Rational lower() const;
    Rational upper() const;
    int compare_lower(const Rational & q) const; // sign(lo - q)
    int compare_upper(const Rational & q) const; // sign(hi - q)

    std::string lower_string(int digits = 20) const;
    std::string upper_string(int digits = 20) const;

private:
    long prec_;
    mpfr_t lo_, hi_;
};

enum class Verdict { Accept, Reject, Unknown };

const char * to_string(Verdict v);

inline constexpr long default_precision_cap = 1L << 14;

struct CertifiedComparison {
    Verdict verdict = Verdict::Unknown;
    std::string lower, upper; // enclosure of the left-hand side at the deciding precision
    long precision_bits = 0;
    bool exact = false;       // decided by exact rational arithmetic alone
};

/// Decides value <= 1 where `evaluate(prec)` encloses value at a given precision.
CertifiedComparison certify_leq_one(
    const std::function<Enclosure(long)> & evaluate, long max_bits = default_precision_cap);

/// Decides e^power * q <= 1 for rational q >= 0. q = 0 is decided exactly.
CertifiedComparison certify_e_power_times(unsigned long power, const Rational & q,
    long max_bits = default_precision_cap);

/// Certified comparisons q < (e*d)^(-exponent) against a fixed threshold,
/// with a cached rational enclosure refined on demand.
class EulerThreshold {
public:
    EulerThreshold(unsigned long d, unsigned long exponent, long max_bits = default_precision_cap);

    unsigned long exponent() const noexcept { return exponent_; }
    /// Throws Error(Resource) when the comparison stays undecided at the cap.
    bool below(const Rational & q); // q < threshold
    std::string describe() const;

private:
    void refine(long bits);

    unsigned long d_, exponent_;
    long max_bits_, bits_ = 0;
    Rational lo_, hi_;
};

} // namespace sepshift
