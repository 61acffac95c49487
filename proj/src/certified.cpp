#include "sepshift/certified.hpp"

#include "sepshift/error.hpp"

#include <cctype>
#include <vector>

namespace sepshift {

std::string to_string(const Rational & q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string & text)
{
    auto bad = [&]() -> Rational { fail(ErrorKind::Usage, "not a rational number: \"" + text + "\""); };
    if (text.empty())
        return bad();
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        return bad();
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits;
        for (std::size_t i = start; i < text.size(); ++i) {
            if (i == dot)
                continue;
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                return bad();
            digits += text[i];
        }
        if (digits.empty())
            return bad();
        BigInt num(digits, 10);
        BigInt den = pow(BigInt(10), text.size() - dot - 1);
        Rational q(num, den);
        q.canonicalize();
        return text[0] == '-' ? Rational(-q) : q;
    }
    auto slash = text.find('/');
    auto check_digits = [&](std::size_t from, std::size_t to) {
        if (from >= to)
            bad();
        for (std::size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                bad();
    };
    const std::string sign = text[0] == '-' ? "-" : "";
    if (slash == std::string::npos) {
        check_digits(start, text.size());
        return Rational(BigInt(sign + text.substr(start), 10));
    }
    check_digits(start, slash);
    check_digits(slash + 1, text.size());
    BigInt num(sign + text.substr(start, slash - start), 10);
    BigInt den(text.substr(slash + 1), 10);
    if (den == 0)
        fail(ErrorKind::Usage, "zero denominator in \"" + text + "\"");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

BigInt pow(const BigInt & base, unsigned long exponent)
{
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

// --- Enclosure -----------------------------------------------------------

Enclosure::Enclosure(long precision_bits) : prec_(precision_bits)
{
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Enclosure & other) : prec_(other.prec_)
{
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure & Enclosure::operator=(const Enclosure & other)
{
    if (this != &other) {
        prec_ = other.prec_;
        mpfr_set_prec(lo_, prec_);
        mpfr_set_prec(hi_, prec_);
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Enclosure::~Enclosure()
{
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Enclosure Enclosure::exact(const Rational & q, long precision_bits)
{
    Enclosure e(precision_bits);
    mpfr_set_q(e.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e.hi_, q.get_mpq_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::euler(long precision_bits)
{
    Enclosure e(precision_bits);
    mpfr_t one;
    mpfr_init2(one, 2);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_exp(e.lo_, one, MPFR_RNDD);
    mpfr_exp(e.hi_, one, MPFR_RNDU);
    mpfr_clear(one);
    return e;
}

Enclosure & Enclosure::operator*=(const Enclosure & other)
{
    mpfr_mul(lo_, lo_, other.lo_, MPFR_RNDD);
    mpfr_mul(hi_, hi_, other.hi_, MPFR_RNDU);
    return *this;
}

Enclosure & Enclosure::operator*=(const Rational & q)
{
    mpfr_mul_q(lo_, lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi_, hi_, q.get_mpq_t(), MPFR_RNDU);
    return *this;
}

Enclosure Enclosure::pow(unsigned long exponent) const
{
    Enclosure out(prec_);
    mpfr_pow_ui(out.lo_, lo_, exponent, MPFR_RNDD);
    mpfr_pow_ui(out.hi_, hi_, exponent, MPFR_RNDU);
    return out;
}

Enclosure Enclosure::reciprocal() const
{
    Enclosure out(prec_);
    mpfr_ui_div(out.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(out.hi_, 1, lo_, MPFR_RNDU);
    return out;
}

Rational Enclosure::lower() const
{
    Rational q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    return q;
}

Rational Enclosure::upper() const
{
    Rational q;
    mpfr_get_q(q.get_mpq_t(), hi_);
    return q;
}

int Enclosure::compare_lower(const Rational & q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()); }
int Enclosure::compare_upper(const Rational & q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()); }

namespace {

std::string format(const mpfr_t x, int digits, mpfr_rnd_t rnd)
{
    char * buf = nullptr;
    std::string fmt = "%." + std::to_string(digits) + (rnd == MPFR_RNDD ? "RDg" : "RUg");
    mpfr_asprintf(&buf, fmt.c_str(), x);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

} // namespace

std::string Enclosure::lower_string(int digits) const { return format(lo_, digits, MPFR_RNDD); }
std::string Enclosure::upper_string(int digits) const { return format(hi_, digits, MPFR_RNDU); }

const char * to_string(Verdict v)
{
    switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

// --- certified comparisons -------------------------------------------------

CertifiedComparison certify_leq_one(const std::function<Enclosure(long)> & evaluate, long max_bits)
{
    const Rational one(1);
    CertifiedComparison out;
    for (long bits = 64; bits <= max_bits; bits *= 2) {
        Enclosure v = evaluate(bits);
        out.lower = v.lower_string();
        out.upper = v.upper_string();
        out.precision_bits = bits;
        if (v.compare_upper(one) <= 0) {
            out.verdict = Verdict::Accept;
            return out;
        }
        if (v.compare_lower(one) > 0) {
            out.verdict = Verdict::Reject;
            return out;
        }
    }
    out.verdict = Verdict::Unknown;
    return out;
}

CertifiedComparison certify_e_power_times(unsigned long power, const Rational & q, long max_bits)
{
    if (sgn(q) < 0)
        fail(ErrorKind::Usage, "certify_e_power_times expects a nonnegative rational");
    if (sgn(q) == 0 || power == 0) {
        CertifiedComparison out;
        out.exact = true;
        out.verdict = q <= 1 ? Verdict::Accept : Verdict::Reject;
        out.lower = out.upper = to_string(q);
        return out;
    }
    // e^power * q with q > 0 rational is never exactly 1, so refinement terminates.
    return certify_leq_one(
        [&](long bits) {
            Enclosure v = Enclosure::euler(bits).pow(power);
            v *= q;
            return v;
        },
        max_bits);
}

// --- EulerThreshold --------------------------------------------------------

EulerThreshold::EulerThreshold(unsigned long d, unsigned long exponent, long max_bits) :
    d_(d), exponent_(exponent), max_bits_(max_bits)
{
    if (d == 0)
        fail(ErrorKind::Usage, "threshold base requires d >= 1");
    if (exponent_ == 0) {
        lo_ = hi_ = 1;
        bits_ = max_bits_;
    } else {
        refine(128);
    }
}

void EulerThreshold::refine(long bits)
{
    Enclosure base = Enclosure::euler(bits);
    base *= Rational(d_);
    Enclosure t = base.pow(exponent_).reciprocal();
    lo_ = t.lower();
    hi_ = t.upper();
    bits_ = bits;
}

bool EulerThreshold::below(const Rational & q)
{
    for (;;) {
        if (q < lo_)
            return true;
        if (q >= hi_)
            return false;
        if (bits_ * 2 > max_bits_)
            fail(ErrorKind::Resource, "threshold comparison undecided at " + std::to_string(bits_) + " bits");
        refine(bits_ * 2);
    }
}

std::string EulerThreshold::describe() const
{
    if (exponent_ == 0)
        return "1";
    return "(e*" + std::to_string(d_) + ")^-" + std::to_string(exponent_);
}

} // namespace sepshift
