#include "circlepack/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <vector>

#include "circlepack/errors.hpp"

namespace circlepack {

namespace {

thread_local int g_precision = 192;

mpz_class pow2(int bits) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    return p;
}

mpq_class scaled(const mpq_class& v, int bits, void (*div)(mpz_ptr, mpz_srcptr, mpz_srcptr)) {
    mpz_class num = v.get_num() * pow2(bits);
    mpz_class q;
    div(q.get_mpz_t(), num.get_mpz_t(), v.get_den_mpz_t());
    mpq_class r(q, pow2(bits));
    r.canonicalize();
    return r;
}

bool is_perfect_square(const mpq_class& v) {
    return sgn(v) >= 0 && mpz_perfect_square_p(v.get_num_mpz_t()) != 0 &&
           mpz_perfect_square_p(v.get_den_mpz_t()) != 0;
}

mpq_class exact_root(const mpq_class& v) {
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), v.get_den_mpz_t());
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

// Rational x >= sqrt(a), a > 0, within about 2^-bits relative of the root.
mpq_class sqrt_upper(const mpq_class& a, int bits) {
    mpf_class f(a, static_cast<mp_bitcnt_t>(bits + 64));
    mpf_class s = sqrt(f);
    mpq_class x(s);
    if (sgn(x) <= 0) x = 1;
    x = (x + a / x) / 2;
    return round_up(x, bits + 8);
}

}  // namespace

int working_precision() { return g_precision; }

PrecisionScope::PrecisionScope(int bits) : saved_(g_precision) { g_precision = bits; }
PrecisionScope::~PrecisionScope() { g_precision = saved_; }

mpq_class round_down(const mpq_class& v, int bits) { return scaled(v, bits, mpz_fdiv_q); }
mpq_class round_up(const mpq_class& v, int bits) { return scaled(v, bits, mpz_cdiv_q); }

mpq_class round_nearest(const mpq_class& v, int bits) {
    mpq_class half(1, 2);
    mpq_class shifted = v + half / mpq_class(pow2(bits));
    return round_down(shifted, bits);
}

mpq_class lower_rational(const Scalar& x, int bits) { return round_down(x.lo(), bits); }
mpq_class upper_rational(const Scalar& x, int bits) { return round_up(x.hi(), bits); }

Scalar::Scalar(const mpq_class& v, const mpq_class& err) : value_(v), err_(abs(err)) {
    value_.canonicalize();
    err_.canonicalize();
    round_inexact();
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::from_double(double d) { return Scalar(mpq_class(d)); }

Scalar Scalar::parse(const std::string& raw) {
    std::string t;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw ParseError("empty scalar");
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        auto digits_ok = [](const std::string& s, bool allow_sign) {
            if (s.empty()) return false;
            size_t i = 0;
            if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
            return true;
        };
        std::string num = t.substr(0, slash), den = t.substr(slash + 1);
        if (!digits_ok(num, true) || !digits_ok(den, false)) throw ParseError("bad rational '" + raw + "'");
        if (num[0] == '+') num = num.substr(1);
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw ParseError("zero denominator in '" + raw + "'");
        mpq_class q(n, d);
        q.canonicalize();
        return Scalar(q);
    }
    size_t i = 0;
    bool neg = false;
    if (t[i] == '-' || t[i] == '+') neg = t[i++] == '-';
    std::string intpart, frac;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) intpart.push_back(t[i++]);
    if (i < t.size() && t[i] == '.') {
        ++i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) frac.push_back(t[i++]);
    }
    if (intpart.empty() && frac.empty()) throw ParseError("bad number '" + raw + "'");
    long exp10 = 0;
    if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < t.size() && (t[i] == '-' || t[i] == '+')) eneg = t[i++] == '-';
        std::string e;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) e.push_back(t[i++]);
        if (e.empty() || e.size() > 6) throw ParseError("bad exponent in '" + raw + "'");
        exp10 = std::stol(e) * (eneg ? -1 : 1);
    }
    if (i != t.size()) throw ParseError("trailing characters in '" + raw + "'");
    mpz_class mant((intpart.empty() ? "0" : intpart) + frac, 10);
    exp10 -= static_cast<long>(frac.size());
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 < 0 ? mpq_class(mant, p10) : mpq_class(mant * p10);
    q.canonicalize();
    if (neg) q = -q;
    return Scalar(q);
}

std::string Scalar::str() const { return value_.get_str(); }

std::string Scalar::decimal(int digits) const {
    mpf_class f(value_, 512);
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    return std::string(buf.data());
}

Sign Scalar::certain_sign() const {
    if (exact()) {
        int s = sgn(value_);
        return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
    }
    if (sgn(lo()) > 0) return Sign::positive;
    if (sgn(hi()) < 0) return Sign::negative;
    return Sign::unknown;
}

Sign Scalar::band_sign() const {
    if (!exact() && abs(value_) <= 2 * err_) return Sign::zero;
    int s = sgn(value_);
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

void Scalar::round_inexact() {
    if (sgn(err_) == 0) return;
    int bits = g_precision;
    mpq_class r = round_nearest(value_, bits);
    err_ += abs(value_ - r);
    value_ = r;
    err_ = round_up(err_, bits);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.value_ = -r.value_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    value_ += o.value_;
    err_ += o.err_;
    round_inexact();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    value_ -= o.value_;
    err_ += o.err_;
    round_inexact();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (exact() && o.exact()) {
        value_ *= o.value_;
        return *this;
    }
    mpq_class e = abs(value_) * o.err_ + abs(o.value_) * err_ + err_ * o.err_;
    value_ *= o.value_;
    err_ = e;
    round_inexact();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    mpq_class den = abs(o.value_) - o.err_;
    if (sgn(den) <= 0) throw DomainError("division by an interval containing zero");
    if (exact() && o.exact()) {
        value_ /= o.value_;
        return *this;
    }
    mpq_class q = value_ / o.value_;
    mpq_class e = (err_ + abs(q) * o.err_) / den;
    value_ = q;
    err_ = e;
    round_inexact();
    return *this;
}

Scalar abs(const Scalar& x) { return sgn(x.value()) < 0 ? -x : x; }

Scalar square(const Scalar& x) { return x * x; }

Scalar sqrt(const Scalar& x) {
    if (sgn(x.hi()) < 0) throw DomainError("square root of a negative value");
    if (x.exact()) {
        if (sgn(x.value()) == 0) return Scalar(0);
        if (is_perfect_square(x.value())) return Scalar(exact_root(x.value()));
    }
    int bits = working_precision();
    mpq_class lo = x.lo();
    if (sgn(lo) < 0) lo = 0;
    mpq_class hi = x.hi();
    mpq_class upper = sqrt_upper(hi, bits);
    mpq_class lower = 0;
    if (sgn(lo) > 0) lower = round_down(lo / sqrt_upper(lo, bits), bits + 8);
    return Scalar((upper + lower) / 2, (upper - lower) / 2);
}

HeronResult heron_sqrt(const mpq_class& a, const mpq_class& tol, const mpq_class& seed) {
    if (sgn(a) < 0) throw DomainError("heron_sqrt of a negative value");
    if (sgn(tol) <= 0) throw DomainError("heron_sqrt tolerance must be positive");
    if (sgn(seed) <= 0) throw DomainError("heron_sqrt seed must be positive");
    HeronResult out;
    if (sgn(a) == 0) {
        out.root = 0;
        return out;
    }
    // iterates are rounded up onto a grid well below tol
    int bits = 4;
    while (mpq_class(1, 1) / mpq_class(pow2(bits)) > tol / 16) ++bits;
    mpq_class x = seed;
    auto done = [&](const mpq_class& v) { return v * v >= a && v - a / v <= tol; };
    while (!done(x)) {
        x = round_up((x + a / x) / 2, bits);
        ++out.iterations;
        out.iterates.push_back(x);
        if (out.iterations > 4096) throw ContractViolation("heron_sqrt failed to converge");
    }
    out.root = x;
    return out;
}

const mpq_class& pi_rational() {
    static const mpq_class pi = [] {
        mpq_class q(mpz_class("31415926535897932384626433832795028841971693993751"),
                    mpz_class("10000000000000000000000000000000000000000000000000"));
        q.canonicalize();
        return q;
    }();
    return pi;
}

const mpq_class& pi_error() {
    static const mpq_class e(mpz_class(1), mpz_class("1000000000000000000000000000000000000000000000000"));
    return e;
}

}  // namespace circlepack
