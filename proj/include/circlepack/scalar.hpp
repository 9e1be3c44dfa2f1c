#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace circlepack {

// Working precision in bits for rounding inexact results. Thread local.
int working_precision();

class PrecisionScope {
public:
    explicit PrecisionScope(int bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    int saved_;
};

enum class Sign { negative = -1, zero = 0, positive = 1, unknown = 2 };

// A rational midpoint with a nonnegative error radius. err == 0 means exact.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : value_(v) {}  // NOLINT
    Scalar(int v) : value_(v) {}   // NOLINT
    Scalar(const mpq_class& v) : value_(v) { value_.canonicalize(); }  // NOLINT
    Scalar(const mpq_class& v, const mpq_class& err);

    static Scalar rational(long num, long den);
    static Scalar from_double(double d);
    // Accepts "p/q", "p", decimal and scientific notation. Throws ParseError.
    static Scalar parse(const std::string& text);

    const mpq_class& value() const { return value_; }
    const mpq_class& error() const { return err_; }
    bool exact() const { return sgn(err_) == 0; }
    mpq_class lo() const { return value_ - err_; }
    mpq_class hi() const { return value_ + err_; }
    double to_double() const { return value_.get_d(); }

    std::string str() const;
    std::string decimal(int digits = 12) const;

    // Certain sign of the interval; unknown when it straddles zero.
    Sign certain_sign() const;
    // Band rule: zero when |value| <= 2 err, else the sign of value.
    Sign band_sign() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    // Identity of the stored representation, not a numeric comparison.
    bool same_as(const Scalar& o) const { return value_ == o.value_ && err_ == o.err_; }

private:
    void round_inexact();
    mpq_class value_{0};
    mpq_class err_{0};
};

Scalar sqrt(const Scalar& x);
Scalar abs(const Scalar& x);
Scalar square(const Scalar& x);

mpq_class round_down(const mpq_class& v, int bits);
mpq_class round_up(const mpq_class& v, int bits);
mpq_class round_nearest(const mpq_class& v, int bits);

// Rational that lies below every value of the interval, on a 2^-bits grid.
mpq_class lower_rational(const Scalar& x, int bits);
mpq_class upper_rational(const Scalar& x, int bits);

struct HeronResult {
    mpq_class root;
    int iterations = 0;
    std::vector<mpq_class> iterates;
};

// Heron iteration from above. Stops when x - a/x <= tol, so root - sqrt(a) <= tol.
HeronResult heron_sqrt(const mpq_class& a, const mpq_class& tol, const mpq_class& seed = 1);

// Pi truncated to 50 significant digits, and a bound on its error.
const mpq_class& pi_rational();
const mpq_class& pi_error();

}  // namespace circlepack
