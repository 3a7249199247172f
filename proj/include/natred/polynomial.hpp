#pragma once

#include "natred/errors.hpp"
#include "natred/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace natred {

// Dense univariate polynomial over Q, coefficients from low to high degree.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly x();

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    Rational leading() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly monic() const;
    Poly derivative() const;
    Rational eval(const Rational& t) const;
    std::string to_string() const;

    // Quotient and remainder.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    static Poly gcd(const Poly& a, const Poly& b);  // monic
    // s*a + t*b = gcd(a,b), gcd monic.
    static Poly ext_gcd(const Poly& a, const Poly& b, Poly& s, Poly& t);

    Poly squarefree_part() const;
    // Distinct rational roots, increasing.
    std::vector<Rational> rational_roots() const;
    // Number of positive / negative real roots, valid when all roots are real.
    int sign_changes() const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Raised by number-field inversion when the modulus turns out to be reducible;
// factor is a nontrivial monic factor of the modulus.
class ZeroDivisorError : public Error {
public:
    explicit ZeroDivisorError(Poly factor)
        : Error(ErrorKind::ZeroDivisor, "modulus splits as " + factor.to_string()),
          factor_(std::move(factor)) {}
    const Poly& factor() const { return factor_; }

private:
    Poly factor_;
};

struct NumberField {
    Poly modulus;  // monic, degree >= 2, no rational roots
};

// Element of Q[x]/(modulus). A null field pointer denotes a rational constant.
class Alg {
public:
    Alg() = default;
    Alg(int v) : c_{Rational(v)} { trim(); }
    Alg(const Rational& v) : c_{v} { trim(); }
    Alg(std::shared_ptr<const NumberField> k, std::vector<Rational> coeffs);
    static Alg generator(std::shared_ptr<const NumberField> k);

    const std::shared_ptr<const NumberField>& field() const { return k_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational rational_value() const { return c_.empty() ? Rational(0) : c_[0]; }

    Alg operator+(const Alg& o) const;
    Alg operator-(const Alg& o) const;
    Alg operator-() const;
    Alg operator*(const Alg& o) const;
    Alg operator/(const Alg& o) const;
    Alg& operator+=(const Alg& o) { return *this = *this + o; }
    Alg& operator-=(const Alg& o) { return *this = *this - o; }
    Alg& operator*=(const Alg& o) { return *this = *this * o; }
    Alg& operator/=(const Alg& o) { return *this = *this / o; }
    bool operator==(const Alg& o) const { return c_ == o.c_; }
    bool operator!=(const Alg& o) const { return !(*this == o); }
    bool operator<(const Alg& o) const;  // deterministic total order on representations

    Alg inverse() const;
    std::string to_string() const;

private:
    void trim();
    void reduce();
    std::shared_ptr<const NumberField> k_;
    std::vector<Rational> c_;
};

inline bool is_zero(const Alg& a) { return a.is_zero(); }

}  // namespace natred
