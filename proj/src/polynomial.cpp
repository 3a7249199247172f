#include "natred/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace natred {

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
Poly Poly::x() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

void Poly::trim() {
    while (!c_.empty() && natred::is_zero(c_.back())) c_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[i];
}

Rational Poly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) + o.coeff(int(i));
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) - o.coeff(int(i));
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
}

Poly Poly::monic() const {
    if (c_.empty()) return *this;
    return scaled(Rational(1) / c_.back());
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(r));
}

Rational Poly::eval(const Rational& t) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (natred::is_zero(c_[i])) continue;
        Rational a = c_[i];
        if (!first) os << (sgn(a) < 0 ? " - " : " + ");
        else if (sgn(a) < 0) os << "-";
        Rational m = abs(a);
        if (i == 0 || m != 1) os << m.get_str();
        if (i > 0) {
            if (m != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    require(!b.is_zero(), ErrorKind::Internal, "polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    int db = b.degree();
    std::vector<Rational> quo(std::max(0, a.degree() - db + 1));
    Rational lb = b.leading();
    for (int d = a.degree(); d >= db; --d) {
        Rational f = rem[d] / lb;
        if (natred::is_zero(f)) continue;
        quo[d - db] = f;
        for (int k = 0; k <= db; ++k) rem[d - db + k] -= f * b.c_[k];
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly q, r;
        divmod(x, y, q, r);
        x = y;
        y = r;
    }
    return x.monic();
}

Poly Poly::ext_gcd(const Poly& a, const Poly& b, Poly& s, Poly& t) {
    Poly r0 = a, r1 = b;
    Poly s0 = constant(1), s1;
    Poly t0, t1 = constant(1);
    while (!r1.is_zero()) {
        Poly q, r;
        divmod(r0, r1, q, r);
        Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    Rational lc = r0.leading();
    s = s0.scaled(Rational(1) / lc);
    t = t0.scaled(Rational(1) / lc);
    return r0.monic();
}

Poly Poly::squarefree_part() const {
    if (degree() <= 0) return monic();
    Poly g = gcd(*this, derivative());
    Poly q, r;
    divmod(*this, g, q, r);
    return q.monic();
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> small, large;
    if (n == 0) return {};
    // Desk-scale inputs keep these integers small; beyond the cap only divisors up to
    // the cap are tried, which can only lose rational roots, never invent them.
    const mpz_class cap(2000000);
    for (mpz_class d = 1; d * d <= n && d <= cap; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    std::reverse(large.begin(), large.end());
    small.insert(small.end(), large.begin(), large.end());
    return small;
}

}  // namespace

std::vector<Rational> Poly::rational_roots() const {
    std::set<Rational> roots;
    if (degree() <= 0) return {};
    std::vector<Rational> c = c_;
    size_t shift = 0;
    while (shift < c.size() && natred::is_zero(c[shift])) ++shift;
    if (shift > 0) roots.insert(Rational(0));
    std::vector<Rational> rest(c.begin() + shift, c.end());
    if (rest.size() >= 2) {
        mpz_class l = 1;
        for (auto& v : rest) l = lcm(l, v.get_den());
        std::vector<mpz_class> ic;
        for (auto& v : rest) ic.push_back(mpz_class(v * Rational(l)));
        Poly p(rest);
        for (const auto& num : divisors(ic.front()))
            for (const auto& den : divisors(ic.back())) {
                for (int s : {1, -1}) {
                    Rational cand(mpz_class(num * s), den);
                    cand.canonicalize();
                    if (natred::is_zero(p.eval(cand))) roots.insert(cand);
                }
            }
    }
    return std::vector<Rational>(roots.begin(), roots.end());
}

int Poly::sign_changes() const {
    int changes = 0, last = 0;
    for (const auto& v : c_) {
        int s = sgn(v);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// ---------------------------------------------------------------- Alg

Alg::Alg(std::shared_ptr<const NumberField> k, std::vector<Rational> coeffs)
    : k_(std::move(k)), c_(std::move(coeffs)) {
    reduce();
}

Alg Alg::generator(std::shared_ptr<const NumberField> k) {
    return Alg(std::move(k), {Rational(0), Rational(1)});
}

void Alg::trim() {
    while (!c_.empty() && natred::is_zero(c_.back())) c_.pop_back();
}

void Alg::reduce() {
    trim();
    if (!k_) {
        require(c_.size() <= 1, ErrorKind::Internal, "non-constant element without a field");
        return;
    }
    const Poly& m = k_->modulus;
    if (static_cast<int>(c_.size()) > m.degree()) {
        Poly q, r;
        Poly::divmod(Poly(c_), m, q, r);
        c_ = r.coeffs();
    }
    trim();
}

namespace {
const std::shared_ptr<const NumberField>& pick(const std::shared_ptr<const NumberField>& a,
                                               const std::shared_ptr<const NumberField>& b) {
    if (a && b && a != b && !(a->modulus == b->modulus))
        throw Error(ErrorKind::Internal, "mixing elements of different number fields");
    return a ? a : b;
}
}  // namespace

Alg Alg::operator+(const Alg& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] += c_[i];
        if (i < o.c_.size()) r[i] += o.c_[i];
    }
    return Alg(pick(k_, o.k_), std::move(r));
}

Alg Alg::operator-(const Alg& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] += c_[i];
        if (i < o.c_.size()) r[i] -= o.c_[i];
    }
    return Alg(pick(k_, o.k_), std::move(r));
}

Alg Alg::operator-() const {
    Alg r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Alg Alg::operator*(const Alg& o) const {
    if (c_.empty() || o.c_.empty()) return Alg();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Alg(pick(k_, o.k_), std::move(r));
}

Alg Alg::inverse() const {
    require(!c_.empty(), ErrorKind::Internal, "division by zero in number field");
    if (c_.size() == 1) {
        Alg r = *this;
        r.c_[0] = Rational(1) / c_[0];
        return r;
    }
    Poly s, t;
    Poly g = Poly::ext_gcd(Poly(c_), k_->modulus, s, t);
    if (g.degree() > 0) throw ZeroDivisorError(g);
    return Alg(k_, s.coeffs());
}

Alg Alg::operator/(const Alg& o) const {
    Alg inv = o.inverse();
    return *this * inv;
}

bool Alg::operator<(const Alg& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string Alg::to_string() const {
    if (c_.size() <= 1) return natred::to_string(rational_value());
    std::string s = Poly(c_).to_string();
    for (auto& ch : s)
        if (ch == 'x') ch = 'a';
    return s;
}

}  // namespace natred
