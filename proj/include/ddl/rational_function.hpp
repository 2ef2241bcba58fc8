#pragma once

#include "ddl/polynomial.hpp"

#include <optional>
#include <string>

namespace ddl {

/// Element of Q(s): reduced fraction of polynomials, monic denominator.
/// Zero is canonically 0/1.
class RationalFunction {
public:
    RationalFunction() : den_(Polynomial(Rational(1))) {}
    RationalFunction(Rational c) : num_(Polynomial(std::move(c))), den_(Polynomial(Rational(1))) {}
    RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial(Rational(1))) {}
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RationalFunction x() { return RationalFunction(Polynomial::x()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    /// Value as a constant; only valid when is_constant().
    Rational constant_value() const {
        if (!is_constant()) throw std::domain_error("RationalFunction: not constant");
        if (num_.is_zero()) return Rational(0);
        return num_[0] / den_[0];
    }

    bool defined_at(const Rational& s) const { return den_.eval(s) != 0; }

    Rational eval(const Rational& s) const {
        Rational d = den_.eval(s);
        if (d == 0) throw std::domain_error("RationalFunction::eval: pole at " + to_string(s));
        return num_.eval(s) / d;
    }

    RationalFunction derivative() const {
        // (n/d)' = (n'd - nd') / d^2
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    RationalFunction inverse() const {
        if (is_zero()) throw std::domain_error("RationalFunction: inverse of zero");
        return RationalFunction(den_, num_);
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction operator-() const {
        RationalFunction r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
    RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
    RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str(const std::string& var = "s") const {
        if (is_polynomial()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial(Rational(1));
            return;
        }
        Polynomial g = Polynomial::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Polynomial::divmod(num_, g).first;
            den_ = Polynomial::divmod(den_, g).first;
        }
        Rational lead = den_.leading();
        if (lead != 1) {
            Rational inv = Rational(1) / lead;
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }

    Polynomial num_;
    Polynomial den_;
};

}  // namespace ddl
