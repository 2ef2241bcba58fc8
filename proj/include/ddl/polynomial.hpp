#pragma once

#include "ddl/rational.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ddl {

/// Univariate polynomial over Q, dense coefficients in ascending degree.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Rational c) {
        if (c != 0) coeffs_.push_back(std::move(c));
    }
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial x() { return Polynomial(std::vector<Rational>{Rational(0), Rational(1)}); }

    static Polynomial monomial(const Rational& c, int deg) {
        if (c == 0) return {};
        std::vector<Rational> v(static_cast<std::size_t>(deg) + 1);
        v.back() = c;
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const Rational& operator[](std::size_t i) const {
        static const Rational zero(0);
        return i < coeffs_.size() ? coeffs_[i] : zero;
    }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    const Rational& leading() const {
        static const Rational zero(0);
        return coeffs_.empty() ? zero : coeffs_.back();
    }

    Rational eval(const Rational& s) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
        return Polynomial(std::move(v));
    }
    Polynomial operator-() const {
        std::vector<Rational> v(coeffs_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = -coeffs_[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        if (c == 0) return {};
        std::vector<Rational> v(p.coeffs_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * p.coeffs_[i];
        return Polynomial(std::move(v));
    }

    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division; divisor must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw std::domain_error("Polynomial::divmod: division by zero polynomial");
        Polynomial r = a, q;
        std::vector<Rational> qc(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0, Rational(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Rational c = r.leading() / b.leading();
            int d = r.degree() - b.degree();
            qc[static_cast<std::size_t>(d)] = c;
            r -= monomial(c, d) * b;
        }
        return {Polynomial(std::move(qc)), r};
    }

    /// Monic gcd.
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Polynomial monic() const {
        if (is_zero()) return {};
        return (Rational(1) / leading()) * *this;
    }

    /// "c0 + c1*s + c2*s^2" with rational coefficients; zero terms dropped.
    std::string str(const std::string& var = "s") const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const Rational& c = coeffs_[i];
            if (c == 0) continue;
            if (!first) out << (c > 0 ? " + " : " - ");
            else if (c < 0) out << "-";
            Rational a = rat_abs(c);
            if (i == 0) out << to_string(a);
            else {
                if (a != 1) out << to_string(a) << "*";
                out << var;
                if (i > 1) out << "^" << i;
            }
            first = false;
        }
        return out.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

/// Parses sums of terms "c", "c*s^k", "s^k", "-s", ... (variable "s" or "t").
inline std::optional<Polynomial> parse_polynomial(std::string_view text) {
    std::vector<Rational> coeffs;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
    auto add_term = [&](const Rational& c, int deg) {
        if (coeffs.size() < static_cast<std::size_t>(deg) + 1) coeffs.resize(static_cast<std::size_t>(deg) + 1, Rational(0));
        coeffs[static_cast<std::size_t>(deg)] += c;
    };
    skip_ws();
    if (i >= text.size()) return std::nullopt;
    bool expect_term = true;
    int pending_sign = 1;
    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        char ch = text[i];
        if (ch == '+' || ch == '-') {
            if (expect_term && ch == '-') pending_sign = -pending_sign;
            else if (expect_term && ch == '+') { /* unary plus */ }
            else expect_term = true, pending_sign = (ch == '-') ? -1 : 1;
            ++i;
            continue;
        }
        if (!expect_term) return std::nullopt;
        // coefficient (optional), then optional '*', then optional variable with power
        Rational coeff(1);
        bool saw_coeff = false;
        if (ch >= '0' && ch <= '9') {
            std::size_t j = i;
            while (j < text.size() && ((text[j] >= '0' && text[j] <= '9') || text[j] == '/')) ++j;
            auto c = parse_rational(text.substr(i, j - i));
            if (!c) return std::nullopt;
            coeff = *c;
            saw_coeff = true;
            i = j;
            skip_ws();
            if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        }
        int deg = 0;
        if (i < text.size() && (text[i] == 's' || text[i] == 't' || text[i] == 'x')) {
            ++i;
            deg = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                std::size_t j = i;
                while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
                if (j == i) return std::nullopt;
                deg = std::stoi(std::string(text.substr(i, j - i)));
                i = j;
            }
        } else if (!saw_coeff) {
            return std::nullopt;
        }
        add_term(Rational(pending_sign) * coeff, deg);
        pending_sign = 1;
        expect_term = false;
    }
    if (expect_term) return std::nullopt;
    return Polynomial(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Sturm sequences: exact real-root counting on closed intervals.
// ---------------------------------------------------------------------------

inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    std::vector<Polynomial> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    Polynomial d = p.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d);
    while (true) {
        auto [q, r] = Polynomial::divmod(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

inline int sturm_sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
    int changes = 0, prev = 0;
    for (const auto& p : seq) {
        int s = sign(p.eval(x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

/// Number of distinct real roots of p in [a, b]. p must be nonzero.
inline int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw std::domain_error("count_real_roots: zero polynomial");
    // Work with the squarefree part so endpoint roots and multiplicities are safe.
    Polynomial sf = p;
    Polynomial g = Polynomial::gcd(p, p.derivative());
    if (g.degree() > 0) sf = Polynomial::divmod(p, g).first;
    auto seq = sturm_sequence(sf);
    int inner = sturm_sign_changes(seq, a) - sturm_sign_changes(seq, b);
    // Sturm counts roots in (a, b]; add a if it is a root.
    if (sf.eval(a) == 0) ++inner;
    return inner;
}

/// All rational roots of p (via the rational root theorem). p nonzero.
inline std::vector<Rational> rational_roots(const Polynomial& p) {
    std::vector<Rational> roots;
    if (p.is_zero() || p.is_constant()) return roots;
    // Clear denominators to integer coefficients.
    Int denom_lcm = 1;
    for (const auto& c : p.coeffs()) denom_lcm = boost::multiprecision::lcm(denom_lcm, den(c));
    std::vector<Int> ic(p.coeffs().size());
    for (std::size_t i = 0; i < ic.size(); ++i) ic[i] = num(p.coeffs()[i]) * (denom_lcm / den(p.coeffs()[i]));
    std::size_t lo = 0;
    while (ic[lo] == 0) ++lo;  // factor out powers of s (root 0)
    if (lo > 0) roots.push_back(Rational(0));
    Int a0 = int_abs(ic[lo]), an = int_abs(ic.back());
    auto divisors = [](const Int& v) {
        std::vector<Int> ds;
        for (Int d = 1; d * d <= v; ++d)
            if (v % d == 0) {
                ds.push_back(d);
                if (d * d != v) ds.push_back(v / d);
            }
        return ds;
    };
    for (const Int& pnum : divisors(a0))
        for (const Int& qden : divisors(an))
            for (int s : {1, -1}) {
                Rational cand(s * pnum, qden);
                if (p.eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace ddl
