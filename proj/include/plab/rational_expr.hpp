#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plab/polynomial.hpp"

namespace plab {

struct DivisionByZeroExpr : std::domain_error {
    DivisionByZeroExpr() : std::domain_error("denominator is identically zero") {}
};

// num / prod(factor^exponent). Factors are primitive, have a positive leading
// coefficient and are never constant; any scalar lives in num. Equality is by
// cross-multiplication, so the representation need not be in lowest terms.
class RationalExpr {
public:
    struct Factor {
        Polynomial f;
        unsigned e;
    };

    RationalExpr() = default;
    RationalExpr(Polynomial num);  // NOLINT(google-explicit-constructor)
    RationalExpr(TablePtr table, const BigRational& c);
    static RationalExpr quotient(const Polynomial& num, const Polynomial& den);
    static RationalExpr symbol(TablePtr table, const std::string& name);

    const TablePtr& table() const { return num_.table(); }
    const Polynomial& num() const { return num_; }
    const std::vector<Factor>& den_factors() const { return den_; }
    Polynomial den() const;
    bool is_polynomial() const { return den_.empty(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    // no denominator factor involves any of the given symbols
    bool denominator_free_of(const std::vector<std::size_t>& indices) const;

    RationalExpr operator-() const;
    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
    RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
    RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
    RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
    RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }
    RationalExpr pow(int n) const;
    RationalExpr inverse() const;
    RationalExpr scaled(const BigRational& c) const;

    RationalExpr derivative(std::size_t index) const;

    // divides out any factor that also divides the numerator
    void cancel();
    // splits denominator factors by the given polynomials where they divide exactly
    void refine_factors(const std::vector<Polynomial>& primes);

    double evaluate(const std::vector<double>& point) const;
    BigRational evaluate(const std::vector<BigRational>& point) const;

    std::string str() const;

    // Adds f^e to the denominator, splitting off scalar and monomial content.
    void divide_by(const Polynomial& f, unsigned e = 1);

private:
    Polynomial num_;
    std::vector<Factor> den_;
};

bool rat_equal(const RationalExpr& a, const RationalExpr& b);
// Numerator of a - b over a common denominator; zero iff rat_equal(a, b).
Polynomial rat_residual(const RationalExpr& a, const RationalExpr& b);

// Simultaneous substitution. bindings[i] is the image of source symbol i, in the
// target table; an unset optional leaves a symbol that must not occur.
class Bindings {
public:
    Bindings(TablePtr source, TablePtr target);
    // identity on symbols sharing a name in both tables
    static Bindings by_name(TablePtr source, TablePtr target);

    Bindings& set(std::size_t index, RationalExpr value);
    Bindings& set(const std::string& name, RationalExpr value);
    const std::optional<RationalExpr>& get(std::size_t index) const { return images_.at(index); }
    bool has(std::size_t index) const { return images_.at(index).has_value(); }
    const TablePtr& source() const { return source_; }
    const TablePtr& target() const { return target_; }
    // extra polynomials used to split and cancel denominators after substitution
    Bindings& add_prime(Polynomial p);
    const std::vector<Polynomial>& primes() const { return primes_; }

private:
    TablePtr source_, target_;
    std::vector<std::optional<RationalExpr>> images_;
    std::vector<Polynomial> primes_;
};

RationalExpr substitute(const Polynomial& p, const Bindings& b);
RationalExpr substitute(const RationalExpr& e, const Bindings& b);

}  // namespace plab
