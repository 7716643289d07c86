#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "plab/symbols.hpp"

namespace plab {

// gmpxx keeps mpq_class canonical: gcd(num, den) = 1, den > 0, zero is 0/1.
using BigRational = mpq_class;
using BigInteger = mpz_class;

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by the zero polynomial") {}
};

struct Monomial {
    std::array<std::uint16_t, kMaxSymbols> e{};
    std::uint32_t deg = 0;

    std::uint16_t operator[](std::size_t i) const { return e[i]; }
    bool divides(const Monomial& other) const;
    bool is_one() const { return deg == 0; }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.deg == b.deg && a.e == b.e; }
    // graded-lexicographic in table order
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

Monomial operator*(const Monomial& a, const Monomial& b);
Monomial operator/(const Monomial& a, const Monomial& b);  // requires b | a
Monomial monomial_gcd(const Monomial& a, const Monomial& b);
Monomial monomial_var(std::size_t index, std::uint32_t power = 1);

struct Term {
    Monomial m;
    BigRational c;
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(TablePtr table) : table_(std::move(table)) {}
    Polynomial(TablePtr table, const BigRational& c);

    static Polynomial variable(TablePtr table, std::size_t index);
    static Polynomial variable(TablePtr table, const std::string& name);
    static Polynomial from_terms(TablePtr table, std::vector<Term> terms);

    const TablePtr& table() const { return table_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    bool is_monomial() const { return terms_.size() == 1; }
    BigRational constant_value() const;
    const Term& leading() const { return terms_.front(); }
    std::uint32_t total_degree() const;
    std::uint32_t degree_in(std::size_t index) const;
    bool depends_on(std::size_t index) const;
    bool depends_on_any(const std::vector<std::size_t>& indices) const;
    BigRational coefficient(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    Polynomial scaled(const BigRational& c) const;
    Polynomial times_monomial(const Monomial& m, const BigRational& c) const;
    Polynomial pow(unsigned n) const;
    Polynomial derivative(std::size_t index) const;

    // f | *this; nullopt when the division leaves a remainder
    std::optional<Polynomial> exact_divide(const Polynomial& f) const;
    std::pair<Polynomial, Polynomial> divide(const Polynomial& f) const;

    // integer content with the sign of the leading coefficient; *this / content is primitive with lc > 0
    BigRational content() const;
    Monomial monomial_content() const;
    Polynomial primitive() const;

    // splits into coefficient polynomials keyed by the exponents of the selected symbols
    std::map<Monomial, Polynomial, std::greater<>> collect(const std::vector<std::size_t>& indices) const;

    double evaluate(const std::vector<double>& point) const;
    BigRational evaluate(const std::vector<BigRational>& point) const;
    Polynomial evaluate_partial(std::size_t index, const BigRational& value) const;

    std::string str() const;

private:
    void check_table(const Polynomial& o) const;
    void normalize_sorted();

    TablePtr table_;
    std::vector<Term> terms_;  // strictly decreasing monomials, nonzero coefficients
};

Polynomial pow_cached(const Polynomial& base, unsigned n, std::vector<Polynomial>& cache);

}  // namespace plab
