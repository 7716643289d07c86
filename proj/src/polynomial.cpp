#include "plab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace plab {

bool Monomial::divides(const Monomial& other) const {
    if (deg > other.deg) return false;
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
        if (e[i] > other.e[i]) return false;
    return true;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg <=> b.deg;
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] <=> b.e[i];
    return std::strong_ordering::equal;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
        std::uint32_t s = std::uint32_t(a.e[i]) + b.e[i];
        if (s > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("monomial exponent overflow");
        r.e[i] = static_cast<std::uint16_t>(s);
    }
    r.deg = a.deg + b.deg;
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
        if (b.e[i] > a.e[i]) throw std::logic_error("monomial division is not exact");
        r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    }
    r.deg = a.deg - b.deg;
    return r;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
        r.e[i] = std::min(a.e[i], b.e[i]);
        r.deg += r.e[i];
    }
    return r;
}

Monomial monomial_var(std::size_t index, std::uint32_t power) {
    if (index >= kMaxSymbols) throw std::out_of_range("symbol index");
    if (power > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("monomial exponent overflow");
    Monomial m;
    m.e[index] = static_cast<std::uint16_t>(power);
    m.deg = power;
    return m;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto cmp = a[i].m <=> b[j].m;
        if (cmp > 0) {
            out.push_back(a[i++]);
        } else if (cmp < 0) {
            out.push_back(b[j++]);
            if (subtract) out.back().c = -out.back().c;
        } else {
            BigRational c = subtract ? BigRational(a[i].c - b[j].c) : BigRational(a[i].c + b[j].c);
            if (sgn(c) != 0) out.push_back({a[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) {
        out.push_back(b[j]);
        if (subtract) out.back().c = -out.back().c;
    }
    return out;
}

std::vector<Term> merge_range(std::vector<std::vector<Term>>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return std::move(parts[lo]);
    std::size_t mid = (lo + hi) / 2;
    auto left = merge_range(parts, lo, mid);
    auto right = merge_range(parts, mid, hi);
    return merge_terms(left, right, false);
}

std::string rational_str(const BigRational& c) { return c.get_str(); }

}  // namespace

Polynomial::Polynomial(TablePtr table, const BigRational& c) : table_(std::move(table)) {
    if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(TablePtr table, std::size_t index) {
    if (index >= table->size()) throw std::out_of_range("symbol index");
    Polynomial p(std::move(table));
    p.terms_.push_back({monomial_var(index), BigRational(1)});
    return p;
}

Polynomial Polynomial::variable(TablePtr table, const std::string& name) {
    std::size_t i = table->index(name);
    return variable(std::move(table), i);
}

Polynomial Polynomial::from_terms(TablePtr table, std::vector<Term> terms) {
    Polynomial p(std::move(table));
    p.terms_ = std::move(terms);
    p.normalize_sorted();
    return p;
}

void Polynomial::normalize_sorted() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().m == t.m) {
            out.back().c += t.c;
        } else {
            if (!out.empty() && sgn(out.back().c) == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && sgn(out.back().c) == 0) out.pop_back();
    terms_ = std::move(out);
}

void Polynomial::check_table(const Polynomial& o) const {
    if (table_ != o.table_) throw TableMismatch();
}

BigRational Polynomial::constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.empty() ? BigRational(0) : terms_[0].c;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().m.deg; }

std::uint32_t Polynomial::degree_in(std::size_t index) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.m.e[index]);
    return d;
}

bool Polynomial::depends_on(std::size_t index) const {
    for (const auto& t : terms_)
        if (t.m.e[index]) return true;
    return false;
}

bool Polynomial::depends_on_any(const std::vector<std::size_t>& indices) const {
    for (auto i : indices)
        if (depends_on(i)) return true;
    return false;
}

BigRational Polynomial::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) { return t.m > k; });
    if (it != terms_.end() && it->m == m) return it->c;
    return 0;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_table(o);
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_table(o);
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_table(b);
    Polynomial r(a.table_);
    if (a.is_zero() || b.is_zero()) return r;
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& large = a.size() <= b.size() ? b : a;
    std::vector<std::vector<Term>> parts;
    parts.reserve(small.size());
    for (const auto& s : small.terms_) {
        std::vector<Term> part;
        part.reserve(large.size());
        for (const auto& l : large.terms_) part.push_back({s.m * l.m, s.c * l.c});
        parts.push_back(std::move(part));
    }
    r.terms_ = merge_range(parts, 0, parts.size());
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.table_ != b.table_) throw TableMismatch();
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

Polynomial Polynomial::scaled(const BigRational& c) const {
    Polynomial r(table_);
    if (sgn(c) == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.c *= c;
    return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const BigRational& c) const {
    Polynomial r(table_);
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial result(table_, BigRational(1));
    Polynomial base = *this;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return result;
}

Polynomial pow_cached(const Polynomial& base, unsigned n, std::vector<Polynomial>& cache) {
    if (cache.empty()) cache.emplace_back(base.table(), BigRational(1));
    while (cache.size() <= n) cache.push_back(cache.back() * base);
    return cache[n];
}

Polynomial Polynomial::derivative(std::size_t index) const {
    if (!table_ || index >= table_->size()) throw std::out_of_range("symbol index");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (!t.m.e[index]) continue;
        Term d{t.m, t.c * t.m.e[index]};
        d.m.e[index] -= 1;
        d.m.deg -= 1;
        out.push_back(std::move(d));
    }
    // removing one power of a fixed variable preserves the graded-lex order
    Polynomial r(table_);
    r.terms_ = std::move(out);
    return r;
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& f) const {
    check_table(f);
    if (f.is_zero()) throw DivisionByZero();
    Polynomial q(table_);
    if (is_zero()) return q;
    if (f.is_constant()) return scaled(BigRational(1) / f.terms_[0].c);
    const Term& lf = f.terms_.front();
    if (!lf.m.divides(terms_.front().m)) return std::nullopt;
    if (!f.terms_.back().m.divides(terms_.back().m)) return std::nullopt;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
        std::uint16_t df = 0, dp = 0;
        for (const auto& t : f.terms_) df = std::max(df, t.m.e[i]);
        if (!df) continue;
        for (const auto& t : terms_) dp = std::max(dp, t.m.e[i]);
        if (dp < df) return std::nullopt;
    }
    if (f.is_monomial()) {
        Polynomial r(table_);
        BigRational inv = BigRational(1) / lf.c;
        for (const auto& t : terms_) {
            if (!lf.m.divides(t.m)) return std::nullopt;
            r.terms_.push_back({t.m / lf.m, t.c * inv});
        }
        return r;
    }
    std::map<Monomial, BigRational, std::greater<>> rem;
    for (const auto& t : terms_) rem.emplace(t.m, t.c);
    BigRational inv = BigRational(1) / lf.c;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!lf.m.divides(it->first)) return std::nullopt;
        Monomial qm = it->first / lf.m;
        BigRational qc = it->second * inv;
        q.terms_.push_back({qm, qc});
        rem.erase(it);
        for (std::size_t k = 1; k < f.terms_.size(); ++k) {
            Monomial m = f.terms_[k].m * qm;
            BigRational c = f.terms_[k].c * qc;
            auto [pos, inserted] = rem.emplace(m, -c);
            if (!inserted) {
                pos->second -= c;
                if (sgn(pos->second) == 0) rem.erase(pos);
            }
        }
    }
    return q;
}

std::pair<Polynomial, Polynomial> Polynomial::divide(const Polynomial& f) const {
    check_table(f);
    if (f.is_zero()) throw DivisionByZero();
    Polynomial q(table_), r(table_);
    std::map<Monomial, BigRational, std::greater<>> rem;
    for (const auto& t : terms_) rem.emplace(t.m, t.c);
    const Term& lf = f.terms_.front();
    BigRational inv = BigRational(1) / lf.c;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!lf.m.divides(it->first)) {
            r.terms_.push_back({it->first, it->second});
            rem.erase(it);
            continue;
        }
        Monomial qm = it->first / lf.m;
        BigRational qc = it->second * inv;
        q.terms_.push_back({qm, qc});
        rem.erase(it);
        for (std::size_t k = 1; k < f.terms_.size(); ++k) {
            Monomial m = f.terms_[k].m * qm;
            BigRational c = f.terms_[k].c * qc;
            auto [pos, inserted] = rem.emplace(m, -c);
            if (!inserted) {
                pos->second -= c;
                if (sgn(pos->second) == 0) rem.erase(pos);
            }
        }
    }
    return {q, r};
}

BigRational Polynomial::content() const {
    if (terms_.empty()) return 0;
    BigInteger g = 0, l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    }
    BigRational c(g, l);
    c.canonicalize();
    if (sgn(terms_.front().c) < 0) c = -c;
    return c;
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return Monomial{};
    Monomial g = terms_.front().m;
    for (const auto& t : terms_) g = monomial_gcd(g, t.m);
    return g;
}

Polynomial Polynomial::primitive() const {
    if (terms_.empty()) return *this;
    return scaled(BigRational(1) / content());
}

std::map<Monomial, Polynomial, std::greater<>> Polynomial::collect(const std::vector<std::size_t>& indices) const {
    std::map<Monomial, std::vector<Term>, std::greater<>> buckets;
    for (const auto& t : terms_) {
        Monomial key;
        Monomial rest = t.m;
        for (auto i : indices) {
            key.e[i] = t.m.e[i];
            key.deg += t.m.e[i];
            rest.e[i] = 0;
        }
        rest.deg -= key.deg;
        buckets[key].push_back({rest, t.c});
    }
    std::map<Monomial, Polynomial, std::greater<>> out;
    for (auto& [k, v] : buckets) out.emplace(k, from_terms(table_, std::move(v)));
    return out;
}

double Polynomial::evaluate(const std::vector<double>& point) const {
    double s = 0.0;
    for (const auto& t : terms_) {
        double v = t.c.get_d();
        for (std::size_t i = 0; i < table_->size(); ++i)
            for (std::uint16_t k = 0; k < t.m.e[i]; ++k) v *= point[i];
        s += v;
    }
    return s;
}

BigRational Polynomial::evaluate(const std::vector<BigRational>& point) const {
    BigRational s = 0;
    for (const auto& t : terms_) {
        BigRational v = t.c;
        for (std::size_t i = 0; i < table_->size(); ++i)
            for (std::uint16_t k = 0; k < t.m.e[i]; ++k) v *= point[i];
        s += v;
    }
    return s;
}

Polynomial Polynomial::evaluate_partial(std::size_t index, const BigRational& value) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term r{t.m, t.c};
        for (std::uint16_t k = 0; k < t.m.e[index]; ++k) r.c *= value;
        r.m.deg -= r.m.e[index];
        r.m.e[index] = 0;
        if (sgn(r.c) != 0) out.push_back(std::move(r));
    }
    return from_terms(table_, std::move(out));
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < table_->size(); ++i)
        if (table_->role(i) != SymbolRole::State) order.push_back(i);
    for (std::size_t i = 0; i < table_->size(); ++i)
        if (table_->role(i) == SymbolRole::State) order.push_back(i);
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        BigRational mag = abs(t.c);
        bool neg = sgn(t.c) < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::string mono;
        for (auto i : order) {
            if (!t.m.e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += table_->name(i);
            if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
        }
        if (mono.empty()) {
            os << rational_str(mag);
        } else if (mag == 1) {
            os << mono;
        } else {
            os << rational_str(mag) << "*" << mono;
        }
    }
    return os.str();
}

}  // namespace plab
