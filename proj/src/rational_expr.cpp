#include "plab/rational_expr.hpp"

#include <algorithm>
#include <sstream>

namespace plab {

namespace {

// primitive part with positive leading coefficient, plus the scalar removed
std::pair<Polynomial, BigRational> normalize_factor(const Polynomial& f) {
    BigRational c = f.content();
    return {f.scaled(BigRational(1) / c), c};
}

}  // namespace

RationalExpr::RationalExpr(Polynomial num) : num_(std::move(num)) {}

RationalExpr::RationalExpr(TablePtr table, const BigRational& c) : num_(std::move(table), c) {}

RationalExpr RationalExpr::quotient(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZeroExpr();
    RationalExpr r(num);
    r.divide_by(den);
    r.cancel();
    return r;
}

RationalExpr RationalExpr::symbol(TablePtr table, const std::string& name) {
    return RationalExpr(Polynomial::variable(std::move(table), name));
}

Polynomial RationalExpr::den() const {
    Polynomial d(table(), BigRational(1));
    for (const auto& f : den_) d = d * f.f.pow(f.e);
    return d;
}

bool RationalExpr::denominator_free_of(const std::vector<std::size_t>& indices) const {
    for (const auto& f : den_)
        if (f.f.depends_on_any(indices)) return false;
    return true;
}

void RationalExpr::divide_by(const Polynomial& f, unsigned e) {
    if (f.is_zero()) throw DivisionByZeroExpr();
    if (e == 0) return;
    if (f.table() != table()) throw TableMismatch();
    auto scale_down = [this, e](const BigRational& c) {
        BigRational ce = 1;
        for (unsigned k = 0; k < e; ++k) ce *= c;
        num_ = num_.scaled(BigRational(1) / ce);
    };
    if (f.is_constant()) {
        scale_down(f.constant_value());
        return;
    }
    auto [g, c] = normalize_factor(f);
    scale_down(c);
    auto add_exact = [this](const Polynomial& h, unsigned k) {
        for (auto& fa : den_)
            if (fa.f == h) {
                fa.e += k;
                return;
            }
        den_.push_back({h, k});
    };
    Monomial mc = g.monomial_content();
    if (!mc.is_one()) {
        g = *g.exact_divide(Polynomial::from_terms(table(), {{mc, BigRational(1)}}));
        for (std::size_t i = 0; i < kMaxSymbols; ++i)
            if (mc.e[i]) add_exact(Polynomial::variable(table(), i), mc.e[i] * e);
        if (g.is_constant()) {
            scale_down(g.constant_value());
            return;
        }
    }
    // split g by smaller factors already present
    for (bool progress = true; progress && !g.is_constant();) {
        progress = false;
        for (auto& fa : den_) {
            if (fa.f.total_degree() >= g.total_degree()) continue;
            if (auto q = g.exact_divide(fa.f)) {
                fa.e += e;
                auto [qn, qc] = normalize_factor(*q);
                scale_down(qc);
                g = std::move(qn);
                progress = true;
                break;
            }
        }
    }
    if (g.is_constant()) {
        scale_down(g.constant_value());
        return;
    }
    // split larger factors that g divides
    std::vector<Factor> pieces;
    for (auto& fa : den_) {
        if (fa.f.total_degree() <= g.total_degree()) continue;
        if (auto q = fa.f.exact_divide(g)) {
            pieces.push_back({*q, fa.e});
            pieces.push_back({g, fa.e});
            fa.e = 0;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& x) { return x.e == 0; }), den_.end());
    add_exact(g, e);
    for (auto& piece : pieces) divide_by(piece.f, piece.e);
}

void RationalExpr::cancel() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& fa : den_) {
        while (fa.e > 0) {
            auto q = num_.exact_divide(fa.f);
            if (!q) break;
            num_ = std::move(*q);
            --fa.e;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& f) { return f.e == 0; }), den_.end());
}

void RationalExpr::refine_factors(const std::vector<Polynomial>& primes) {
    if (den_.empty() || primes.empty()) return;
    std::vector<Factor> old;
    old.swap(den_);
    for (const auto& fa : old) {
        Polynomial g = fa.f;
        for (const auto& p : primes) {
            if (p.is_constant() || p.total_degree() > g.total_degree()) continue;
            auto [pn, pc] = normalize_factor(p);
            while (!g.is_constant() && pn.total_degree() <= g.total_degree()) {
                if (pn == g) break;
                auto q = g.exact_divide(pn);
                if (!q) break;
                divide_by(pn, fa.e);
                g = *q;
            }
        }
        divide_by(g, fa.e);
    }
    cancel();
}

RationalExpr RationalExpr::operator-() const {
    RationalExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

namespace {

// common denominator of a and b; returns the scaled numerators
std::pair<Polynomial, Polynomial> align(const RationalExpr& a, const RationalExpr& b, std::vector<RationalExpr::Factor>& den) {
    if (a.table() != b.table()) throw TableMismatch();
    den = a.den_factors();
    std::vector<unsigned> ea(den.size()), eb(den.size(), 0);
    for (std::size_t k = 0; k < den.size(); ++k) ea[k] = den[k].e;
    for (const auto& fb : b.den_factors()) {
        bool found = false;
        for (std::size_t k = 0; k < den.size(); ++k)
            if (den[k].f == fb.f) {
                eb[k] = fb.e;
                den[k].e = std::max(den[k].e, fb.e);
                found = true;
                break;
            }
        if (!found) {
            den.push_back(fb);
            ea.push_back(0);
            eb.push_back(fb.e);
        }
    }
    Polynomial na = a.num(), nb = b.num();
    for (std::size_t k = 0; k < den.size(); ++k) {
        if (den[k].e > ea[k]) na = na * den[k].f.pow(den[k].e - ea[k]);
        if (den[k].e > eb[k]) nb = nb * den[k].f.pow(den[k].e - eb[k]);
    }
    return {na, nb};
}

}  // namespace

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    if (a.is_polynomial() && b.is_polynomial()) return RationalExpr(a.num_ + b.num_);
    std::vector<RationalExpr::Factor> den;
    auto [na, nb] = align(a, b, den);
    RationalExpr r(na + nb);
    r.den_ = std::move(den);
    r.cancel();
    return r;
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
    if (a.table() != b.table()) throw TableMismatch();
    if (a.is_zero() || b.is_zero()) return RationalExpr(a.table(), BigRational(0));
    if (a.is_polynomial() && b.is_polynomial()) return RationalExpr(a.num_ * b.num_);
    Polynomial na = a.num_, nb = b.num_;
    std::vector<RationalExpr::Factor> da = a.den_, db = b.den_;
    for (auto& f : da)
        while (f.e > 0) {
            auto q = nb.exact_divide(f.f);
            if (!q) break;
            nb = std::move(*q);
            --f.e;
        }
    for (auto& f : db)
        while (f.e > 0) {
            auto q = na.exact_divide(f.f);
            if (!q) break;
            na = std::move(*q);
            --f.e;
        }
    RationalExpr r(na * nb);
    for (const auto& f : da)
        if (f.e) {
            bool merged = false;
            for (auto& g : r.den_)
                if (g.f == f.f) {
                    g.e += f.e;
                    merged = true;
                }
            if (!merged) r.den_.push_back(f);
        }
    for (const auto& f : db)
        if (f.e) {
            bool merged = false;
            for (auto& g : r.den_)
                if (g.f == f.f) {
                    g.e += f.e;
                    merged = true;
                }
            if (!merged) r.den_.push_back(f);
        }
    return r;
}

RationalExpr RationalExpr::inverse() const {
    if (num_.is_zero()) throw DivisionByZeroExpr();
    RationalExpr r(den());
    r.divide_by(num_);
    r.cancel();
    return r;
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
    if (b.is_zero()) throw DivisionByZeroExpr();
    if (b.is_constant()) return a.scaled(BigRational(1) / b.num().constant_value());
    return a * b.inverse();
}

RationalExpr RationalExpr::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    RationalExpr r(num_.pow(static_cast<unsigned>(n)));
    for (const auto& f : den_) r.den_.push_back({f.f, f.e * static_cast<unsigned>(n)});
    if (n == 0) r.den_.clear();
    return r;
}

RationalExpr RationalExpr::scaled(const BigRational& c) const {
    RationalExpr r = *this;
    r.num_ = r.num_.scaled(c);
    if (sgn(c) == 0) r.den_.clear();
    return r;
}

RationalExpr RationalExpr::derivative(std::size_t index) const {
    std::vector<std::size_t> dep;
    for (std::size_t k = 0; k < den_.size(); ++k)
        if (den_[k].f.depends_on(index)) dep.push_back(k);
    if (dep.empty()) {
        RationalExpr r(num_.derivative(index));
        r.den_ = den_;
        r.cancel();
        return r;
    }
    Polynomial prod(table(), BigRational(1));
    for (auto k : dep) prod = prod * den_[k].f;
    Polynomial n = num_.derivative(index) * prod;
    for (auto k : dep) {
        Polynomial others(table(), BigRational(den_[k].e));
        for (auto j : dep)
            if (j != k) others = others * den_[j].f;
        n -= num_ * den_[k].f.derivative(index) * others;
    }
    RationalExpr r(n);
    r.den_ = den_;
    for (auto k : dep) r.den_[k].e += 1;
    r.cancel();
    return r;
}

double RationalExpr::evaluate(const std::vector<double>& point) const {
    double v = num_.evaluate(point);
    for (const auto& f : den_) {
        double d = f.f.evaluate(point);
        for (unsigned k = 0; k < f.e; ++k) v /= d;
    }
    return v;
}

BigRational RationalExpr::evaluate(const std::vector<BigRational>& point) const {
    BigRational v = num_.evaluate(point);
    for (const auto& f : den_) {
        BigRational d = f.f.evaluate(point);
        if (sgn(d) == 0) throw DivisionByZeroExpr();
        for (unsigned k = 0; k < f.e; ++k) v /= d;
    }
    return v;
}

std::string RationalExpr::str() const {
    if (den_.empty()) return num_.str();
    std::ostringstream os;
    if (num_.size() > 1)
        os << "(" << num_.str() << ")";
    else
        os << num_.str();
    os << "/";
    bool multi = den_.size() > 1;
    if (multi) os << "(";
    for (std::size_t k = 0; k < den_.size(); ++k) {
        if (k) os << "*";
        if (den_[k].f.size() > 1)
            os << "(" << den_[k].f.str() << ")";
        else
            os << den_[k].f.str();
        if (den_[k].e > 1) os << "^" << den_[k].e;
    }
    if (multi) os << ")";
    return os.str();
}

Polynomial rat_residual(const RationalExpr& a, const RationalExpr& b) {
    if (a.is_polynomial() && b.is_polynomial()) return a.num() - b.num();
    std::vector<RationalExpr::Factor> den;
    auto [na, nb] = align(a, b, den);
    return na - nb;
}

bool rat_equal(const RationalExpr& a, const RationalExpr& b) { return rat_residual(a, b).is_zero(); }

Bindings::Bindings(TablePtr source, TablePtr target)
    : source_(std::move(source)), target_(std::move(target)), images_(source_->size()) {}

Bindings Bindings::by_name(TablePtr source, TablePtr target) {
    Bindings b(source, target);
    for (std::size_t i = 0; i < source->size(); ++i)
        if (auto j = target->find(source->name(i))) b.images_[i] = RationalExpr(Polynomial::variable(target, *j));
    return b;
}

Bindings& Bindings::set(std::size_t index, RationalExpr value) {
    if (value.table() != target_) throw TableMismatch();
    images_.at(index) = std::move(value);
    return *this;
}

Bindings& Bindings::set(const std::string& name, RationalExpr value) { return set(source_->index(name), std::move(value)); }

Bindings& Bindings::add_prime(Polynomial p) {
    if (p.table() != target_) throw TableMismatch();
    primes_.push_back(std::move(p));
    return *this;
}

RationalExpr substitute(const Polynomial& p, const Bindings& b) {
    if (p.table() != b.source()) throw TableMismatch();
    const TablePtr& tgt = b.target();
    const std::size_t n = b.source()->size();
    std::vector<unsigned> deg(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        deg[i] = p.degree_in(i);
        if (deg[i] && !b.has(i)) throw UnknownSymbol(b.source()->name(i));
    }
    std::vector<std::vector<Polynomial>> num_pow(n), den_pow(n);
    std::vector<Polynomial> den_poly(n);
    std::vector<bool> rational(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (!deg[i]) continue;
        const RationalExpr& img = *b.get(i);
        if (!img.is_polynomial()) {
            rational[i] = true;
            den_poly[i] = img.den();
        }
    }
    Polynomial acc(tgt);
    std::vector<Polynomial> factors;
    for (const auto& t : p.terms()) {
        factors.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (!deg[i]) continue;
            unsigned e = t.m.e[i];
            if (e) factors.push_back(pow_cached(b.get(i)->num(), e, num_pow[i]));
            if (rational[i] && deg[i] > e) factors.push_back(pow_cached(den_poly[i], deg[i] - e, den_pow[i]));
        }
        std::sort(factors.begin(), factors.end(), [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
        Polynomial term(tgt, t.c);
        for (const auto& f : factors) term = term * f;
        acc += term;
    }
    RationalExpr r(acc);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rational[i]) continue;
        for (const auto& f : b.get(i)->den_factors()) r.divide_by(f.f, f.e * deg[i]);
    }
    r.refine_factors(b.primes());
    r.cancel();
    return r;
}

RationalExpr substitute(const RationalExpr& e, const Bindings& b) {
    RationalExpr r = substitute(e.num(), b);
    for (const auto& f : e.den_factors()) {
        RationalExpr s = substitute(f.f, b);
        if (s.is_zero()) throw DivisionByZeroExpr();
        r = r * s.inverse().pow(static_cast<int>(f.e));
    }
    r.refine_factors(b.primes());
    r.cancel();
    return r;
}

}  // namespace plab
