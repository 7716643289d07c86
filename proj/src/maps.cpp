#include "plab/maps.hpp"

#include <algorithm>
#include <stdexcept>

namespace plab {

Bindings BirationalMap::bindings() const {
    Bindings b(target, source);
    for (std::size_t i = 0; i < 4; ++i) b.set(kState[i], images[i]);
    b.set(kTime, tau);
    for (const auto& [n, e] : params) b.set(n, e);
    return b;
}

const RationalExpr* BirationalMap::param(const std::string& n) const {
    for (const auto& [k, e] : params)
        if (k == n) return &e;
    return nullptr;
}

BirationalMap make_map(std::string name, TablePtr source, TablePtr target, std::array<RationalExpr, 4> images,
                       RationalExpr tau, std::vector<std::pair<std::string, RationalExpr>> params) {
    BirationalMap m;
    m.name = std::move(name);
    m.source = std::move(source);
    m.target = std::move(target);
    m.images = std::move(images);
    m.dtau = tau.derivative(kTime);
    m.tau = std::move(tau);
    m.params = std::move(params);
    return m;
}

BirationalMap identity_map(const TablePtr& table, const std::vector<std::string>& params) {
    std::array<RationalExpr, 4> img;
    for (std::size_t i = 0; i < 4; ++i) img[i] = RationalExpr(Polynomial::variable(table, kState[i]));
    std::vector<std::pair<std::string, RationalExpr>> ps;
    for (const auto& n : params) ps.emplace_back(n, RationalExpr::symbol(table, n));
    return make_map("id", table, table, img, RationalExpr(Polynomial::variable(table, kTime)), ps);
}

BirationalMap compose(const BirationalMap& a, const BirationalMap& b) {
    if (a.source != b.target) throw TableMismatch();
    Bindings bb = b.bindings();
    std::array<RationalExpr, 4> img;
    for (std::size_t i = 0; i < 4; ++i) img[i] = substitute(a.images[i], bb);
    std::vector<std::pair<std::string, RationalExpr>> ps;
    for (const auto& [n, e] : a.params) ps.emplace_back(n, substitute(e, bb));
    return make_map(a.name + "*" + b.name, b.source, a.target, img, substitute(a.tau, bb), ps);
}

BirationalMap compose_word(const std::vector<const BirationalMap*>& word) {
    if (word.empty()) throw std::invalid_argument("empty word");
    BirationalMap acc = *word.back();
    for (std::size_t k = word.size() - 1; k-- > 0;) acc = compose(*word[k], acc);
    return acc;
}

const RationalExpr* ParameterAction::param(const std::string& n) const {
    for (const auto& [k, e] : params)
        if (k == n) return &e;
    return nullptr;
}

ParameterAction compose_parameter_action(const std::vector<const BirationalMap*>& word) {
    if (word.empty()) throw std::invalid_argument("empty word");
    ParameterAction acc{word.back()->tau, word.back()->params};
    for (std::size_t k = word.size() - 1; k-- > 0;) {
        const BirationalMap& a = *word[k];
        if (a.source != word[k + 1]->target) throw TableMismatch();
        Bindings b(a.source, word.back()->source);
        b.set(kTime, acc.tau);
        for (const auto& [n, e] : acc.params) b.set(n, e);
        ParameterAction next{substitute(a.tau, b), {}};
        for (const auto& [n, e] : a.params) next.params.emplace_back(n, substitute(e, b));
        acc = std::move(next);
    }
    return acc;
}

std::vector<BigRational> apply_word(const std::vector<const BirationalMap*>& word, std::vector<BigRational> point) {
    for (std::size_t k = word.size(); k-- > 0;) {
        const BirationalMap& m = *word[k];
        if (point.size() != m.source->size()) throw TableMismatch();
        auto eval = [&](const RationalExpr& e) {
            for (const auto& f : e.den_factors())
                if (f.f.evaluate(point) == 0) throw std::domain_error(m.name + ": pole");
            return e.evaluate(point);
        };
        std::vector<BigRational> next(m.target->size(), 0);
        for (std::size_t i = 0; i < 4; ++i) next[kState[i]] = eval(m.images[i]);
        next[kTime] = eval(m.tau);
        for (const auto& [n, e] : m.params) next[m.target->index(n)] = eval(e);
        point = std::move(next);
    }
    return point;
}

std::optional<RationalExpr> identity_residual(const BirationalMap& m, const std::vector<std::string>& params) {
    if (m.source != m.target) throw TableMismatch();
    auto check = [](const RationalExpr& a, const RationalExpr& b) -> std::optional<RationalExpr> {
        Polynomial r = rat_residual(a, b);
        if (r.is_zero()) return std::nullopt;
        return RationalExpr(r);
    };
    for (std::size_t i = 0; i < 4; ++i)
        if (auto r = check(m.images[i], RationalExpr(Polynomial::variable(m.source, kState[i])))) return r;
    if (auto r = check(m.tau, RationalExpr(Polynomial::variable(m.source, kTime)))) return r;
    for (const auto& [n, e] : m.params) {
        if (!params.empty() && std::find(params.begin(), params.end(), n) == params.end()) continue;
        if (auto r = check(e, RationalExpr::symbol(m.source, n))) return r;
    }
    return std::nullopt;
}

std::array<RationalExpr, 4> pushforward_field(const BirationalMap& m, const std::array<RationalExpr, 4>& v) {
    std::array<RationalExpr, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        RationalExpr acc = m.images[i].derivative(kTime);
        for (std::size_t j = 0; j < 4; ++j) {
            RationalExpr d = m.images[i].derivative(kState[j]);
            if (!d.is_zero()) acc += d * v[j];
        }
        out[i] = acc / m.dtau;
    }
    return out;
}

std::optional<AffineAction> affine_action(const BirationalMap& m, const std::vector<std::string>& rows,
                                          const std::vector<std::string>& cols) {
    AffineAction a{rows, cols, {}, {}};
    std::vector<BigRational> zero(m.source->size(), 0);
    for (const auto& r : rows) {
        const RationalExpr* e = m.param(r);
        if (!e || !e->is_polynomial() || e->num().total_degree() > 1) return std::nullopt;
        std::vector<BigRational> row;
        for (const auto& c : cols) {
            RationalExpr d = e->derivative(m.source->index(c));
            if (!d.is_constant()) return std::nullopt;
            row.push_back(d.is_zero() ? BigRational(0) : d.num().constant_value());
        }
        a.matrix.push_back(std::move(row));
        a.offset.push_back(e->evaluate(zero));
    }
    return a;
}

}  // namespace plab
