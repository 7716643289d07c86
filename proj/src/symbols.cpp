#include "plab/symbols.hpp"

#include <set>

namespace plab {

SymbolTable::SymbolTable(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.size() > kMaxSymbols) throw std::length_error("symbol table exceeds kMaxSymbols");
    std::set<std::string> seen;
    for (const auto& e : entries_) {
        if (e.name.empty()) throw std::invalid_argument("empty symbol name");
        if (!seen.insert(e.name).second) throw std::invalid_argument("duplicate symbol: " + e.name);
    }
}

std::optional<std::size_t> SymbolTable::find(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].name == name) return i;
    return std::nullopt;
}

std::size_t SymbolTable::index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw UnknownSymbol(name);
    return *i;
}

std::vector<std::size_t> SymbolTable::with_role(SymbolRole role) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].role == role) out.push_back(i);
    return out;
}

TablePtr make_table(std::vector<SymbolTable::Entry> entries) {
    return std::make_shared<const SymbolTable>(std::move(entries));
}

}  // namespace plab
