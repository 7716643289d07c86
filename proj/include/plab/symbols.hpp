#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plab {

inline constexpr std::size_t kMaxSymbols = 24;

enum class SymbolRole { State, Time, Parameter, Deformation };

struct TableMismatch : std::logic_error {
    TableMismatch() : std::logic_error("operands use different symbol tables") {}
};

struct UnknownSymbol : std::invalid_argument {
    explicit UnknownSymbol(const std::string& name) : std::invalid_argument("unknown symbol: " + name) {}
};

class SymbolTable {
public:
    struct Entry {
        std::string name;
        SymbolRole role;
    };

    explicit SymbolTable(std::vector<Entry> entries);

    std::size_t size() const { return entries_.size(); }
    const std::string& name(std::size_t i) const { return entries_.at(i).name; }
    SymbolRole role(std::size_t i) const { return entries_.at(i).role; }
    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t index(const std::string& name) const;
    std::vector<std::size_t> with_role(SymbolRole role) const;
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

using TablePtr = std::shared_ptr<const SymbolTable>;

TablePtr make_table(std::vector<SymbolTable::Entry> entries);

}  // namespace plab
