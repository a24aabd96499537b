#pragma once

#include "gradform/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gradform {

constexpr int kCoordCount = 4;    // scalar ring coordinates x0..x3
constexpr int kMaxJetOrder = 4;   // derivatives beyond this order are an error

enum class SymbolKind : uint8_t {
    Coordinate,   // x0..x3
    Field,        // jet field, non-negative powers
    Invertible,   // x-dependent invertible function, integer powers at order 0
    ExpUnit,      // exp(factor * base_field); invertible, derivative rewrites to base jets
    MatrixSym,    // noncommutative matrix symbol (lives in coefficient words)
};

enum class Reality : uint8_t { Real, Complex };

enum class MatrixKind : uint8_t { Generic, Unitary, SkewHermitian };

struct SymbolInfo {
    std::string name;
    SymbolKind kind = SymbolKind::Field;
    Reality reality = Reality::Real;
    std::array<bool, kCoordCount> coords{};  // coordinates the symbol may depend on
    // ExpUnit data: d_mu(U) = factor * d_mu(base) * U. factor must be real or
    // purely imaginary so that conj(U) is again a power of U.
    int base = -1;
    GaussRat factor;
    MatrixKind mkind = MatrixKind::Generic;

    bool depends_on(int mu) const { return coords[static_cast<size_t>(mu)]; }
};

/// Process-wide interned symbol registry. Declarations happen up front
/// (programmatically or from a JSON manifest); expression values only hold
/// integer ids. Declaration is not thread-safe; lookups after setup are.
class SymbolTable {
public:
    static SymbolTable& instance() {
        static SymbolTable table;
        return table;
    }

    void reset() {
        entries_.clear();
        for (int m = 0; m < kCoordCount; ++m) {
            SymbolInfo s;
            s.name = "x" + std::to_string(m);
            s.kind = SymbolKind::Coordinate;
            s.coords[static_cast<size_t>(m)] = true;
            entries_.push_back(std::move(s));
        }
    }

    int declare_field(const std::string& name, Reality reality,
                      std::vector<int> coords = all_coords()) {
        return add(name, SymbolKind::Field, reality, coords);
    }

    int declare_invertible(const std::string& name, std::vector<int> coords = all_coords()) {
        return add(name, SymbolKind::Invertible, Reality::Real, coords);
    }

    /// exp(factor * base). factor real -> real positive unit (conj = itself);
    /// factor imaginary -> unit modulus (conj = inverse).
    int declare_exp_unit(const std::string& name, int base_field, GaussRat factor) {
        const SymbolInfo& b = info(base_field);
        if (b.kind != SymbolKind::Field) throw Error("exp unit base must be a declared field");
        if (!(factor.im == 0 || factor.re == 0))
            throw Error("exp unit factor must be real or purely imaginary");
        std::vector<int> coords;
        for (int m = 0; m < kCoordCount; ++m)
            if (b.coords[static_cast<size_t>(m)]) coords.push_back(m);
        int id = add(name, SymbolKind::ExpUnit,
                     factor.im == 0 ? Reality::Real : Reality::Complex, coords);
        entries_[static_cast<size_t>(id)].base = base_field;
        entries_[static_cast<size_t>(id)].factor = factor;
        return id;
    }

    int declare_matrix_symbol(const std::string& name, MatrixKind mk,
                              std::vector<int> coords = all_coords()) {
        int id = add(name, SymbolKind::MatrixSym, Reality::Complex, coords);
        entries_[static_cast<size_t>(id)].mkind = mk;
        return id;
    }

    const SymbolInfo& info(int id) const { return entries_.at(static_cast<size_t>(id)); }

    std::optional<int> find(const std::string& name) const {
        for (size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].name == name) return static_cast<int>(i);
        return std::nullopt;
    }

    int size() const { return static_cast<int>(entries_.size()); }

    static std::vector<int> all_coords() { return {0, 1, 2, 3}; }

private:
    SymbolTable() { reset(); }

    int add(const std::string& name, SymbolKind kind, Reality reality,
            const std::vector<int>& coords) {
        if (name.empty()) throw Error("empty symbol name");
        if (find(name)) throw Error("symbol already declared: " + name);
        SymbolInfo s;
        s.name = name;
        s.kind = kind;
        s.reality = reality;
        for (int m : coords) {
            if (m < 0 || m >= kCoordCount) throw Error("bad coordinate index for " + name);
            s.coords[static_cast<size_t>(m)] = true;
        }
        entries_.push_back(std::move(s));
        return static_cast<int>(entries_.size()) - 1;
    }

    std::vector<SymbolInfo> entries_;
};

inline const SymbolInfo& symbol_info(int id) { return SymbolTable::instance().info(id); }

}  // namespace gradform
