#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "jetbrane/space.hpp"

namespace jetbrane {

enum class GenKind : uint8_t {
    Coordinate = 0,
    FieldJet = 1,
    GhostJet = 2,
    FieldAntifieldJet = 3,
    GhostAntifieldJet = 4,
    BasisForm = 5,
};

enum class Parity : uint8_t { Even = 0, Odd = 1 };

inline Parity parity_add(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}

enum class Side : uint8_t { Left, Right };

/// A single algebra generator: a coordinate x^mu, a basis one-form dx^mu, or
/// a jet variable of a field, ghost, or antifield. Grading is a pure function
/// of the kind.
struct Generator {
    GenKind kind = GenKind::Coordinate;
    uint16_t base = 0;  // coordinate index, field id, or gauge-parameter id
    MultiIndex jet;     // empty for Coordinate/BasisForm

    static Generator coordinate(int mu) { return {GenKind::Coordinate, static_cast<uint16_t>(mu), {}}; }
    static Generator basis_form(int mu) { return {GenKind::BasisForm, static_cast<uint16_t>(mu), {}}; }
    static Generator field(int id, MultiIndex j = {}) { return {GenKind::FieldJet, static_cast<uint16_t>(id), j}; }
    static Generator ghost(int id, MultiIndex j = {}) { return {GenKind::GhostJet, static_cast<uint16_t>(id), j}; }
    static Generator field_antifield(int id, MultiIndex j = {}) {
        return {GenKind::FieldAntifieldJet, static_cast<uint16_t>(id), j};
    }
    static Generator ghost_antifield(int id, MultiIndex j = {}) {
        return {GenKind::GhostAntifieldJet, static_cast<uint16_t>(id), j};
    }

    Parity parity() const {
        switch (kind) {
            case GenKind::GhostJet:
            case GenKind::FieldAntifieldJet:
            case GenKind::BasisForm:
                return Parity::Odd;
            default:
                return Parity::Even;
        }
    }

    int pure_ghost() const { return kind == GenKind::GhostJet ? 1 : 0; }

    int resolution() const {
        if (kind == GenKind::FieldAntifieldJet) return 1;
        if (kind == GenKind::GhostAntifieldJet) return 2;
        return 0;
    }

    int total_ghost() const { return pure_ghost() - resolution(); }

    int form_degree() const { return kind == GenKind::BasisForm ? 1 : 0; }

    /// True for the four kinds that carry jets (the dependent variables).
    bool is_jet_kind() const {
        return kind == GenKind::FieldJet || kind == GenKind::GhostJet ||
               kind == GenKind::FieldAntifieldJet || kind == GenKind::GhostAntifieldJet;
    }

    Generator base_generator() const { return {kind, base, {}}; }
    Generator with_jet(const MultiIndex& j) const { return {kind, base, j}; }

    /// Fixed total order: kind, then base id, then jet length-lex.
    std::strong_ordering compare(const Generator& o) const {
        if (kind != o.kind) return kind <=> o.kind;
        if (base != o.base) return base <=> o.base;
        return jet.compare(o.jet);
    }

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.kind == b.kind && a.base == b.base && a.jet == b.jet;
    }
    friend bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }
    friend bool operator<(const Generator& a, const Generator& b) {
        return a.compare(b) == std::strong_ordering::less;
    }

    /// Compact id-based rendering for diagnostics (symbol-table-free).
    std::string debug_string() const;
};

}  // namespace jetbrane
