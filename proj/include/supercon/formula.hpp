#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace supercon {

// The parser recognizes the full periodic table; the property table (and
// therefore featurization) covers Z <= 86 only — that cut happens later.
inline constexpr int kMaxKnownZ = 118;
inline constexpr int kMaxTableZ = 86;

// 1..118 for a recognized symbol, nullopt otherwise. Case-sensitive.
std::optional<int> atomic_number(std::string_view symbol);
// Symbol for z in [1, 118].
std::string_view element_symbol(int z);

struct CompositionEntry {
    std::string symbol;
    double coefficient = 0.0;
    bool operator==(const CompositionEntry&) const = default;
};

// Parsed formula. Entries keep first-mention order; symbols are unique
// (duplicate mentions were summed); coefficients are positive and finite.
struct Composition {
    std::vector<CompositionEntry> entries;

    double coefficient_sum() const;
    const CompositionEntry* find(std::string_view symbol) const;
    bool operator==(const Composition&) const = default;
};

enum class ParseIssueKind {
    UnknownSymbol,           // token shaped like a symbol, not in the table
    NonPositiveCoefficient,  // explicit <= 0 coefficient, or a minus sign
    MalformedToken,          // anything else the grammar cannot accept
    EmptyFormula,            // no element tokens at all
};

std::string_view to_string(ParseIssueKind kind);

struct ParseIssue {
    ParseIssueKind kind = ParseIssueKind::MalformedToken;
    std::size_t begin = 0;  // character span [begin, end) in the input
    std::size_t end = 0;
    std::string message;
};

using ParseResult = std::variant<Composition, ParseIssue>;

// Strict left-to-right tokenization of (Uppercase lowercase?) (decimal)?
// groups. Returns the first issue encountered; never throws on any input.
ParseResult parse_formula(std::string_view input);

// Canonical text form: every entry as <symbol><coefficient> with the
// coefficient in plain decimal notation (never scientific), chosen as the
// shortest string that re-parses to the exact same double. Re-parsing the
// result yields a Composition equal to the input.
std::string render_formula(const Composition& c);

// Stoichiometric coefficients laid out by atomic number: slot z-1 holds the
// coefficient of element z, zero elsewhere. Raises OutOfRangeElement when
// the composition contains any element with Z > 86.
std::array<double, kMaxTableZ> composition_vector(const Composition& c);

}  // namespace supercon
