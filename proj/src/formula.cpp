#include "supercon/formula.hpp"

#include <cmath>

#include "supercon/csv.hpp"
#include "supercon/error.hpp"

namespace supercon {

namespace {

constexpr std::string_view kSymbols[kMaxKnownZ] = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
    "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
    "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

constexpr bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
constexpr bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }
constexpr bool is_coeff_char(char c) { return is_digit(c) || c == '.'; }

// symbol -> Z lookup: 26 first letters x (bare | 26 second letters).
struct SymbolIndex {
    int z[26][27] = {};
    SymbolIndex() {
        for (int i = 0; i < kMaxKnownZ; ++i) {
            std::string_view s = kSymbols[i];
            int first = s[0] - 'A';
            int second = s.size() == 2 ? 1 + (s[1] - 'a') : 0;
            z[first][second] = i + 1;
        }
    }
};

const SymbolIndex kIndex;

ParseIssue issue(ParseIssueKind kind, std::size_t begin, std::size_t end, std::string message) {
    return ParseIssue{kind, begin, end, std::move(message)};
}

}  // namespace

std::optional<int> atomic_number(std::string_view symbol) {
    if (symbol.empty() || symbol.size() > 2 || !is_upper(symbol[0])) return std::nullopt;
    int second = 0;
    if (symbol.size() == 2) {
        if (!is_lower(symbol[1])) return std::nullopt;
        second = 1 + (symbol[1] - 'a');
    }
    int z = kIndex.z[symbol[0] - 'A'][second];
    if (z == 0) return std::nullopt;
    return z;
}

std::string_view element_symbol(int z) {
    if (z < 1 || z > kMaxKnownZ) {
        raise(ErrorKind::OutOfRangeElement, "atomic number " + std::to_string(z) + " out of range");
    }
    return kSymbols[z - 1];
}

double Composition::coefficient_sum() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.coefficient;
    return s;
}

const CompositionEntry* Composition::find(std::string_view symbol) const {
    for (const auto& e : entries) {
        if (e.symbol == symbol) return &e;
    }
    return nullptr;
}

std::string_view to_string(ParseIssueKind kind) {
    switch (kind) {
        case ParseIssueKind::UnknownSymbol: return "UnknownSymbol";
        case ParseIssueKind::NonPositiveCoefficient: return "NonPositiveCoefficient";
        case ParseIssueKind::MalformedToken: return "MalformedToken";
        case ParseIssueKind::EmptyFormula: return "EmptyFormula";
    }
    return "ParseIssue";
}

ParseResult parse_formula(std::string_view input) {
    if (input.empty()) {
        return issue(ParseIssueKind::EmptyFormula, 0, 0, "formula is empty");
    }
    Composition comp;
    std::size_t i = 0;
    while (i < input.size()) {
        char c = input[i];
        if (is_upper(c)) {
            // Greedy symbol match: uppercase plus following lowercase always
            // form one token ("Yo" is an unknown symbol, never Y + stray o).
            std::size_t start = i++;
            if (i < input.size() && is_lower(input[i])) ++i;
            std::string_view sym = input.substr(start, i - start);
            if (!atomic_number(sym)) {
                return issue(ParseIssueKind::UnknownSymbol, start, i,
                             "'" + std::string(sym) + "' is not an element symbol");
            }
            std::size_t cstart = i;
            while (i < input.size() && is_coeff_char(input[i])) ++i;
            double coeff = 1.0;
            if (i > cstart) {
                std::string_view text = input.substr(cstart, i - cstart);
                auto value = parse_double(text);
                if (!value) {
                    return issue(ParseIssueKind::MalformedToken, cstart, i,
                                 "unreadable coefficient '" + std::string(text) + "'");
                }
                if (*value <= 0.0) {
                    return issue(ParseIssueKind::NonPositiveCoefficient, cstart, i,
                                 "coefficient of " + std::string(sym) + " must be positive, got '" +
                                     std::string(text) + "'");
                }
                coeff = *value;
            }
            bool merged = false;
            for (auto& e : comp.entries) {
                if (e.symbol == sym) {
                    e.coefficient += coeff;
                    merged = true;
                    break;
                }
            }
            if (!merged) comp.entries.push_back({std::string(sym), coeff});
            continue;
        }
        if (is_lower(c)) {
            return issue(ParseIssueKind::MalformedToken, i, i + 1,
                         std::string("element symbols start with a capital letter; got '") + c +
                             "'");
        }
        if (c == '-' && i + 1 < input.size() && is_coeff_char(input[i + 1])) {
            std::size_t j = i + 1;
            while (j < input.size() && is_coeff_char(input[j])) ++j;
            return issue(ParseIssueKind::NonPositiveCoefficient, i, j,
                         "negative coefficient '" + std::string(input.substr(i, j - i)) + "'");
        }
        return issue(ParseIssueKind::MalformedToken, i, i + 1,
                     std::string("character '") + c + "' is not allowed in a formula");
    }
    // Summed duplicates could overflow even though each mention was finite.
    for (const auto& e : comp.entries) {
        if (!std::isfinite(e.coefficient)) {
            return issue(ParseIssueKind::MalformedToken, 0, input.size(),
                         "coefficient of " + e.symbol + " overflows");
        }
    }
    return comp;
}

std::string render_formula(const Composition& c) {
    std::string out;
    for (const auto& e : c.entries) {
        out += e.symbol;
        out += format_double_fixed(e.coefficient);
    }
    return out;
}

std::array<double, kMaxTableZ> composition_vector(const Composition& c) {
    std::array<double, kMaxTableZ> v{};
    for (const auto& e : c.entries) {
        int z = atomic_number(e.symbol).value();
        if (z > kMaxTableZ) {
            raise(ErrorKind::OutOfRangeElement,
                  e.symbol + " has atomic number " + std::to_string(z) +
                      ", beyond table coverage (Z <= 86)");
        }
        v[static_cast<std::size_t>(z - 1)] = e.coefficient;
    }
    return v;
}

}  // namespace supercon
