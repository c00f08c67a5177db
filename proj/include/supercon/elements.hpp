#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace supercon {

// One row of the element property table. electron_affinity is stored after
// the +1.5 kJ/mol shift applied when the data file was generated, so every
// stored value is strictly positive (log-safe).
struct ElementProperties {
    double atomic_mass = 0;          // AMU
    double fie = 0;                  // first ionization energy, kJ/mol
    double atomic_radius = 0;        // pm
    double density = 0;              // kg/m^3
    double electron_affinity = 0;    // kJ/mol, shifted
    double fusion_heat = 0;          // kJ/mol
    double thermal_conductivity = 0; // W/(m*K)
    double valence = 0;              // positive integer, stored as double
};

inline constexpr int kPropertyCount = 8;

// Column name in the data file, property index 0..7.
std::string_view property_column(int p);
// Suffix used in derived feature names (matches the published dataset's
// mixed-case convention, e.g. "ThermalConductivity").
std::string_view property_suffix(int p);
double property_value(const ElementProperties& e, int p);

// Immutable table covering exactly the elements with Z in [1, 86].
class PropertyTable {
  public:
    static PropertyTable load_file(const std::string& path);
    static PropertyTable load(std::istream& in, const std::string& origin);
    // The copy of data/element_properties.csv compiled into the library.
    static const PropertyTable& builtin();

    const ElementProperties& lookup(std::string_view symbol) const;  // UnknownElement
    const ElementProperties& lookup_z(int z) const;                  // z in [1, 86]
    bool contains(std::string_view symbol) const;

    const std::string& version() const { return version_; }
    const std::vector<std::string>& provenance() const { return provenance_; }

    // Canonical CSV text (comments, header, rows in Z order, shortest
    // round-trip numbers); equal inputs serialize byte-identically.
    std::string serialize() const;

  private:
    PropertyTable() = default;
    std::array<ElementProperties, 86> rows_{};
    std::string version_;
    std::vector<std::string> provenance_;
};

// Defined in a generated translation unit; verbatim contents of the shipped
// data file.
const char* builtin_element_table_csv();

}  // namespace supercon
