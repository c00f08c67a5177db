#include "supercon/elements.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "supercon/csv.hpp"
#include "supercon/error.hpp"
#include "supercon/formula.hpp"

namespace supercon {

namespace {

constexpr std::string_view kColumns[kPropertyCount] = {
    "atomic_mass",  "fie",         "atomic_radius",        "density",
    "electron_affinity", "fusion_heat", "thermal_conductivity", "valence"};

constexpr std::string_view kSuffixes[kPropertyCount] = {
    "atomic_mass",  "fie",        "atomic_radius",       "Density",
    "ElectronAffinity", "FusionHeat", "ThermalConductivity", "Valence"};

}  // namespace

std::string_view property_column(int p) { return kColumns[p]; }
std::string_view property_suffix(int p) { return kSuffixes[p]; }

double property_value(const ElementProperties& e, int p) {
    switch (p) {
        case 0: return e.atomic_mass;
        case 1: return e.fie;
        case 2: return e.atomic_radius;
        case 3: return e.density;
        case 4: return e.electron_affinity;
        case 5: return e.fusion_heat;
        case 6: return e.thermal_conductivity;
        case 7: return e.valence;
    }
    raise(ErrorKind::InvalidParams, "property index " + std::to_string(p) + " out of range");
}

PropertyTable PropertyTable::load(std::istream& in, const std::string& origin) {
    CsvTable csv = read_csv(in, origin);

    std::vector<std::string> expected{"symbol"};
    for (int p = 0; p < kPropertyCount; ++p) expected.emplace_back(kColumns[p]);
    if (csv.header != expected) {
        std::string want;
        for (const auto& c : expected) {
            if (!want.empty()) want += ',';
            want += c;
        }
        raise(ErrorKind::BadSchema, origin + ": header must be exactly '" + want + "'");
    }
    if (csv.rows.size() != 86) {
        raise(ErrorKind::BadSchema, origin + ": expected exactly 86 element rows, found " +
                                        std::to_string(csv.rows.size()));
    }

    PropertyTable table;
    std::array<bool, 86> seen{};
    for (const auto& row : csv.rows) {
        const std::string& symbol = row[0];
        auto z = atomic_number(symbol);
        if (!z || *z > kMaxTableZ) {
            raise(ErrorKind::UnknownElement,
                  origin + ": '" + symbol + "' is not an element with Z <= 86");
        }
        if (seen[static_cast<std::size_t>(*z - 1)]) {
            raise(ErrorKind::BadSchema, origin + ": duplicate row for " + symbol);
        }
        seen[static_cast<std::size_t>(*z - 1)] = true;

        ElementProperties props;
        double* fields[kPropertyCount] = {
            &props.atomic_mass,       &props.fie,         &props.atomic_radius,
            &props.density,           &props.electron_affinity, &props.fusion_heat,
            &props.thermal_conductivity, &props.valence};
        for (int p = 0; p < kPropertyCount; ++p) {
            const std::string& cell = row[static_cast<std::size_t>(p + 1)];
            auto value = parse_double(cell);
            if (!value) {
                raise(ErrorKind::MissingValue, origin + ": " + symbol + "." +
                                                   std::string(kColumns[p]) +
                                                   " is empty or not a number: '" + cell + "'");
            }
            *fields[p] = *value;
        }
        // Invariants the generator promises; a hand-edited file must not
        // silently violate them.
        for (int p = 0; p < kPropertyCount; ++p) {
            if (property_value(props, p) <= 0.0) {
                raise(ErrorKind::NonPositiveProperty, origin + ": " + symbol + "." +
                                                          std::string(kColumns[p]) +
                                                          " must be > 0");
            }
        }
        if (props.electron_affinity < 1.5) {
            raise(ErrorKind::NonPositiveProperty,
                  origin + ": " + symbol + ".electron_affinity below the +1.5 shift floor");
        }
        if (props.valence != std::floor(props.valence) || props.valence < 1.0) {
            raise(ErrorKind::BadSchema,
                  origin + ": " + symbol + ".valence must be a positive integer");
        }
        table.rows_[static_cast<std::size_t>(*z - 1)] = props;
    }

    for (const auto& comment : csv.comments) {
        if (comment.rfind("version:", 0) == 0) {
            std::size_t start = comment.find_first_not_of(' ', 8);
            table.version_ = start == std::string::npos ? "" : comment.substr(start);
        } else if (comment.rfind("provenance", 0) == 0) {
            table.provenance_.push_back(comment);
        }
    }
    return table;
}

PropertyTable PropertyTable::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
    return load(in, path);
}

const PropertyTable& PropertyTable::builtin() {
    static const PropertyTable table = [] {
        std::istringstream in(builtin_element_table_csv());
        return load(in, "<builtin element table>");
    }();
    return table;
}

const ElementProperties& PropertyTable::lookup(std::string_view symbol) const {
    auto z = atomic_number(symbol);
    if (!z || *z > kMaxTableZ) {
        raise(ErrorKind::UnknownElement,
              "'" + std::string(symbol) + "' is not an element with Z <= 86");
    }
    return rows_[static_cast<std::size_t>(*z - 1)];
}

const ElementProperties& PropertyTable::lookup_z(int z) const {
    if (z < 1 || z > kMaxTableZ) {
        raise(ErrorKind::UnknownElement, "atomic number " + std::to_string(z) + " out of range");
    }
    return rows_[static_cast<std::size_t>(z - 1)];
}

bool PropertyTable::contains(std::string_view symbol) const {
    auto z = atomic_number(symbol);
    return z && *z <= kMaxTableZ;
}

std::string PropertyTable::serialize() const {
    std::ostringstream out;
    out << "# version: " << version_ << '\n';
    for (const auto& note : provenance_) out << "# " << note << '\n';
    out << "symbol";
    for (int p = 0; p < kPropertyCount; ++p) out << ',' << kColumns[p];
    out << '\n';
    for (int z = 1; z <= kMaxTableZ; ++z) {
        const ElementProperties& e = rows_[static_cast<std::size_t>(z - 1)];
        out << element_symbol(z);
        for (int p = 0; p < kPropertyCount; ++p) out << ',' << format_double(property_value(e, p));
        out << '\n';
    }
    return out.str();
}

}  // namespace supercon
