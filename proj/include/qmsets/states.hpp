#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmsets/gf2.hpp"
#include "qmsets/universe.hpp"

namespace qmsets {

class DependentBasisError : public std::domain_error {
public:
    explicit DependentBasisError(const std::string& what) : std::domain_error(what) {}
};

// An ordered basis of the subset space. Element j plays the singleton
// {u'_j} of a fresh coordinate universe, so coordinates with respect to two
// different bases can never be mixed by accident. Coordinate labels derive
// from the basis name: "U" + suffix appends the suffix to each label
// (U' gives a', b', ...), any other name is appended after an underscore.
class Basis {
public:
    static Basis make(std::string name, std::vector<SubsetVector> vectors) {
        if (vectors.empty()) {
            throw std::invalid_argument("Basis: no vectors");
        }
        const UniversePtr universe = vectors.front().universe();
        if (static_cast<int>(vectors.size()) != universe->size()) {
            throw std::invalid_argument("Basis '" + name + "': need exactly " +
                                        std::to_string(universe->size()) + " vectors");
        }
        Gf2Matrix expand = Gf2Matrix::from_columns(vectors, coordinate_universe_for(name, universe));
        if (!expand.is_nonsingular()) {
            throw DependentBasisError("Basis '" + name + "': " +
                                      name_dependent_vector(vectors) +
                                      " depends on the other vectors");
        }
        return Basis(std::move(name), universe, std::move(vectors), expand.inverse());
    }

    // The U-basis of singletons over the universe itself; coordinates and
    // subsets coincide.
    static Basis standard(const UniversePtr& universe, std::string name = "U") {
        std::vector<SubsetVector> vectors;
        for (int i = 0; i < universe->size(); ++i) vectors.push_back(universe->singleton(i));
        Gf2Matrix ident = Gf2Matrix::identity(universe);
        return Basis(std::move(name), universe, std::move(vectors), std::move(ident));
    }

    const std::string& name() const { return name_; }
    const UniversePtr& universe() const { return universe_; }
    const std::vector<SubsetVector>& vectors() const { return vectors_; }
    const UniversePtr& coordinate_universe() const { return to_coords_.codomain(); }

    // Coordinates of a U-basis subset with respect to this basis, as a
    // subset of the coordinate universe.
    SubsetVector coordinates_of(const SubsetVector& u_subset) const {
        return to_coords_.apply(u_subset);
    }

    // Inverse of coordinates_of: xor together the selected basis vectors.
    SubsetVector expand(const SubsetVector& coords) const {
        if (coords.universe().get() != coordinate_universe().get()) {
            throw UniverseMismatchError();
        }
        SubsetVector acc = universe_->empty_set();
        for (int j = 0; j < universe_->size(); ++j) {
            if (coords.contains(j)) acc = add(acc, vectors_[static_cast<std::size_t>(j)]);
        }
        return acc;
    }

private:
    Basis(std::string name, UniversePtr universe, std::vector<SubsetVector> vectors,
          Gf2Matrix to_coords)
        : name_(std::move(name)),
          universe_(std::move(universe)),
          vectors_(std::move(vectors)),
          to_coords_(std::move(to_coords)) {}

    static UniversePtr coordinate_universe_for(const std::string& name,
                                               const UniversePtr& universe) {
        std::string suffix;
        if (!name.empty() && name.front() == 'U') {
            suffix = name.substr(1);
        } else {
            suffix = "_" + name;
        }
        std::vector<std::string> labels;
        labels.reserve(static_cast<std::size_t>(universe->size()));
        for (const auto& label : universe->labels()) labels.push_back(label + suffix);
        return Universe::make(std::move(labels));
    }

    // Finds the first vector in the span of its predecessors, for the
    // error message.
    static std::string name_dependent_vector(const std::vector<SubsetVector>& vectors) {
        std::uint64_t pivots[64] = {};
        for (const auto& vector : vectors) {
            std::uint64_t v = vector.bits();
            while (v) {
                const int b = std::countr_zero(v);
                if (pivots[b] == 0) {
                    pivots[b] = v;
                    break;
                }
                v ^= pivots[b];
            }
            if (v == 0) return vector.to_string();
        }
        return vectors.back().to_string();
    }

    std::string name_;
    UniversePtr universe_;
    std::vector<SubsetVector> vectors_;
    Gf2Matrix to_coords_;
};

// Basis-free vector of the subset space; the U-basis subset is its
// canonical internal form. Views in other bases are computed on demand.
struct Ket {
    SubsetVector coords;

    const UniversePtr& universe() const { return coords.universe(); }

    friend bool operator==(const Ket& a, const Ket& b) { return a.coords == b.coords; }
};

inline SubsetVector express(const Ket& k, const Basis& basis) {
    if (k.universe().get() != basis.universe().get()) {
        throw UniverseMismatchError();
    }
    return basis.coordinates_of(k.coords);
}

// <T|_U S> = |T intersect S|: the overlap count. Defined only between
// U-basis expressions; not linear over GF(2) addition.
inline int bracket(const SubsetVector& t, const SubsetVector& s) {
    return intersect(t, s).cardinality();
}

inline int norm_squared(const SubsetVector& s) { return s.cardinality(); }

// Display-grade only; decisions should use norm_squared.
inline double norm(const SubsetVector& s) {
    return std::sqrt(static_cast<double>(norm_squared(s)));
}

// One row per abstract ket, one column per basis.
struct KetTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<SubsetVector>> rows;
};

// Rows run through all 2^n kets, largest sets first and label-lexicographic
// within one cardinality.
inline KetTable ket_table(const std::vector<Basis>& bases) {
    if (bases.empty()) {
        throw std::invalid_argument("ket_table: need at least one basis");
    }
    const UniversePtr universe = bases.front().universe();
    for (const auto& basis : bases) {
        if (basis.universe().get() != universe.get()) {
            throw UniverseMismatchError();
        }
    }
    if (universe->size() > 20) {
        throw std::domain_error("ket_table: 2^n rows; n must be <= 20");
    }

    std::vector<SubsetVector> kets;
    kets.reserve(std::size_t{1} << universe->size());
    for (std::uint64_t bits = 0; bits <= universe->all_bits(); ++bits) {
        kets.push_back(universe->from_bits(bits));
    }
    std::sort(kets.begin(), kets.end(), [](const SubsetVector& a, const SubsetVector& b) {
        if (a.cardinality() != b.cardinality()) return a.cardinality() > b.cardinality();
        return a.members() < b.members();
    });

    KetTable table;
    for (const auto& basis : bases) table.column_names.push_back(basis.name());
    for (const auto& ket : kets) {
        std::vector<SubsetVector> row;
        row.reserve(bases.size());
        for (const auto& basis : bases) {
            row.push_back(express(Ket{ket}, basis));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace qmsets
