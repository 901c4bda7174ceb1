#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmsets {

// Raised when two values from different universes are combined. Subsets of
// distinct sample spaces are never comparable, even with identical labels.
class UniverseMismatchError : public std::invalid_argument {
public:
    UniverseMismatchError()
        : std::invalid_argument(
              "incompatible universes: operands belong to different sample spaces") {}
};

class SubsetVector;

// Ordered sample space of labeled outcomes. Label order fixes bit positions
// (label i sits at bit i), so a subset is a single machine word; n is capped
// at 64 for that reason. Identity, not label equality, decides whether two
// subsets belong to the same space: every make() call is a fresh space.
class Universe : public std::enable_shared_from_this<Universe> {
public:
    static std::shared_ptr<const Universe> make(std::vector<std::string> labels) {
        if (labels.empty() || labels.size() > 64) {
            throw std::invalid_argument("Universe: need between 1 and 64 labels");
        }
        for (const auto& label : labels) {
            if (label.empty() ||
                label.find_first_of("{},=#") != std::string::npos ||
                label.find_first_of(" \t\n") != std::string::npos) {
                throw std::invalid_argument("Universe: bad label '" + label + "'");
            }
        }
        auto sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("Universe: labels must be distinct");
        }
        return std::shared_ptr<const Universe>(new Universe(std::move(labels)));
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

    int index_of(std::string_view label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i] == label) return static_cast<int>(i);
        }
        throw std::invalid_argument("Universe: unknown label '" + std::string(label) +
                                    "'");
    }

    std::uint64_t all_bits() const {
        return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
    }

    SubsetVector empty_set() const;
    SubsetVector full_set() const;
    SubsetVector singleton(std::string_view label) const;
    SubsetVector singleton(int index) const;
    SubsetVector subset(std::initializer_list<std::string_view> labels) const;
    SubsetVector subset(const std::vector<std::string>& labels) const;
    SubsetVector from_bits(std::uint64_t bits) const;

private:
    explicit Universe(std::vector<std::string> labels) : labels_(std::move(labels)) {}

    std::vector<std::string> labels_;
};

using UniversePtr = std::shared_ptr<const Universe>;

// A subset of the universe, doubling as a GF(2) vector: bit i set iff the
// i-th outcome is a member.
class SubsetVector {
public:
    SubsetVector(UniversePtr universe, std::uint64_t bits)
        : universe_(std::move(universe)), bits_(bits) {
        if (!universe_) {
            throw std::invalid_argument("SubsetVector: null universe");
        }
        if (bits_ & ~universe_->all_bits()) {
            throw std::invalid_argument("SubsetVector: bits outside the universe");
        }
    }

    const UniversePtr& universe() const { return universe_; }
    std::uint64_t bits() const { return bits_; }
    int cardinality() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }

    bool contains(int index) const { return (bits_ >> index) & 1u; }
    bool contains(std::string_view label) const {
        return contains(universe_->index_of(label));
    }

    std::vector<std::string> members() const {
        std::vector<std::string> out;
        for (int i = 0; i < universe_->size(); ++i) {
            if (contains(i)) out.push_back(universe_->label(i));
        }
        return out;
    }

    // Index of the least member; -1 for the empty set.
    int least_element() const {
        return bits_ == 0 ? -1 : std::countr_zero(bits_);
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int i = 0; i < universe_->size(); ++i) {
            if (!contains(i)) continue;
            if (!first) out += ",";
            out += universe_->label(i);
            first = false;
        }
        out += "}";
        return out;
    }

    friend bool operator==(const SubsetVector& a, const SubsetVector& b) {
        require_same_universe(a, b);
        return a.bits_ == b.bits_;
    }
    friend bool operator!=(const SubsetVector& a, const SubsetVector& b) {
        return !(a == b);
    }

    friend std::ostream& operator<<(std::ostream& os, const SubsetVector& s) {
        return os << s.to_string();
    }

    static void require_same_universe(const SubsetVector& a, const SubsetVector& b) {
        if (a.universe_.get() != b.universe_.get()) {
            throw UniverseMismatchError();
        }
    }

private:
    UniversePtr universe_;
    std::uint64_t bits_;
};

inline SubsetVector Universe::empty_set() const { return from_bits(0); }

inline SubsetVector Universe::full_set() const { return from_bits(all_bits()); }

inline SubsetVector Universe::from_bits(std::uint64_t bits) const {
    return SubsetVector(shared_from_this(), bits);
}

inline SubsetVector Universe::singleton(int index) const {
    if (index < 0 || index >= size()) {
        throw std::invalid_argument("Universe: singleton index out of range");
    }
    return from_bits(std::uint64_t{1} << index);
}

inline SubsetVector Universe::singleton(std::string_view label) const {
    return singleton(index_of(label));
}

inline SubsetVector Universe::subset(std::initializer_list<std::string_view> labels) const {
    std::uint64_t bits = 0;
    for (auto label : labels) bits |= std::uint64_t{1} << index_of(label);
    return from_bits(bits);
}

inline SubsetVector Universe::subset(const std::vector<std::string>& labels) const {
    std::uint64_t bits = 0;
    for (const auto& label : labels) bits |= std::uint64_t{1} << index_of(label);
    return from_bits(bits);
}

// Vector addition = symmetric difference. (add, empty set) makes the power
// set an abelian group of exponent 2.
inline SubsetVector add(const SubsetVector& s, const SubsetVector& t) {
    SubsetVector::require_same_universe(s, t);
    return SubsetVector(s.universe(), s.bits() ^ t.bits());
}

inline SubsetVector intersect(const SubsetVector& s, const SubsetVector& t) {
    SubsetVector::require_same_universe(s, t);
    return SubsetVector(s.universe(), s.bits() & t.bits());
}

inline SubsetVector complement(const SubsetVector& s) {
    return SubsetVector(s.universe(), ~s.bits() & s.universe()->all_bits());
}

inline SubsetVector operator+(const SubsetVector& s, const SubsetVector& t) {
    return add(s, t);
}

inline SubsetVector operator&(const SubsetVector& s, const SubsetVector& t) {
    return intersect(s, t);
}

// Parses a set literal like "{a,c}" or "{}" against a universe.
inline SubsetVector parse_subset(const UniversePtr& universe, std::string_view text) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    std::string_view body = trim(text);
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
        throw std::invalid_argument("set literal must look like {a,b}: got '" +
                                    std::string(text) + "'");
    }
    body = trim(body.substr(1, body.size() - 2));
    std::uint64_t bits = 0;
    while (!body.empty()) {
        std::size_t comma = body.find(',');
        std::string_view item = trim(body.substr(0, comma));
        if (item.empty()) {
            throw std::invalid_argument("empty element in set literal '" +
                                        std::string(text) + "'");
        }
        const std::uint64_t bit = std::uint64_t{1} << universe->index_of(item);
        if (bits & bit) {
            throw std::invalid_argument("duplicate element '" + std::string(item) +
                                        "' in set literal");
        }
        bits |= bit;
        if (comma == std::string_view::npos) break;
        body = trim(body.substr(comma + 1));
        if (body.empty()) {
            throw std::invalid_argument("trailing comma in set literal '" +
                                        std::string(text) + "'");
        }
    }
    return universe->from_bits(bits);
}

}  // namespace qmsets
