#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmsets/rational.hpp"
#include "qmsets/universe.hpp"

namespace qmsets {

// Partition of the universe into disjoint nonempty blocks. Blocks are kept
// sorted by least element so equality is structural.
class Partition {
public:
    static Partition make(std::vector<SubsetVector> blocks) {
        if (blocks.empty()) {
            throw std::invalid_argument("Partition: no blocks");
        }
        const UniversePtr universe = blocks.front().universe();
        std::uint64_t seen = 0;
        for (const auto& block : blocks) {
            SubsetVector::require_same_universe(block, blocks.front());
            if (block.empty()) {
                throw std::invalid_argument("Partition: empty block");
            }
            if (seen & block.bits()) {
                throw std::invalid_argument("Partition: blocks overlap");
            }
            seen |= block.bits();
        }
        if (seen != universe->all_bits()) {
            throw std::invalid_argument("Partition: blocks do not cover the universe");
        }
        std::sort(blocks.begin(), blocks.end(),
                  [](const SubsetVector& a, const SubsetVector& b) {
                      return a.least_element() < b.least_element();
                  });
        return Partition(universe, std::move(blocks));
    }

    // The discrete partition of singletons; makes every distinction.
    static Partition discrete(const UniversePtr& universe) {
        std::vector<SubsetVector> blocks;
        for (int i = 0; i < universe->size(); ++i) blocks.push_back(universe->singleton(i));
        return Partition(universe, std::move(blocks));
    }

    // The indiscrete partition {U}; makes none.
    static Partition indiscrete(const UniversePtr& universe) {
        std::vector<SubsetVector> blocks{universe->full_set()};
        return Partition(universe, std::move(blocks));
    }

    const UniversePtr& universe() const { return universe_; }
    const std::vector<SubsetVector>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    const SubsetVector& block_containing(int index) const {
        for (const auto& block : blocks_) {
            if (block.contains(index)) return block;
        }
        throw std::invalid_argument("Partition: index out of range");
    }

    bool is_discrete() const { return block_count() == universe_->size(); }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i) out += ",";
            out += blocks_[i].to_string();
        }
        out += "}";
        return out;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        if (a.universe_.get() != b.universe_.get()) {
            throw UniverseMismatchError();
        }
        if (a.blocks_.size() != b.blocks_.size()) return false;
        for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
            if (a.blocks_[i].bits() != b.blocks_[i].bits()) return false;
        }
        return true;
    }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Partition& p) {
        return os << p.to_string();
    }

private:
    Partition(UniversePtr universe, std::vector<SubsetVector> blocks)
        : universe_(std::move(universe)), blocks_(std::move(blocks)) {}

    UniversePtr universe_;
    std::vector<SubsetVector> blocks_;
};

// Set of ordered pairs over U x U as an n^2-bit mask; pair (i,j) sits at
// bit i*n + j. Holds dit relations and their indit complements alike.
class DitSet {
public:
    DitSet(UniversePtr universe, std::vector<std::uint64_t> words)
        : universe_(std::move(universe)), words_(std::move(words)) {}

    static DitSet empty(const UniversePtr& universe) {
        const int n = universe->size();
        return DitSet(universe, std::vector<std::uint64_t>(word_count(n), 0));
    }

    const UniversePtr& universe() const { return universe_; }

    bool contains(int i, int j) const {
        const std::size_t bit = pair_bit(i, j);
        return (words_[bit >> 6] >> (bit & 63)) & 1u;
    }

    void insert(int i, int j) {
        const std::size_t bit = pair_bit(i, j);
        words_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
    }

    // Number of ordered pairs in the relation.
    std::size_t count() const {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    DitSet complement_in_square() const {
        const int n = universe_->size();
        DitSet out = empty(universe_);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (!contains(i, j)) out.insert(i, j);
            }
        }
        return out;
    }

    bool subset_of(const DitSet& other) const {
        if (universe_.get() != other.universe_.get()) {
            throw UniverseMismatchError();
        }
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] & ~other.words_[w]) return false;
        }
        return true;
    }

    std::vector<std::pair<std::string, std::string>> pairs() const {
        std::vector<std::pair<std::string, std::string>> out;
        const int n = universe_->size();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (contains(i, j)) out.emplace_back(universe_->label(i), universe_->label(j));
            }
        }
        return out;
    }

    friend bool operator==(const DitSet& a, const DitSet& b) {
        return a.universe_.get() == b.universe_.get() && a.words_ == b.words_;
    }

private:
    std::size_t pair_bit(int i, int j) const {
        const int n = universe_->size();
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw std::invalid_argument("DitSet: pair index out of range");
        }
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j);
    }

    static std::size_t word_count(int n) {
        return (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 63) / 64;
    }

    UniversePtr universe_;
    std::vector<std::uint64_t> words_;
};

// Ordered pairs (u,u') lying in distinct blocks: the distinctions of pi.
inline DitSet dit_set(const Partition& pi) {
    DitSet out = DitSet::empty(pi.universe());
    const int n = pi.universe()->size();
    for (int i = 0; i < n; ++i) {
        const SubsetVector& block = pi.block_containing(i);
        for (int j = 0; j < n; ++j) {
            if (!block.contains(j)) out.insert(i, j);
        }
    }
    return out;
}

// Complement of the dit set in U x U: the equivalence relation of pi,
// diagonal included.
inline DitSet indit_set(const Partition& pi) {
    return dit_set(pi).complement_in_square();
}

// pi refines sigma when every block of pi sits inside a block of sigma;
// equivalently dit(sigma) is contained in dit(pi).
inline bool refines(const Partition& pi, const Partition& sigma) {
    if (pi.universe().get() != sigma.universe().get()) {
        throw UniverseMismatchError();
    }
    for (const auto& block : pi.blocks()) {
        const SubsetVector& host = sigma.block_containing(block.least_element());
        if (block.bits() & ~host.bits()) return false;
    }
    return true;
}

// Join: blocks are the nonempty pairwise intersections. Least upper bound
// in the refinement order.
inline Partition join(const Partition& pi, const Partition& sigma) {
    if (pi.universe().get() != sigma.universe().get()) {
        throw UniverseMismatchError();
    }
    std::vector<SubsetVector> blocks;
    for (const auto& b : pi.blocks()) {
        for (const auto& c : sigma.blocks()) {
            SubsetVector meet = intersect(b, c);
            if (!meet.empty()) blocks.push_back(meet);
        }
    }
    return Partition::make(std::move(blocks));
}

// h(pi) = |dit(pi)| / |U x U|: normalized counting measure on distinctions.
inline Rational logical_entropy(const Partition& pi) {
    const std::int64_t n = pi.universe()->size();
    return Rational(static_cast<std::int64_t>(dit_set(pi).count()), n * n);
}

// All Bell(n) partitions via restricted growth strings in lexicographic
// order; that order is the canonical enumeration.
inline std::vector<Partition> enumerate_partitions(const UniversePtr& universe) {
    const int n = universe->size();
    if (n > 10) {
        throw std::domain_error("enumerate_partitions: n must be <= 10");
    }
    std::vector<Partition> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    const auto emit = [&] {
        int block_count = 0;
        for (int v : rgs) block_count = std::max(block_count, v + 1);
        std::vector<std::uint64_t> masks(static_cast<std::size_t>(block_count), 0);
        for (int i = 0; i < n; ++i) {
            masks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])] |=
                std::uint64_t{1} << i;
        }
        std::vector<SubsetVector> blocks;
        blocks.reserve(masks.size());
        for (auto mask : masks) blocks.push_back(universe->from_bits(mask));
        out.push_back(Partition::make(std::move(blocks)));
    };
    // rgs[0] = 0 always; position i may use any value up to max(previous)+1.
    const auto step = [&](auto&& self, int i, int max_used) -> void {
        if (i == n) {
            emit();
            return;
        }
        for (int v = 0; v <= max_used + 1; ++v) {
            rgs[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, std::max(max_used, v));
        }
    };
    step(step, 1, 0);
    return out;
}

// Parses "{{a},{b,c}}" against a universe.
inline Partition parse_partition(const UniversePtr& universe, std::string_view text) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    std::string_view body = trim(text);
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
        throw std::invalid_argument("partition literal must look like {{a},{b,c}}");
    }
    body = trim(body.substr(1, body.size() - 2));
    std::vector<SubsetVector> blocks;
    while (!body.empty()) {
        if (body.front() == ',') body = trim(body.substr(1));
        const std::size_t open = body.find('{');
        const std::size_t close = body.find('}');
        if (open != 0 || close == std::string_view::npos) {
            throw std::invalid_argument("partition literal must look like {{a},{b,c}}");
        }
        blocks.push_back(parse_subset(universe, body.substr(0, close + 1)));
        body = trim(body.substr(close + 1));
    }
    return Partition::make(std::move(blocks));
}

}  // namespace qmsets
