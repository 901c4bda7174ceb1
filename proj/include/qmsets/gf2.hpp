#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmsets/universe.hpp"

namespace qmsets {

class SingularMatrixError : public std::domain_error {
public:
    SingularMatrixError()
        : std::domain_error("matrix is singular over GF(2)") {}
};

// Linear map between two n-dimensional GF(2) spaces, stored column-major:
// column j is the image of the j-th singleton of the domain. Rows and
// columns both fit one machine word since n <= 64.
class Gf2Matrix {
public:
    static Gf2Matrix identity(UniversePtr universe) {
        std::vector<std::uint64_t> cols(static_cast<std::size_t>(universe->size()));
        for (int j = 0; j < universe->size(); ++j) {
            cols[static_cast<std::size_t>(j)] = std::uint64_t{1} << j;
        }
        return Gf2Matrix(universe, universe, std::move(cols));
    }

    // Images of the domain singletons, given as subsets of the codomain.
    // Domain defaults to the codomain (an endomorphism).
    static Gf2Matrix from_columns(std::vector<SubsetVector> images,
                                  UniversePtr domain = nullptr) {
        if (images.empty()) {
            throw std::invalid_argument("Gf2Matrix: no columns");
        }
        UniversePtr codomain = images.front().universe();
        for (const auto& image : images) {
            SubsetVector::require_same_universe(image, images.front());
        }
        if (!domain) domain = codomain;
        if (static_cast<int>(images.size()) != domain->size() ||
            domain->size() != codomain->size()) {
            throw std::invalid_argument(
                "Gf2Matrix: need exactly n columns over an equal-dimension universe");
        }
        std::vector<std::uint64_t> cols;
        cols.reserve(images.size());
        for (const auto& image : images) cols.push_back(image.bits());
        return Gf2Matrix(std::move(domain), std::move(codomain), std::move(cols));
    }

    // Row-major 0/1 entries.
    static Gf2Matrix from_rows(UniversePtr universe,
                               const std::vector<std::vector<int>>& rows) {
        const int n = universe->size();
        if (static_cast<int>(rows.size()) != n) {
            throw std::invalid_argument("Gf2Matrix: need n rows");
        }
        std::vector<std::uint64_t> cols(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
                throw std::invalid_argument("Gf2Matrix: ragged row");
            }
            for (int j = 0; j < n; ++j) {
                const int e = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (e != 0 && e != 1) {
                    throw std::invalid_argument("Gf2Matrix: entries must be 0 or 1");
                }
                if (e) cols[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
            }
        }
        return Gf2Matrix(universe, universe, std::move(cols));
    }

    int dimension() const { return domain_->size(); }
    const UniversePtr& domain() const { return domain_; }
    const UniversePtr& codomain() const { return codomain_; }

    SubsetVector column(int j) const {
        return codomain_->from_bits(cols_.at(static_cast<std::size_t>(j)));
    }

    std::vector<SubsetVector> columns() const {
        std::vector<SubsetVector> out;
        out.reserve(cols_.size());
        for (int j = 0; j < dimension(); ++j) out.push_back(column(j));
        return out;
    }

    // GF(2)-linear action: xor of the columns selected by s.
    SubsetVector apply(const SubsetVector& s) const {
        if (s.universe().get() != domain_.get()) {
            throw UniverseMismatchError();
        }
        std::uint64_t acc = 0;
        std::uint64_t rest = s.bits();
        while (rest) {
            const int j = std::countr_zero(rest);
            acc ^= cols_[static_cast<std::size_t>(j)];
            rest &= rest - 1;
        }
        return codomain_->from_bits(acc);
    }

    int rank() const {
        std::vector<std::uint64_t> rows = row_masks();
        const int n = dimension();
        int rank = 0;
        for (int col = 0; col < n; ++col) {
            const std::uint64_t probe = std::uint64_t{1} << col;
            int pivot = -1;
            for (int i = rank; i < n; ++i) {
                if (rows[static_cast<std::size_t>(i)] & probe) {
                    pivot = i;
                    break;
                }
            }
            if (pivot < 0) continue;
            std::swap(rows[static_cast<std::size_t>(pivot)], rows[static_cast<std::size_t>(rank)]);
            for (int i = 0; i < n; ++i) {
                if (i != rank && (rows[static_cast<std::size_t>(i)] & probe)) {
                    rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(rank)];
                }
            }
            ++rank;
        }
        return rank;
    }

    bool is_nonsingular() const { return rank() == dimension(); }

    // Gauss-Jordan with an augmented identity. The inverse maps codomain
    // back to domain.
    Gf2Matrix inverse() const {
        const int n = dimension();
        std::vector<std::uint64_t> rows = row_masks();
        std::vector<std::uint64_t> aug(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) aug[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;

        for (int col = 0; col < n; ++col) {
            const std::uint64_t probe = std::uint64_t{1} << col;
            int pivot = -1;
            for (int i = col; i < n; ++i) {
                if (rows[static_cast<std::size_t>(i)] & probe) {
                    pivot = i;
                    break;
                }
            }
            if (pivot < 0) throw SingularMatrixError();
            std::swap(rows[static_cast<std::size_t>(pivot)], rows[static_cast<std::size_t>(col)]);
            std::swap(aug[static_cast<std::size_t>(pivot)], aug[static_cast<std::size_t>(col)]);
            for (int i = 0; i < n; ++i) {
                if (i != col && (rows[static_cast<std::size_t>(i)] & probe)) {
                    rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(col)];
                    aug[static_cast<std::size_t>(i)] ^= aug[static_cast<std::size_t>(col)];
                }
            }
        }
        // aug now holds the inverse in row form; flip it to columns.
        std::vector<std::uint64_t> inv_cols(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if ((aug[static_cast<std::size_t>(i)] >> j) & 1u) {
                    inv_cols[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
                }
            }
        }
        return Gf2Matrix(codomain_, domain_, std::move(inv_cols));
    }

    // Unique x with apply(x) = b; requires a non-singular matrix.
    SubsetVector solve(const SubsetVector& b) const {
        if (b.universe().get() != codomain_.get()) {
            throw UniverseMismatchError();
        }
        return inverse().apply(b);
    }

    // Composition this . rhs (apply rhs first).
    Gf2Matrix multiply(const Gf2Matrix& rhs) const {
        if (rhs.codomain_.get() != domain_.get()) {
            throw UniverseMismatchError();
        }
        std::vector<std::uint64_t> cols;
        cols.reserve(rhs.cols_.size());
        for (int j = 0; j < rhs.dimension(); ++j) {
            cols.push_back(apply(domain_->from_bits(rhs.cols_[static_cast<std::size_t>(j)])).bits());
        }
        return Gf2Matrix(rhs.domain_, codomain_, std::move(cols));
    }

    // t-fold composition by repeated squaring; requires domain == codomain.
    Gf2Matrix pow(std::uint64_t t) const {
        require_endomorphism();
        Gf2Matrix result = identity(domain_);
        Gf2Matrix base = *this;
        while (t) {
            if (t & 1u) result = base.multiply(result);
            base = base.multiply(base);
            t >>= 1;
        }
        return result;
    }

    // Cycle decomposition of the nonzero vectors under repeated application.
    // Each cycle starts at its least bitmask; cycles are ordered by that
    // representative. Enumerates all 2^n - 1 nonzero vectors, so n is capped
    // well below the 64-bit type limit.
    std::vector<std::vector<SubsetVector>> orbits() const {
        require_endomorphism();
        if (dimension() > 24) {
            throw std::domain_error(
                "orbit enumeration visits 2^n - 1 vectors; n must be <= 24");
        }
        if (!is_nonsingular()) throw SingularMatrixError();
        const std::uint64_t total = domain_->all_bits();
        std::vector<bool> visited(static_cast<std::size_t>(total) + 1, false);
        std::vector<std::vector<SubsetVector>> cycles;
        for (std::uint64_t v = 1; v <= total; ++v) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            // Ascending scan: v is the least member of its cycle.
            std::vector<SubsetVector> cycle;
            std::uint64_t w = v;
            do {
                visited[static_cast<std::size_t>(w)] = true;
                cycle.push_back(domain_->from_bits(w));
                w = apply(domain_->from_bits(w)).bits();
            } while (w != v);
            cycles.push_back(std::move(cycle));
        }
        return cycles;
    }

    friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) {
        return a.domain_.get() == b.domain_.get() &&
               a.codomain_.get() == b.codomain_.get() && a.cols_ == b.cols_;
    }

private:
    Gf2Matrix(UniversePtr domain, UniversePtr codomain, std::vector<std::uint64_t> cols)
        : domain_(std::move(domain)),
          codomain_(std::move(codomain)),
          cols_(std::move(cols)) {}

    void require_endomorphism() const {
        if (domain_.get() != codomain_.get()) {
            throw std::invalid_argument("operation needs domain == codomain");
        }
    }

    // Row i as a mask over columns.
    std::vector<std::uint64_t> row_masks() const {
        const int n = dimension();
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < n; ++j) {
            std::uint64_t col = cols_[static_cast<std::size_t>(j)];
            while (col) {
                const int i = std::countr_zero(col);
                rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
                col &= col - 1;
            }
        }
        return rows;
    }

    UniversePtr domain_;
    UniversePtr codomain_;
    std::vector<std::uint64_t> cols_;
};

inline bool is_nonsingular(const Gf2Matrix& m) { return m.is_nonsingular(); }

inline SubsetVector apply(const Gf2Matrix& m, const SubsetVector& s) {
    return m.apply(s);
}

inline SubsetVector solve(const Gf2Matrix& m, const SubsetVector& b) {
    return m.solve(b);
}

inline std::vector<std::vector<SubsetVector>> orbits(const Gf2Matrix& m) {
    return m.orbits();
}

}  // namespace qmsets
