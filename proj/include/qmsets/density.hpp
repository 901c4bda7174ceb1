#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmsets/observables.hpp"
#include "qmsets/partition.hpp"
#include "qmsets/rational.hpp"
#include "qmsets/universe.hpp"

namespace qmsets {

// Plain n x n exact-rational matrix, row/column order = universe label
// order. No floating arithmetic anywhere in this module.
class RationalMatrix {
public:
    static RationalMatrix zero(UniversePtr universe) {
        const int n = universe->size();
        return RationalMatrix(std::move(universe),
                              std::vector<Rational>(static_cast<std::size_t>(n) *
                                                    static_cast<std::size_t>(n)));
    }

    static RationalMatrix identity(const UniversePtr& universe) {
        RationalMatrix m = zero(universe);
        for (int i = 0; i < universe->size(); ++i) m.at(i, i) = Rational(1);
        return m;
    }

    const UniversePtr& universe() const { return universe_; }
    int dimension() const { return universe_->size(); }

    const Rational& at(int i, int j) const {
        return entries_[index(i, j)];
    }
    Rational& at(int i, int j) { return entries_[index(i, j)]; }

    Rational trace() const {
        Rational sum(0);
        for (int i = 0; i < dimension(); ++i) sum += at(i, i);
        return sum;
    }

    bool is_symmetric() const {
        for (int i = 0; i < dimension(); ++i) {
            for (int j = i + 1; j < dimension(); ++j) {
                if (at(i, j) != at(j, i)) return false;
            }
        }
        return true;
    }

    RationalMatrix multiply(const RationalMatrix& rhs) const {
        require_same_universe(rhs);
        RationalMatrix out = zero(universe_);
        const int n = dimension();
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                const Rational& a = at(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    out.at(i, j) += a * rhs.at(k, j);
                }
            }
        }
        return out;
    }

    RationalMatrix plus(const RationalMatrix& rhs) const {
        require_same_universe(rhs);
        RationalMatrix out = *this;
        for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
        return out;
    }

    RationalMatrix scaled(const Rational& factor) const {
        RationalMatrix out = *this;
        for (auto& entry : out.entries_) entry *= factor;
        return out;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.universe_.get() != b.universe_.get()) {
            throw UniverseMismatchError();
        }
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const RationalMatrix& a, const RationalMatrix& b) {
        return !(a == b);
    }

private:
    RationalMatrix(UniversePtr universe, std::vector<Rational> entries)
        : universe_(std::move(universe)), entries_(std::move(entries)) {}

    std::size_t index(int i, int j) const {
        const int n = dimension();
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw std::invalid_argument("RationalMatrix: index out of range");
        }
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j);
    }

    void require_same_universe(const RationalMatrix& rhs) const {
        if (universe_.get() != rhs.universe_.get()) {
            throw UniverseMismatchError();
        }
    }

    UniversePtr universe_;
    std::vector<Rational> entries_;
};

// Symmetric, trace-1, entrywise nonnegative rational matrix; the validated
// state of this calculus.
class DensityMatrix {
public:
    static DensityMatrix from_matrix(RationalMatrix matrix) {
        if (!matrix.is_symmetric()) {
            throw std::invalid_argument("DensityMatrix: not symmetric");
        }
        if (matrix.trace() != Rational(1)) {
            throw std::invalid_argument("DensityMatrix: trace is " +
                                        matrix.trace().str() + ", not 1");
        }
        for (int i = 0; i < matrix.dimension(); ++i) {
            for (int j = 0; j < matrix.dimension(); ++j) {
                if (matrix.at(i, j) < Rational(0)) {
                    throw std::invalid_argument("DensityMatrix: negative entry");
                }
            }
        }
        return DensityMatrix(std::move(matrix));
    }

    const RationalMatrix& matrix() const { return matrix_; }
    const UniversePtr& universe() const { return matrix_.universe(); }
    int dimension() const { return matrix_.dimension(); }
    const Rational& at(int i, int j) const { return matrix_.at(i, j); }

    friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) {
        return a.matrix_ == b.matrix_;
    }
    friend bool operator!=(const DensityMatrix& a, const DensityMatrix& b) {
        return !(a == b);
    }

private:
    explicit DensityMatrix(RationalMatrix matrix) : matrix_(std::move(matrix)) {}

    RationalMatrix matrix_;
};

// Diagonal projection matrix P_B: entry (i,i) = 1 iff u_i in B. Idempotent
// and symmetric by construction.
class ProjectorMatrix {
public:
    explicit ProjectorMatrix(SubsetVector block) : block_(std::move(block)) {}

    const SubsetVector& block() const { return block_; }
    const UniversePtr& universe() const { return block_.universe(); }

    RationalMatrix to_matrix() const {
        RationalMatrix out = RationalMatrix::zero(universe());
        for (int i = 0; i < universe()->size(); ++i) {
            if (block_.contains(i)) out.at(i, i) = Rational(1);
        }
        return out;
    }

    // P rho P: keeps the rows and columns of the block, zeroes the rest.
    RationalMatrix conjugate(const RationalMatrix& rho) const {
        if (rho.universe().get() != universe().get()) {
            throw UniverseMismatchError();
        }
        RationalMatrix out = RationalMatrix::zero(rho.universe());
        for (int i = 0; i < rho.dimension(); ++i) {
            if (!block_.contains(i)) continue;
            for (int j = 0; j < rho.dimension(); ++j) {
                if (block_.contains(j)) out.at(i, j) = rho.at(i, j);
            }
        }
        return out;
    }

private:
    SubsetVector block_;
};

// rho(B): the pure-state density matrix, entry (j,k) = chi_B(j) chi_B(k) / |B|.
inline DensityMatrix rho_block(const SubsetVector& block) {
    if (block.empty()) throw EmptyStateError();
    RationalMatrix m = RationalMatrix::zero(block.universe());
    const Rational weight(1, block.cardinality());
    for (int i = 0; i < block.universe()->size(); ++i) {
        if (!block.contains(i)) continue;
        for (int j = 0; j < block.universe()->size(); ++j) {
            if (block.contains(j)) m.at(i, j) = weight;
        }
    }
    return DensityMatrix::from_matrix(std::move(m));
}

// rho(pi) = sum of p_B rho(B) with p_B = |B|/n. The same matrix is the
// indit incidence matrix scaled by 1/n; both routes are computed and must
// agree.
inline DensityMatrix rho_partition(const Partition& pi) {
    const UniversePtr& universe = pi.universe();
    const int n = universe->size();

    RationalMatrix weighted = RationalMatrix::zero(universe);
    for (const auto& block : pi.blocks()) {
        weighted = weighted.plus(
            rho_block(block).matrix().scaled(Rational(block.cardinality(), n)));
    }

    RationalMatrix incidence = RationalMatrix::zero(universe);
    const DitSet indits = indit_set(pi);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (indits.contains(i, j)) incidence.at(i, j) = Rational(1, n);
        }
    }

    if (weighted != incidence) {
        throw std::logic_error("rho_partition: block-sum and indit constructions differ");
    }
    return DensityMatrix::from_matrix(std::move(weighted));
}

// tr[P_B rho(S)] = |B intersect S| / |S|: the Born probability read off a
// genuine matrix product trace.
inline Rational prob_via_trace(const SubsetVector& block, const SubsetVector& state) {
    SubsetVector::require_same_universe(block, state);
    if (state.empty()) throw EmptyStateError();
    const RationalMatrix product =
        ProjectorMatrix(block).to_matrix().multiply(rho_block(state).matrix());
    return product.trace();
}

// The measurement superoperator: rho(S) -> sum over r of P_{f^-1(r)} rho(S)
// P_{f^-1(r)}. Coherences across distinct eigenvalue blocks vanish.
inline DensityMatrix measure_density(const Attribute& f, const SubsetVector& state) {
    if (state.universe().get() != f.universe().get()) {
        throw UniverseMismatchError();
    }
    if (state.empty()) throw EmptyStateError();
    const RationalMatrix rho = rho_block(state).matrix();
    RationalMatrix out = RationalMatrix::zero(state.universe());
    for (const auto& r : f.spectrum()) {
        out = out.plus(ProjectorMatrix(f.preimage(r)).conjugate(rho));
    }
    return DensityMatrix::from_matrix(std::move(out));
}

// The join as a superoperator: sum over C in sigma of P_C rho(pi) P_C,
// which equals rho(pi join sigma).
inline DensityMatrix join_via_density(const Partition& pi, const Partition& sigma) {
    if (pi.universe().get() != sigma.universe().get()) {
        throw UniverseMismatchError();
    }
    const RationalMatrix rho = rho_partition(pi).matrix();
    RationalMatrix out = RationalMatrix::zero(pi.universe());
    for (const auto& block : sigma.blocks()) {
        out = out.plus(ProjectorMatrix(block).conjugate(rho));
    }
    return DensityMatrix::from_matrix(std::move(out));
}

}  // namespace qmsets
