#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "qoc1d/core/grid.hpp"

namespace qoc1d::lattice {

/// Complete enumeration of L-site occupation vectors with N particles,
/// ordered lexicographically descending; dimension C(N+L-1, L-1).
class FockBasis final : public Basis {
public:
    static constexpr std::size_t default_dim_cap = 4'000'000;

    FockBasis(int n_sites, int n_particles, std::size_t dim_cap = default_dim_cap);

    int n_sites() const { return n_sites_; }
    int n_particles() const { return n_particles_; }

    BasisTag tag() const override { return BasisTag::fock; }
    Eigen::Index dim() const override { return static_cast<Eigen::Index>(states_.size()); }
    double quadrature_weight() const override { return 1.0; }
    bool compatible(const Basis& other) const override;

    const std::vector<int>& state(Eigen::Index i) const { return states_[i]; }
    const std::vector<std::vector<int>>& states() const { return states_; }

    /// Ordinal of an occupation vector; throws if it is not in the basis.
    Eigen::Index index_of(const std::vector<int>& occupation) const;

private:
    int n_sites_, n_particles_;
    std::vector<std::vector<int>> states_;

    struct VecHash {
        std::size_t operator()(const std::vector<int>& v) const;
    };
    std::unordered_map<std::vector<int>, Eigen::Index, VecHash> index_;
};

std::shared_ptr<const FockBasis> make_fock_basis(int n_sites, int n_particles);

/// C(N+L-1, L-1) guarded against overflow.
std::uint64_t fock_dimension(int n_sites, int n_particles);

} // namespace qoc1d::lattice
