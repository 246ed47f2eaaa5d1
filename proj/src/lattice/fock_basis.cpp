#include "qoc1d/lattice/fock_basis.hpp"

#include <stdexcept>

#include "qoc1d/core/errors.hpp"

namespace qoc1d::lattice {

std::uint64_t fock_dimension(int n_sites, int n_particles) {
    // C(N+L-1, L-1) via the multiplicative formula, watching for overflow.
    const std::uint64_t n = static_cast<std::uint64_t>(n_particles) + n_sites - 1;
    std::uint64_t k = static_cast<std::uint64_t>(n_sites) - 1;
    if (k > n - k)
        k = n - k;
    __uint128_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > static_cast<__uint128_t>(UINT64_MAX))
            throw CapacityError("fock_dimension: binomial coefficient overflow");
    }
    return static_cast<std::uint64_t>(result);
}

std::size_t FockBasis::VecHash::operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
        h ^= static_cast<std::size_t>(x);
        h *= 1099511628211ull;
    }
    return h;
}

FockBasis::FockBasis(int n_sites, int n_particles, std::size_t dim_cap)
    : n_sites_(n_sites), n_particles_(n_particles) {
    if (n_sites < 1 || n_particles < 1)
        throw std::invalid_argument("FockBasis: need at least one site and one particle");

    const std::uint64_t dim = fock_dimension(n_sites, n_particles);
    if (dim > dim_cap)
        throw CapacityError("FockBasis: dimension " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(dim_cap));

    states_.reserve(dim);
    std::vector<int> occ(n_sites, 0);
    // Lexicographically descending enumeration.
    const auto generate = [&](auto&& self, int site, int remaining) -> void {
        if (site == n_sites - 1) {
            occ[site] = remaining;
            states_.push_back(occ);
            return;
        }
        for (int c = remaining; c >= 0; --c) {
            occ[site] = c;
            self(self, site + 1, remaining - c);
        }
    };
    generate(generate, 0, n_particles);

    index_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i)
        index_.emplace(states_[i], static_cast<Eigen::Index>(i));
}

bool FockBasis::compatible(const Basis& other) const {
    if (other.tag() != BasisTag::fock)
        return false;
    const auto& b = static_cast<const FockBasis&>(other);
    return b.n_sites_ == n_sites_ && b.n_particles_ == n_particles_;
}

Eigen::Index FockBasis::index_of(const std::vector<int>& occupation) const {
    const auto it = index_.find(occupation);
    if (it == index_.end())
        throw std::invalid_argument("FockBasis: occupation vector not in basis");
    return it->second;
}

std::shared_ptr<const FockBasis> make_fock_basis(int n_sites, int n_particles) {
    return std::make_shared<const FockBasis>(n_sites, n_particles);
}

} // namespace qoc1d::lattice
