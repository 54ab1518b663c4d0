#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "rotorlab/grid.hpp"

namespace rotorlab {

// Finite resolution of identity on the discrete Cameron-Martin space:
// mutually orthogonal blocks of dimension 1 or 2 whose bases together
// span the whole space, each block carrying an angle theta in [0, 2pi).
// Angles are nondecreasing in block order. Complex spectral phases are
// realized on 2-dimensional blocks as planar rotations; 1-dimensional
// blocks admit only the real phases +-1 (angles 0 and pi).
class SpectralResolution {
public:
    struct Block {
        double theta;
        int dim;     // 1 or 2
        int offset;  // first basis column of the block
    };

    // `basis` columns are the block vectors in flat coefficient space,
    // grouped contiguously per block. Must be orthonormal and complete.
    SpectralResolution(TimeGrid grid, int dim, Eigen::MatrixXd basis, std::vector<Block> blocks);

    // Blocks of consecutive normalized cell indicators, two per block
    // (plus one final 1-dim block when the total dimension is odd).
    // Thetas default to an even spread theta_j = 2pi (j + 1/2) / m.
    static SpectralResolution paired_indicator(const TimeGrid& grid, int dim);
    static SpectralResolution paired_indicator(const TimeGrid& grid, int dim,
                                               std::vector<double> thetas);

    const TimeGrid& grid() const noexcept { return grid_; }
    int path_dim() const noexcept { return dim_; }
    int space_dim() const noexcept { return static_cast<int>(basis_.rows()); }
    int n_blocks() const noexcept { return static_cast<int>(blocks_.size()); }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const Eigen::MatrixXd& basis() const noexcept { return basis_; }
    // Identity basis: block vectors are the canonical cell indicators, so
    // rotor actions reduce to O(N) coordinate-pair rotations.
    bool canonical() const noexcept { return canonical_; }

private:
    TimeGrid grid_;
    int dim_;
    Eigen::MatrixXd basis_;
    std::vector<Block> blocks_;
    bool canonical_;
};

struct SpectralMass {
    double theta;
    double mass;  // |projection of h on the block|_H^2
};

// Per-block spectral masses of h; they sum to |h|^2. Rejects h = 0.
std::vector<SpectralMass> spectral_measure(const SpectralResolution& res, const CMVector& h);

// Probability law for the random phase attached to a spectral point.
class PhaseLaw {
public:
    enum class Kind { constant, uniform, two_point, custom_table };

    static PhaseLaw constant(double eta0);
    static PhaseLaw uniform();                                   // uniform on [0, 2pi)
    static PhaseLaw two_point(double a, double b, double p_a);   // P(a) = p_a, P(b) = 1 - p_a
    static PhaseLaw custom_table(std::vector<std::pair<double, double>> atoms);  // (angle, prob)

    Kind kind() const noexcept { return kind_; }
    double sample(Rng& rng) const;
    std::complex<double> characteristic() const;  // E exp(i psi), closed form

    const std::vector<std::pair<double, double>>& atoms() const noexcept { return atoms_; }

private:
    PhaseLaw(Kind kind, std::vector<std::pair<double, double>> atoms);
    Kind kind_;
    std::vector<std::pair<double, double>> atoms_;  // unused for uniform
};

// Almost-sure isometry of the discrete Cameron-Martin space. Four
// families: the identity, spectral rotors (a fixed angle per block),
// adapted matrix rotors h -> sigma(s, w) hdot(s), and sign rotors driven
// by an auxiliary scalar path. Randomness (sampled phases, auxiliary
// paths) is resolved before an instance exists, so values are immutable
// and safe to share across threads.
class Rotor {
public:
    // sigma(step, w) must be a d x d orthogonal matrix reading only
    // increments of w with index < step (checked to 1e-8 per call).
    using OrthogonalMap = std::function<Eigen::MatrixXd(int step, const DiscretePath& w)>;

    static Rotor identity();
    static Rotor spectral(SpectralResolution res, std::vector<double> block_angles);
    static Rotor adapted_matrix(OrthogonalMap sigma);
    static Rotor sign(DiscretePath aux);

    // R(w) h. Isometric to 1e-10, linear in h.
    CMVector apply(const DiscretePath& w, const CMVector& h) const;
    // R(w)^* h, the adjoint (= inverse) action.
    CMVector apply_adjoint(const DiscretePath& w, const CMVector& h) const;

    bool is_identity() const noexcept;
    bool is_spectral() const noexcept;
    bool is_adapted_matrix() const noexcept;
    bool is_sign() const noexcept;
    // True when apply() never reads the path argument (all families
    // except adapted_matrix); such rotors may be evaluated on a zero path.
    bool path_independent() const noexcept { return !is_adapted_matrix(); }

    const SpectralResolution& resolution() const;        // spectral only
    const std::vector<double>& block_angles() const;     // spectral only
    const Eigen::VectorXd& signs() const;                // sign only

    // Matrix of the rotor in the canonical normalized-indicator basis.
    Eigen::MatrixXd matrix(const DiscretePath& w) const;

private:
    struct Identity {};
    struct Spectral {
        std::shared_ptr<const SpectralResolution> res;
        std::vector<double> angles;  // one per block
    };
    struct Adapted {
        OrthogonalMap sigma;
    };
    struct Sign {
        std::shared_ptr<const DiscretePath> aux;
        Eigen::VectorXd signs;  // sign of aux at left endpoints, sign(0) := +1
    };
    using Impl = std::variant<Identity, Spectral, Adapted, Sign>;

    explicit Rotor(Impl impl) : impl_(std::move(impl)) {}
    CMVector apply_impl(const DiscretePath& w, const CMVector& h, bool adjoint) const;

    Impl impl_;
};

// Spec-level constructor names.
Rotor make_sign_rotor(const DiscretePath& aux);

// One sampled angle per block, i.i.d. across blocks; deterministic given
// the stream. A continuous angle landing on a 1-dim block is an error.
Rotor resolve_iid_phases(const SpectralResolution& res, const PhaseLaw& law, RngStream stream);

// Level-indexed supply of rotors for iterated transformations: level j
// >= 1 yields the rotor used at the j-th composition step. Families with
// auxiliary randomness draw fresh, level-keyed randomness per level.
class RotorFamily {
public:
    static RotorFamily constant(Rotor rotor);
    static RotorFamily iid_phase(SpectralResolution res, PhaseLaw law, RngStream stream);
    static RotorFamily sign(const TimeGrid& grid, RngStream stream);

    Rotor at_level(int level) const;  // level >= 1

private:
    explicit RotorFamily(std::function<Rotor(int)> make) : make_(std::move(make)) {}
    std::function<Rotor(int)> make_;
};

// Supplies the rotor family for Monte Carlo replicate `path_index`;
// deterministic rotors ignore the index.
using RotorFamilyFactory = std::function<RotorFamily(std::uint64_t path_index)>;

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
// R-diagonal sign fix); used to build mixed orthonormal bases.
Eigen::MatrixXd random_orthogonal(int n, RngStream stream);

}  // namespace rotorlab
