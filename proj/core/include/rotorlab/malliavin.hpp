#pragma once

#include <functional>
#include <vector>

#include "rotorlab/grid.hpp"
#include "rotorlab/rotor.hpp"

namespace rotorlab {

// Central finite differences along Cameron-Martin directions.
struct FDConfig {
    double step = 1e-5;
};

using PathFunctional = std::function<double(const DiscretePath&)>;

// H-valued map u : W -> H. `adapted` declares that cell i of u(w) reads
// only increments with index < i (left-endpoint evaluation).
struct HValuedMap {
    std::function<CMVector(const DiscretePath&)> map;
    bool fd_smooth = true;
    bool adapted = false;
};

// Orthonormal family in the discrete Cameron-Martin space, validated once
// at construction (pairwise inner products within tol of delta_ij).
class OrthonormalBasis {
public:
    explicit OrthonormalBasis(std::vector<CMVector> vectors, double tol = 1e-10);

    // The full canonical basis of n_steps * dim normalized cell indicators.
    static OrthonormalBasis full_indicator(const TimeGrid& grid, int dim);
    // Columns of an orthogonal matrix, read as coefficient vectors.
    static OrthonormalBasis from_matrix(const TimeGrid& grid, int dim, const Eigen::MatrixXd& q);

    std::size_t size() const noexcept { return vectors_.size(); }
    const CMVector& operator[](std::size_t i) const { return vectors_[i]; }

private:
    std::vector<CMVector> vectors_;
};

// Directional derivative d/deps F(w + eps k) at eps = 0, central scheme.
double gradient_direction(const PathFunctional& f, const DiscretePath& w, const CMVector& k,
                          const FDConfig& cfg = {});

// Basis-expanded symmetric integral sum_i (u(w), phi_i) delta phi_i(w).
double ogawa_integral(const HValuedMap& u, const DiscretePath& w, const OrthonormalBasis& basis);

// trace^phi of the gradient of u: sum_i d/deps (u(w + eps phi_i), phi_i).
// Vanishes identically for adapted u under left-endpoint evaluation.
double phi_trace(const HValuedMap& u, const DiscretePath& w, const OrthonormalBasis& basis,
                 const FDConfig& cfg = {});

// Divergence: ogawa_integral - phi_trace. Coincides with the Ito sum for
// adapted integrands and with Gaussian integration by parts in general.
double skorohod(const HValuedMap& u, const DiscretePath& w, const OrthonormalBasis& basis,
                const FDConfig& cfg = {});

// The rotation generated by R: increments of Tw are the expansion
// coefficients dY_{i,c} = delta(R e_{i,c})(w) sqrt(dt), so that
// delta h (Tw) = delta(R(w) h)(w) holds exactly at the discrete level.
// Per-family fast paths: sign rotors give dY_i = sign(b_i) dW_i, adapted
// matrix rotors dY_i = sigma(s_i, w)^T dW_i, spectral rotors the adjoint
// block action on path coefficients.
DiscretePath transform(const Rotor& rotor, const DiscretePath& w);

// Literal basis-expansion route (one Wiener integral per basis vector);
// reference implementation for validating the fast paths.
DiscretePath transform_via_basis(const Rotor& rotor, const DiscretePath& w);

// Orbit w_1 = T w, ..., w_n = T^n w, using the level-j rotor (evaluated
// at w_{j-1}) for the j-th step.
std::vector<DiscretePath> iterate_T(const RotorFamily& family, const DiscretePath& w0, int n);

// Composed actions Q_j h = R_1(w_0) R_2(w_1) ... R_j(w_{j-1}) h for
// j = 1..n; satisfies delta h (T^j w) = delta(Q_j h)(w) pathwise.
std::vector<CMVector> iterate_Q(const RotorFamily& family, const DiscretePath& w0, int n,
                                const CMVector& h);

}  // namespace rotorlab
