#pragma once

#include <vector>

#include "rotorlab/grid.hpp"
#include "rotorlab/rotor.hpp"

namespace rotorlab {

// Probabilists' Hermite polynomial He_n(x).
double hermite(int n, double x);

// rho(delta k) = exp(delta k - |k|^2 / 2); mean one under Wiener measure.
// Exponents beyond +-700 are clamped and flagged instead of overflowing.
struct WickExp {
    double value;
    bool saturated;
};
WickExp wick_exponential(const CMVector& k, const DiscretePath& w);

// Order-2 chaos kernel over the flat canonical basis (index =
// cell * dim + coord): symmetric matrix with exactly zero diagonal.
class SymmetricKernel2 {
public:
    SymmetricKernel2(TimeGrid grid, int dim, Eigen::MatrixXd k);

    // Off-diagonal part of the symmetrized tensor (h x k + k x h) / 2;
    // the dropped diagonal is zero whenever h and k have disjoint support.
    static SymmetricKernel2 symmetrized_product(const CMVector& h, const CMVector& k);

    const TimeGrid& grid() const noexcept { return grid_; }
    int path_dim() const noexcept { return dim_; }
    const Eigen::MatrixXd& matrix() const noexcept { return k_; }
    double frobenius_norm() const { return k_.norm(); }

private:
    TimeGrid grid_;
    int dim_;
    Eigen::MatrixXd k_;
};

// Off-diagonal double Ito sum sum_{i != j} K(i,j) x_i x_j over normalized
// increments; centered, with E[I_2(K)^2] = 2 ||K||_F^2.
double multiple_integral_2(const SymmetricKernel2& kernel, const DiscretePath& w);

// Kernel action of R tensor R: (R^2 K) = M K M^T with M the rotor matrix.
// Throws if the rotation leaves the zero-diagonal kernel class (diagonal
// of the result above 1e-10 * (||K|| + 1)).
SymmetricKernel2 rotate_kernel_2(const SymmetricKernel2& kernel, const Rotor& rotor,
                                 const DiscretePath& w);

// Decidable surrogate of the spectral ergodicity conditions on a finite
// resolution: condition 1 ("no atom") as the largest per-theta mass of
// the trace measure, condition 2 as |E exp(i psi)| < 1 per block (the
// eta shift cancels in the modulus; for atomic laws an explicit sweep
// over eta_grid_size points cross-checks the closed form).
struct ErgodicityVerdict {
    enum class Verdict { ergodic, non_ergodic, inconclusive };

    double condition1_max_atom = 0.0;
    double condition2_worst_modulus = 0.0;
    std::vector<double> block_moduli;
    double atom_threshold = 0.0;
    Verdict verdict = Verdict::inconclusive;
};
ErgodicityVerdict spectral_ergodicity_check(const SpectralResolution& res, const PhaseLaw& law,
                                            int eta_grid_size = 64, double atom_threshold = 0.05);

// Largest single-block mass of h's spectral measure relative to |h|^2.
struct AtomReport {
    bool has_atom;
    double largest_mass;  // relative
};
AtomReport atom_check(const SpectralResolution& res, const CMVector& h,
                      double atom_threshold = 0.05);

}  // namespace rotorlab
