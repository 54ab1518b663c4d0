#include "rotorlab/chaos.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace rotorlab {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double hermite(int n, double x) {
    require(n >= 0, "hermite: order must be >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = x * cur - static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

WickExp wick_exponential(const CMVector& k, const DiscretePath& w) {
    const double exponent = wiener_integral(k, w) - 0.5 * k.squared_norm();
    if (exponent > 700.0) return {std::exp(700.0), true};
    if (exponent < -700.0) return {std::exp(-700.0), true};
    return {std::exp(exponent), false};
}

SymmetricKernel2::SymmetricKernel2(TimeGrid grid, int dim, Eigen::MatrixXd k)
    : grid_(grid), dim_(dim), k_(std::move(k)) {
    const Eigen::Index n = static_cast<Eigen::Index>(grid_.n_steps()) * dim_;
    require(k_.rows() == n && k_.cols() == n, "SymmetricKernel2: matrix must be N x N");
    require(k_.allFinite(), "SymmetricKernel2: non-finite entries");
    const double asym = (k_ - k_.transpose()).cwiseAbs().maxCoeff();
    require(asym < 1e-12, "SymmetricKernel2: matrix not symmetric (defect " +
                              std::to_string(asym) + ")");
    k_ = 0.5 * (k_ + k_.transpose().eval());
    const double diag = k_.diagonal().cwiseAbs().maxCoeff();
    require(diag == 0.0, "SymmetricKernel2: nonzero diagonal (max " + std::to_string(diag) + ")");
}

SymmetricKernel2 SymmetricKernel2::symmetrized_product(const CMVector& h, const CMVector& k) {
    require(h.grid() == k.grid() && h.dim() == k.dim(),
            "SymmetricKernel2::symmetrized_product: shape mismatch");
    const Eigen::VectorXd v = cm_coeffs(h), u = cm_coeffs(k);
    Eigen::MatrixXd m = 0.5 * (v * u.transpose() + u * v.transpose());
    m.diagonal().setZero();
    return SymmetricKernel2(h.grid(), h.dim(), std::move(m));
}

double multiple_integral_2(const SymmetricKernel2& kernel, const DiscretePath& w) {
    require(w.grid() == kernel.grid() && w.dim() == kernel.path_dim(),
            "multiple_integral_2: shape mismatch");
    const Eigen::VectorXd x = path_coeffs(w);
    return x.dot(kernel.matrix() * x);  // diagonal is exactly zero
}

SymmetricKernel2 rotate_kernel_2(const SymmetricKernel2& kernel, const Rotor& rotor,
                                 const DiscretePath& w) {
    const Eigen::MatrixXd m = rotor.matrix(w);
    Eigen::MatrixXd rotated = m * kernel.matrix() * m.transpose();
    rotated = 0.5 * (rotated + rotated.transpose().eval());
    const double diag = rotated.diagonal().cwiseAbs().maxCoeff();
    const double budget = 1e-10 * (kernel.frobenius_norm() + 1.0);
    if (diag > budget)
        throw std::invalid_argument(
            "rotate_kernel_2: rotation leaves the zero-diagonal kernel class (diag " +
            std::to_string(diag) + ")");
    rotated.diagonal().setZero();
    return SymmetricKernel2(kernel.grid(), kernel.path_dim(), std::move(rotated));
}

ErgodicityVerdict spectral_ergodicity_check(const SpectralResolution& res, const PhaseLaw& law,
                                            int eta_grid_size, double atom_threshold) {
    require(eta_grid_size >= 1, "spectral_ergodicity_check: eta_grid_size must be >= 1");
    require(atom_threshold > 0.0, "spectral_ergodicity_check: atom_threshold must be positive");

    ErgodicityVerdict out;
    out.atom_threshold = atom_threshold;

    // Condition 1: trace-measure mass per spectral point. Blocks sharing
    // a theta form one atom, so a constant-theta resolution reports 1.
    std::map<double, double> mass_at_theta;
    const double total_dim = res.space_dim();
    for (const auto& b : res.blocks()) mass_at_theta[b.theta] += b.dim / total_dim;
    for (const auto& [theta, mass] : mass_at_theta)
        out.condition1_max_atom = std::max(out.condition1_max_atom, mass);

    // Condition 2: |E exp(i(psi - eta))| = |E exp(i psi)|, eta-free.
    const double modulus = std::abs(law.characteristic());
    out.block_moduli.assign(res.n_blocks(), modulus);
    out.condition2_worst_modulus = modulus;

    if (law.kind() == PhaseLaw::Kind::two_point || law.kind() == PhaseLaw::Kind::custom_table) {
        // Direct sweep over eta as a cross-check of the closed form.
        for (int g = 0; g < eta_grid_size; ++g) {
            const double eta = 2.0 * std::numbers::pi * g / eta_grid_size;
            std::complex<double> sum{0.0, 0.0};
            for (const auto& [angle, prob] : law.atoms()) sum += prob * std::polar(1.0, angle - eta);
            if (std::abs(std::abs(sum) - modulus) > 1e-9)
                throw std::logic_error("spectral_ergodicity_check: eta sweep disagrees with the "
                                       "closed-form modulus");
        }
    }

    const bool atom_ok = out.condition1_max_atom <= atom_threshold;
    if (modulus >= 1.0 - 1e-9 || !atom_ok)
        out.verdict = ErgodicityVerdict::Verdict::non_ergodic;
    else if (modulus <= 1.0 - 1e-6)
        out.verdict = ErgodicityVerdict::Verdict::ergodic;
    else
        out.verdict = ErgodicityVerdict::Verdict::inconclusive;
    return out;
}

AtomReport atom_check(const SpectralResolution& res, const CMVector& h, double atom_threshold) {
    const double total = h.squared_norm();
    require(total > 0.0, "atom_check: h must be nonzero");
    double largest = 0.0;
    for (const auto& [theta, mass] : spectral_measure(res, h)) {
        (void)theta;
        largest = std::max(largest, mass / total);
    }
    return {largest > atom_threshold, largest};
}

}  // namespace rotorlab
