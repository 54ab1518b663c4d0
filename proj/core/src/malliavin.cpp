#include "rotorlab/malliavin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace rotorlab {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

double checked(double value, const char* where) {
    if (!std::isfinite(value))
        throw std::runtime_error(std::string(where) + ": non-finite evaluation");
    return value;
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(std::vector<CMVector> vectors, double tol)
    : vectors_(std::move(vectors)) {
    require(!vectors_.empty(), "OrthonormalBasis: empty");
    const std::size_t n = vectors_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double expected = (i == j) ? 1.0 : 0.0;
            const double got = cm_inner(vectors_[i], vectors_[j]);
            if (std::abs(got - expected) > tol)
                throw std::invalid_argument("OrthonormalBasis: vectors " + std::to_string(i) +
                                            "," + std::to_string(j) + " fail orthonormality by " +
                                            std::to_string(std::abs(got - expected)));
        }
    }
}

OrthonormalBasis OrthonormalBasis::full_indicator(const TimeGrid& grid, int dim) {
    std::vector<CMVector> vecs;
    vecs.reserve(static_cast<std::size_t>(grid.n_steps()) * dim);
    for (int cell = 0; cell < grid.n_steps(); ++cell)
        for (int c = 0; c < dim; ++c) vecs.push_back(basis_vector(grid, dim, cell, c));
    return OrthonormalBasis(std::move(vecs));
}

OrthonormalBasis OrthonormalBasis::from_matrix(const TimeGrid& grid, int dim,
                                               const Eigen::MatrixXd& q) {
    require(q.rows() == static_cast<Eigen::Index>(grid.n_steps()) * dim,
            "OrthonormalBasis::from_matrix: row count mismatch");
    std::vector<CMVector> vecs;
    vecs.reserve(q.cols());
    for (Eigen::Index j = 0; j < q.cols(); ++j) vecs.push_back(cm_from_coeffs(grid, dim, q.col(j)));
    return OrthonormalBasis(std::move(vecs));
}

double gradient_direction(const PathFunctional& f, const DiscretePath& w, const CMVector& k,
                          const FDConfig& cfg) {
    require(cfg.step > 0.0, "gradient_direction: FD step must be positive");
    const double up = checked(f(shift_path(w, k, cfg.step)), "gradient_direction");
    const double down = checked(f(shift_path(w, k, -cfg.step)), "gradient_direction");
    return (up - down) / (2.0 * cfg.step);
}

double ogawa_integral(const HValuedMap& u, const DiscretePath& w, const OrthonormalBasis& basis) {
    const CMVector uw = u.map(w);
    double sum = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        sum += cm_inner(uw, basis[i]) * wiener_integral(basis[i], w);
    return checked(sum, "ogawa_integral");
}

double phi_trace(const HValuedMap& u, const DiscretePath& w, const OrthonormalBasis& basis,
                 const FDConfig& cfg) {
    require(cfg.step > 0.0, "phi_trace: FD step must be positive");
    double sum = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const CMVector& phi = basis[i];
        const double up = cm_inner(u.map(shift_path(w, phi, cfg.step)), phi);
        const double down = cm_inner(u.map(shift_path(w, phi, -cfg.step)), phi);
        sum += (up - down) / (2.0 * cfg.step);
    }
    return checked(sum, "phi_trace");
}

double skorohod(const HValuedMap& u, const DiscretePath& w, const OrthonormalBasis& basis,
                const FDConfig& cfg) {
    return ogawa_integral(u, w, basis) - phi_trace(u, w, basis, cfg);
}

DiscretePath transform(const Rotor& rotor, const DiscretePath& w) {
    if (rotor.is_identity()) return w;

    if (rotor.is_sign()) {
        const Eigen::VectorXd& signs = rotor.signs();
        require(signs.size() == w.grid().n_steps(), "transform: sign rotor grid mismatch");
        Eigen::MatrixXd inc = w.increments();
        for (int i = 0; i < inc.rows(); ++i) inc.row(i) *= signs(i);
        return DiscretePath(w.grid(), std::move(inc));
    }

    if (rotor.is_adapted_matrix()) {
        // dY_i = sigma(s_i, w)^T dW_i: the adjoint acts on increments so
        // that delta h (Tw) = delta(Rh)(w) is an exact identity.
        const CMVector image =
            rotor.apply_adjoint(w, CMVector(w.grid(), w.increments() / w.grid().dt()));
        return DiscretePath(w.grid(), image.density() * w.grid().dt());
    }

    // Spectral: adjoint block action on path coefficients.
    const Eigen::VectorXd x = path_coeffs(w);
    const CMVector as_cm = cm_from_coeffs(w.grid(), w.dim(), x);
    const Eigen::VectorXd y = cm_coeffs(rotor.apply_adjoint(w, as_cm));
    return path_from_coeffs(w.grid(), w.dim(), y);
}

DiscretePath transform_via_basis(const Rotor& rotor, const DiscretePath& w) {
    const TimeGrid& grid = w.grid();
    const int d = w.dim();
    const double root_dt = std::sqrt(grid.dt());
    Eigen::MatrixXd inc(grid.n_steps(), d);
    for (int cell = 0; cell < grid.n_steps(); ++cell)
        for (int c = 0; c < d; ++c)
            inc(cell, c) =
                wiener_integral(rotor.apply(w, basis_vector(grid, d, cell, c)), w) * root_dt;
    return DiscretePath(grid, std::move(inc));
}

std::vector<DiscretePath> iterate_T(const RotorFamily& family, const DiscretePath& w0, int n) {
    require(n >= 0, "iterate_T: n must be >= 0");
    std::vector<DiscretePath> orbit;
    orbit.reserve(n);
    const DiscretePath* current = &w0;
    for (int level = 1; level <= n; ++level) {
        orbit.push_back(transform(family.at_level(level), *current));
        current = &orbit.back();
    }
    return orbit;
}

std::vector<CMVector> iterate_Q(const RotorFamily& family, const DiscretePath& w0, int n,
                                const CMVector& h) {
    require(n >= 0, "iterate_Q: n must be >= 0");
    std::vector<Rotor> rotors;
    rotors.reserve(n);
    for (int level = 1; level <= n; ++level) rotors.push_back(family.at_level(level));

    // Orbit points w_0 .. w_{n-1}; the level-j rotor is evaluated at w_{j-1}.
    std::vector<DiscretePath> orbit;
    orbit.reserve(n);
    {
        const DiscretePath* current = &w0;
        for (int j = 0; j + 1 < n; ++j) {
            orbit.push_back(transform(rotors[j], *current));
            current = &orbit.back();
        }
    }
    const auto orbit_point = [&](int j) -> const DiscretePath& {
        return j == 0 ? w0 : orbit[j - 1];
    };

    std::vector<CMVector> out;
    out.reserve(n);
    for (int j = 1; j <= n; ++j) {
        CMVector q = rotors[j - 1].apply(orbit_point(j - 1), h);
        for (int l = j - 1; l >= 1; --l) q = rotors[l - 1].apply(orbit_point(l - 1), q);
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace rotorlab
