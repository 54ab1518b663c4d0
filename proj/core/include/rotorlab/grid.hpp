#pragma once

#include <Eigen/Core>

#include "rotorlab/rng.hpp"

namespace rotorlab {

// Uniform partition of [0,1] into n_steps cells, s_i = i/n_steps.
class TimeGrid {
public:
    explicit TimeGrid(int n_steps);

    int n_steps() const noexcept { return n_steps_; }
    double dt() const noexcept { return dt_; }
    double time(int i) const;  // s_i, 0 <= i <= n_steps

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    int n_steps_;
    double dt_;
};

// d-dimensional path on a grid, stored by its increments (n_steps x d);
// the path itself is the cumulative sum with W(0) = 0.
class DiscretePath {
public:
    DiscretePath(TimeGrid grid, Eigen::MatrixXd increments);

    const TimeGrid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return static_cast<int>(increments_.cols()); }
    const Eigen::MatrixXd& increments() const noexcept { return increments_; }

    Eigen::RowVectorXd value(int i) const;  // W(s_i)
    Eigen::MatrixXd values() const;         // (n_steps + 1) x d, row i = W(s_i)

private:
    TimeGrid grid_;
    Eigen::MatrixXd increments_;
};

// Cameron-Martin element represented by its cell-constant density
// (n_steps x d): h(t) = integral of the density up to t. The H inner
// product is then an exact finite sum, sum_i hdot_i . kdot_i dt.
class CMVector {
public:
    CMVector(TimeGrid grid, Eigen::MatrixXd density);

    const TimeGrid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return static_cast<int>(density_.cols()); }
    const Eigen::MatrixXd& density() const noexcept { return density_; }

    double squared_norm() const;  // |h|_H^2
    double norm() const;

    CMVector& operator+=(const CMVector& other);
    CMVector& operator*=(double scale);
    friend CMVector operator+(CMVector lhs, const CMVector& rhs) { return lhs += rhs; }
    friend CMVector operator*(double scale, CMVector v) { return v *= scale; }

private:
    TimeGrid grid_;
    Eigen::MatrixXd density_;
};

// I.i.d. N(0, dt) increments per coordinate; deterministic given stream.
DiscretePath sample_brownian(const TimeGrid& grid, int dim, RngStream stream);

// (h, k)_H = sum_i hdot(s_i) . kdot(s_i) dt. Rejects grid/dim mismatch.
double cm_inner(const CMVector& h, const CMVector& k);

// delta h = sum_i hdot(s_i) . dW_i, the elementary Wiener integral.
double wiener_integral(const CMVector& h, const DiscretePath& w);

// Image in H of the indicator of [a, b) in one coordinate: density 1 on
// the grid cells contained in [a, b), 0 elsewhere.
CMVector indicator_vector(const TimeGrid& grid, int dim, double a, double b, int coord);

// Normalized cell indicator e_{cell,coord} = indicator / sqrt(dt); the
// canonical orthonormal basis of the discrete Cameron-Martin space.
CMVector basis_vector(const TimeGrid& grid, int dim, int cell, int coord);

CMVector zero_vector(const TimeGrid& grid, int dim);
CMVector constant_density(const TimeGrid& grid, const Eigen::RowVectorXd& value);

// Cameron-Martin shift on increments: dW_i += eps * kdot(s_i) * dt. This
// makes the divergence and the directional derivative exactly adjoint on
// the discrete Gaussian space.
DiscretePath shift_path(const DiscretePath& w, const CMVector& k, double eps);

// Flat coefficient representations (index = cell * dim + coord). In these
// coordinates the H inner product and the Wiener integral are both plain
// dot products, and isometries of H are orthogonal matrices.
Eigen::VectorXd cm_coeffs(const CMVector& h);                               // vec(density) * sqrt(dt)
CMVector cm_from_coeffs(const TimeGrid& grid, int dim, const Eigen::VectorXd& v);
Eigen::VectorXd path_coeffs(const DiscretePath& w);                         // vec(increments) / sqrt(dt)
DiscretePath path_from_coeffs(const TimeGrid& grid, int dim, const Eigen::VectorXd& x);

}  // namespace rotorlab
